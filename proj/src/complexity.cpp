#include "gti/complexity.hpp"

#include <cmath>
#include <stdexcept>

#include "gti/design.hpp"

namespace gti {

namespace {

constexpr double kLn2 = 0.6931471805599453;
const double kOneMinusExpM2 = 1.0 - std::exp(-2.0);

// (ln x / ln n + delta) * ln 2, with ln x clamped at 0 (x >= 1 in every
// reachable call; the clamp keeps degenerate counts from going negative).
double event_factor(double x, std::int64_t n, double delta) {
  const double lx = std::log(std::max(x, 1.0));
  return (lx / std::log(static_cast<double>(n)) + delta) * kLn2;
}

std::int64_t tests_from_beta(double beta, std::int64_t n) {
  const double t = std::ceil(beta * std::log2(static_cast<double>(n)));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(t));
}

void finalize(BetaBreakdown& b) {
  b.beta = 0;
  for (double t : b.terms) b.beta = std::max(b.beta, t);
  b.tests = tests_from_beta(b.beta, b.n);
}

void check_common(std::int64_t n, std::int64_t d, std::int64_t r,
                  double delta) {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  if (r < 0) throw std::invalid_argument("r must be >= 0");
  if (d + r >= n) throw std::invalid_argument("d + r must be < n");
  if (!(delta > 0)) throw std::invalid_argument("delta must be > 0");
}

}  // namespace

BetaBreakdown beta_exact(std::int64_t n, std::int64_t d, std::int64_t r,
                         double delta, std::optional<double> p_override) {
  check_common(n, d, r, delta);
  const ExactParams params = exact_params(n, d, r, p_override);
  const double p = params.p;
  const double log_1mp = std::log1p(-p);
  const double pow_2rd = std::exp(2.0 * static_cast<double>(r + d) * log_1mp);
  const double pow_r = std::exp(static_cast<double>(r) * log_1mp);
  const double one_minus_pow_d = -std::expm1(static_cast<double>(d) * log_1mp);
  // The Chernoff-Hoeffding step behind terms 1-2 needs the threshold gap
  // (b-a)/2 to sit strictly inside (0,1); report violations instead of
  // extrapolating.
  const double gap = 0.5 * std::exp(static_cast<double>(r + d) * log_1mp);
  if (!(gap > 0.0 && gap < 1.0))
    throw std::domain_error("threshold gap outside (0,1); bound inapplicable");

  BetaBreakdown out;
  out.n = n;
  out.delta = delta;
  out.terms = {
      4.0 * event_factor(static_cast<double>(d), n, delta) /
          (p * pow_2rd * kOneMinusExpM2),
      4.0 * event_factor(static_cast<double>(n - d - r), n, delta) /
          (p * pow_2rd * kOneMinusExpM2),
      event_factor(static_cast<double>(n - d - r), n, delta) /
          (p * pow_r * one_minus_pow_d),
  };
  out.labels = {"defective_missed", "normal_as_defective",
                "normal_as_inhibitor"};
  if (r >= 1) {
    out.terms.push_back(event_factor(static_cast<double>(r), n, delta) / p);
    out.labels.push_back("inhibitor_absent");
  }
  finalize(out);
  return out;
}

BetaBreakdown beta_exact_asymptotic(std::int64_t n, std::int64_t d,
                                    std::int64_t r, double delta) {
  check_common(n, d, r, delta);
  const double rd = static_cast<double>(r + d);
  const double e1 = std::exp(1.0);
  const double exp_mr = std::exp(-static_cast<double>(r) / (2.0 * rd));
  const double one_minus_exp_md =
      -std::expm1(-static_cast<double>(d) / (2.0 * rd));

  BetaBreakdown out;
  out.n = n;
  out.delta = delta;
  out.terms = {
      8.0 * e1 * rd * event_factor(static_cast<double>(d), n, delta) /
          kOneMinusExpM2,
      8.0 * e1 * rd * event_factor(static_cast<double>(n - d - r), n, delta) /
          kOneMinusExpM2,
      2.0 * rd * event_factor(static_cast<double>(n - d - r), n, delta) /
          (exp_mr * one_minus_exp_md),
  };
  out.labels = {"defective_missed", "normal_as_defective",
                "normal_as_inhibitor"};
  if (r >= 1) {
    out.terms.push_back(2.0 * rd *
                        event_factor(static_cast<double>(r), n, delta));
    out.labels.push_back("inhibitor_absent");
  }
  finalize(out);
  return out;
}

std::pair<BetaBreakdown, BetaBreakdown> beta_ub(std::int64_t n, std::int64_t R,
                                                std::int64_t D, double delta) {
  if (R < 1 || D < 1) throw std::invalid_argument("R and D must be >= 1");
  if (!(delta > 0)) throw std::invalid_argument("delta must be > 0");
  if (R + D >= n) throw std::invalid_argument("R + D must be < n");
  const double rd = static_cast<double>(R + D);

  BetaBreakdown b1;
  b1.n = n;
  b1.delta = delta;
  b1.terms = {
      27.0 * rd * event_factor(static_cast<double>(D), n, delta) /
          kOneMinusExpM2,
      27.0 * rd * (1.0 + delta) * kLn2 / kOneMinusExpM2,
  };
  b1.labels = {"defective_missed", "normal_as_defective"};
  finalize(b1);

  BetaBreakdown b2;
  b2.n = n;
  b2.delta = delta;
  b2.terms = {
      27.0 / 4.0 * static_cast<double>(R) * static_cast<double>(R) *
          (1.0 + delta) * kLn2,
      1.5 * static_cast<double>(R) *
          event_factor(static_cast<double>(R), n, delta),
  };
  b2.labels = {"normal_as_inhibitor", "inhibitor_absent"};
  finalize(b2);
  return {b1, b2};
}

BetaBreakdown beta_dcp(std::int64_t n, std::int64_t d, std::int64_t r,
                       double delta, std::optional<double> p_override) {
  BetaBreakdown out = beta_exact(n, d, r, delta, p_override);
  out.terms.resize(2);
  out.labels.resize(2);
  finalize(out);
  return out;
}

BetaBreakdown beta_dcp_ub(std::int64_t n, std::int64_t R, std::int64_t D,
                          double delta) {
  return beta_ub(n, R, D, delta).first;
}

double thumb_rule_tests(double p, double a, double b) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("p must be in (0,1)");
  if (!(a >= 0.0 && a < b && b <= 1.0))
    throw std::invalid_argument("need 0 <= a < b <= 1");
  return 1.0 / (p * (b - a) * (b - a));
}

}  // namespace gti
