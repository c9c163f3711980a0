#include "gti/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace gti {

namespace {

constexpr double kLn2 = 0.6931471805599453;

void check_py_args(std::int64_t n, std::int64_t d, std::int64_t r,
                   std::int64_t g) {
  if (n < 1 || d < 0 || r < 0) throw std::invalid_argument("bad n, d or r");
  if (d + r > n) throw std::invalid_argument("d + r must not exceed n");
  if (g < 1 || g > n) throw std::out_of_range("pool size g out of [1, n]");
}

// Log of the falling-product prod_{i=0}^{m-1} (1 - k/(n-i)) via log-gamma;
// used only to warm up long incremental scans.
double log_falling_product(std::int64_t n, std::int64_t k, std::int64_t m) {
  return std::lgamma(static_cast<double>(n - k + 1)) -
         std::lgamma(static_cast<double>(n - k - m + 1)) +
         std::lgamma(static_cast<double>(n - m + 1)) -
         std::lgamma(static_cast<double>(n + 1));
}

struct ScanState {
  std::int64_t n, d, r;
  std::int64_t g = 0;
  double log_a = 0;  // log prod (1 - r/(n-i))
  double log_b = 0;  // log prod (1 - (r+d)/(n-i))

  // Advance to pool size g+1 and return p_y(g+1).
  double step() {
    const std::int64_t i = g;
    ++g;
    if (g <= n - r)
      log_a += std::log1p(-static_cast<double>(r) /
                          static_cast<double>(n - i));
    if (g <= n - d - r)
      log_b += std::log1p(-static_cast<double>(r + d) /
                          static_cast<double>(n - i));
    return value();
  }

  double value() const {
    if (d == 0 || g > n - r) return 0.0;
    if (g > n - d - r) return std::exp(log_a);
    return std::exp(log_a) * (-std::expm1(log_b - log_a));
  }

  // Jump directly to pool size g_target (forgetting intermediate values).
  void warm_to(std::int64_t g_target) {
    g = g_target;
    if (g <= n - r) log_a = log_falling_product(n, r, g);
    if (g <= n - d - r) log_b = log_falling_product(n, r + d, g);
  }
};

}  // namespace

double log2_binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n)
    throw std::invalid_argument("binomial arguments out of range");
  return (std::lgamma(static_cast<double>(n + 1)) -
          std::lgamma(static_cast<double>(k + 1)) -
          std::lgamma(static_cast<double>(n - k + 1))) /
         kLn2;
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("entropy argument must be in [0,1]");
  if (p == 0.0 || p == 1.0) return 0.0;
  return -(p * std::log2(p) + (1.0 - p) * std::log2(1.0 - p));
}

double p_y(std::int64_t n, std::int64_t d, std::int64_t r, std::int64_t g) {
  check_py_args(n, d, r, g);
  if (d == 0 || g > n - r) return 0.0;
  double log_a = 0.0;
  for (std::int64_t i = 0; i < g; ++i)
    log_a += std::log1p(-static_cast<double>(r) / static_cast<double>(n - i));
  if (g > n - d - r) return std::exp(log_a);
  double log_b = 0.0;
  for (std::int64_t i = 0; i < g; ++i)
    log_b +=
        std::log1p(-static_cast<double>(r + d) / static_cast<double>(n - i));
  // A - B evaluated as A * (1 - B/A); exact zero when the logs coincide.
  return std::exp(log_a) * (-std::expm1(log_b - log_a));
}

std::vector<double> p_y_scan(std::int64_t n, std::int64_t d, std::int64_t r,
                             std::int64_t g_max) {
  check_py_args(n, d, r, std::max<std::int64_t>(g_max, 1));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(g_max));
  ScanState s{n, d, r};
  for (std::int64_t g = 1; g <= g_max; ++g) out.push_back(s.step());
  return out;
}

std::pair<double, double> switch_points(std::int64_t n, std::int64_t d,
                                        std::int64_t r) {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  if (r < 1) throw std::invalid_argument("r must be >= 1");
  if (d + r >= n) throw std::invalid_argument("d + r must be < n");
  const double dd = static_cast<double>(d);
  const double log_ratio =
      std::log1p(dd / static_cast<double>(r));  // ln(1 + d/r)
  const double g0 =
      (dd + static_cast<double>(n - d - r + 2) * log_ratio) /
      (dd + log_ratio);
  const double g1 =
      log_ratio / std::log1p(dd / static_cast<double>(n - d - r));
  return {g0, g1};
}

PoolSizeAnalysis g_opt_search(std::int64_t n, std::int64_t d, std::int64_t r) {
  auto [g0, g1] = switch_points(n, d, r);
  PoolSizeAnalysis out;
  out.g0 = g0;
  out.g1 = g1;
  out.asymptote = static_cast<double>(d) /
                  (static_cast<double>(r) * std::exp(1.0));

  const std::int64_t branch1_hi = n - d - r;  // >= 1 by precondition
  std::int64_t lo = 1, hi = branch1_hi;
  if (std::isfinite(g0) && std::isfinite(g1)) {
    const double lo_f = std::floor(std::min(g0, g1)) - 2.0;
    const double hi_f = std::ceil(std::max(g0, g1)) + 2.0;
    lo = std::clamp<std::int64_t>(
        lo_f <= 1.0 ? 1 : static_cast<std::int64_t>(lo_f), 1, branch1_hi);
    hi = std::clamp<std::int64_t>(
        hi_f >= static_cast<double>(branch1_hi)
            ? branch1_hi
            : static_cast<std::int64_t>(hi_f),
        1, branch1_hi);
    if (hi < lo) {
      lo = 1;
      hi = branch1_hi;
    }
  }

  out.g_opt = 0;
  out.p_y_max = -1.0;
  out.max_entropy = 0.0;
  auto consider = [&](std::int64_t g, double p) {
    if (p > out.p_y_max) {
      out.p_y_max = p;
      out.g_opt = g;
    }
    out.max_entropy = std::max(out.max_entropy, binary_entropy(p));
  };

  ScanState s{n, d, r};
  if (lo > 1) s.warm_to(lo - 1);
  for (std::int64_t g = lo; g <= hi; ++g) consider(g, s.step());
  // Above branch1_hi the single-product branch is nonincreasing in g, so
  // its left end is the only extra candidate.
  if (branch1_hi + 1 <= n - r) {
    const std::int64_t gb = branch1_hi + 1;
    consider(gb, std::exp(log_falling_product(n, r, gb)));
  }
  return out;
}

namespace {

LowerBoundReport fano_from_numerator(std::int64_t n, std::int64_t d,
                                     std::int64_t r, double pe,
                                     double count_bits) {
  if (!(pe >= 0.0 && pe < 1.0))
    throw std::invalid_argument("error probability must be in [0,1)");
  LowerBoundReport rep;
  rep.pool = g_opt_search(n, d, r);
  rep.numerator_bits =
      std::max(0.0, count_bits * (1.0 - pe) - binary_entropy(pe));
  rep.max_entropy = rep.pool.max_entropy;
  rep.py_max_below_half = rep.pool.p_y_max <= 0.5;
  rep.tests_lb = rep.numerator_bits / rep.max_entropy;
  rep.dominating_branch = "fano";
  return rep;
}

}  // namespace

LowerBoundReport fano_lb_scp(std::int64_t n, std::int64_t d, std::int64_t r,
                             double pe) {
  return fano_from_numerator(n, d, r, pe,
                             log2_binomial(n, d) + log2_binomial(n - d, r));
}

LowerBoundReport fano_lb_dcp(std::int64_t n, std::int64_t d, std::int64_t r,
                             double pe) {
  return fano_from_numerator(n, d, r, pe, log2_binomial(n, d));
}

LowerBoundReport fano_lb_ub_scenario(std::int64_t n, std::int64_t R,
                                     std::int64_t D, double pe,
                                     Problem problem) {
  if (R < 1 || D < 1) throw std::invalid_argument("R and D must be >= 1");
  LowerBoundReport rep = problem == Problem::Scp ? fano_lb_scp(n, 1, R, pe)
                                                 : fano_lb_dcp(n, 1, R, pe);
  const double count_bits =
      problem == Problem::Scp
          ? log2_binomial(n, D) + log2_binomial(n - D, R)
          : log2_binomial(n, D);
  const double counting_lb =
      std::max(0.0, count_bits * (1.0 - pe) - binary_entropy(pe));
  if (counting_lb > rep.tests_lb) {
    rep.numerator_bits = counting_lb;
    rep.max_entropy = 1.0;
    rep.tests_lb = counting_lb;
    rep.dominating_branch = "counting";
  }
  return rep;
}

}  // namespace gti
