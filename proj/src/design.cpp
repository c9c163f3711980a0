#include "gti/design.hpp"

#include <cmath>
#include <stdexcept>

#include "gti/rng.hpp"

namespace gti {

PoolingDesign iid_design(std::int64_t tests, std::int64_t items, double p,
                         std::uint64_t seed) {
  if (!(p > 0.0 && p < 1.0))
    throw std::invalid_argument("participation probability must be in (0,1)");
  if (tests < 1 || items < 1)
    throw std::invalid_argument("design dimensions must be >= 1");
  PoolingDesign design(tests, items);
  const double inv_log_1mp = 1.0 / std::log1p(-p);
  for (std::int64_t i = 0; i < tests; ++i) {
    SplitMix64 rng(derive_seed(seed, static_cast<std::uint64_t>(i)));
    auto row = design.row(i);
    // Geometric gaps between ones reproduce i.i.d. Bernoulli(p) columns.
    std::int64_t col = -1;
    for (;;) {
      const double gap = std::log(rng.next_unit()) * inv_log_1mp;
      if (gap >= static_cast<double>(items - col)) break;
      col += 1 + static_cast<std::int64_t>(gap);
      if (col >= items) break;
      row[static_cast<std::size_t>(col >> 6)] |= 1ULL << (col & 63);
    }
  }
  return design;
}

ExactParams exact_params(std::int64_t n, std::int64_t d, std::int64_t r,
                         std::optional<double> p_override) {
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  if (r < 0) throw std::invalid_argument("r must be >= 0");
  if (d + r > n) throw std::invalid_argument("d + r must not exceed n");
  ExactParams out;
  out.p = p_override ? *p_override
                     : 1.0 / static_cast<double>(2 * (r + d) + 1);
  if (!(out.p > 0.0 && out.p < 1.0))
    throw std::invalid_argument("p override must be in (0,1)");
  const double log_1mp = std::log1p(-out.p);
  out.b = std::exp(static_cast<double>(r) * log_1mp);  // (1-p)^r
  out.q = -std::expm1(static_cast<double>(r) * log_1mp);
  out.a = out.b * (-std::expm1(static_cast<double>(d) * log_1mp));
  out.threshold_fraction = 0.5 * (out.a + out.b);
  if (r >= 1) {
    // (1-q-a) = b-a = (1-p)^(r+d), computed in one exp to avoid cancellation.
    const double b_minus_a =
        std::exp(static_cast<double>(r + d) * log_1mp);
    out.tau = b_minus_a / (2.0 * out.q);
  }
  return out;
}

UbParams ub_params(std::int64_t R, std::int64_t D) {
  if (R < 1 || D < 1) throw std::invalid_argument("R and D must be >= 1");
  UbParams out;
  out.p1 = 1.0 / (3.0 * static_cast<double>(R + D));
  out.p2 = 2.0 / (3.0 * static_cast<double>(R));
  out.qR = -std::expm1(static_cast<double>(R) * std::log1p(-out.p1));
  out.tau = (1.0 - static_cast<double>(R + D) * out.p1) / (2.0 * out.qR);
  out.stage1_threshold_fraction = 1.0 - out.qR * (1.0 + out.tau);
  return out;
}

}  // namespace gti
