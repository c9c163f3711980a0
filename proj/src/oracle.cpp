#include "gti/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "gti/rng.hpp"

namespace gti {

namespace {

// C(n, k) table in unsigned 64-bit; n <= 62 keeps every entry exact.
constexpr int kMaxExactN = 62;

std::uint64_t binomial_u64(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  static const auto table = [] {
    std::vector<std::vector<std::uint64_t>> t(kMaxExactN + 1);
    for (int i = 0; i <= kMaxExactN; ++i) {
      t[i].assign(static_cast<std::size_t>(i) + 1, 1);
      for (int j = 1; j < i; ++j) t[i][j] = t[i - 1][j - 1] + t[i - 1][j];
    }
    return t;
  }();
  return table[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

// Next k-combination of bits within an n-bit word (Gosper's hack).
std::uint64_t next_combination(std::uint64_t v) {
  const std::uint64_t t = v | (v - 1);
  return (t + 1) | (((~t & (t + 1)) - 1) >> (std::countr_zero(v) + 1));
}

std::vector<std::int64_t> bits_to_items(std::uint64_t bits) {
  std::vector<std::int64_t> out;
  while (bits) {
    out.push_back(std::countr_zero(bits));
    bits &= bits - 1;
  }
  return out;
}

}  // namespace

ConsistencySet consistent_assignments(const PoolingDesign& design,
                                      const OutcomeVector& outcomes,
                                      std::int64_t d, std::int64_t r,
                                      std::int64_t max_candidates) {
  const std::int64_t n = design.items();
  if (static_cast<std::int64_t>(outcomes.size()) != design.tests())
    throw std::invalid_argument("outcome length does not match design");
  if (d < 0 || r < 0 || d + r > n)
    throw std::invalid_argument("invalid d, r for this population size");
  if (n > kMaxExactN)
    throw std::runtime_error("instance too large for exhaustive enumeration");
  const double candidates = static_cast<double>(binomial_u64(n, d)) *
                            static_cast<double>(binomial_u64(n - d, r));
  if (candidates > static_cast<double>(max_candidates))
    throw std::runtime_error("candidate count exceeds enumeration guard");

  // Precompute row words: n <= 62 so each row fits one word.
  const std::int64_t tests = design.tests();
  std::vector<std::uint64_t> rows(static_cast<std::size_t>(tests));
  for (std::int64_t i = 0; i < tests; ++i) rows[i] = design.row(i)[0];

  ConsistencySet out;
  const std::uint64_t full = n == 64 ? ~0ULL : ((1ULL << n) - 1);
  std::uint64_t def = d == 0 ? 0 : (1ULL << d) - 1;
  for (std::uint64_t di = 0; di < binomial_u64(n, d); ++di) {
    // Enumerate inhibitor sets among the remaining items by expanding
    // r-combinations of the complement positions.
    const std::uint64_t rest = full & ~def;
    const auto rest_items = bits_to_items(rest);
    const std::int64_t m = static_cast<std::int64_t>(rest_items.size());
    std::uint64_t inh_compact = r == 0 ? 0 : (1ULL << r) - 1;
    for (std::uint64_t ri = 0; ri < binomial_u64(m, r); ++ri) {
      std::uint64_t inh = 0;
      std::uint64_t c = inh_compact;
      while (c) {
        inh |= 1ULL << rest_items[std::countr_zero(c)];
        c &= c - 1;
      }
      bool ok = true;
      for (std::int64_t i = 0; i < tests && ok; ++i) {
        const bool positive =
            (rows[i] & def) != 0 && (rows[i] & inh) == 0;
        ok = positive == (outcomes[static_cast<std::size_t>(i)] != 0);
      }
      if (ok)
        out.assignments.emplace_back(bits_to_items(def), bits_to_items(inh));
      if (r > 0 && ri + 1 < binomial_u64(m, r))
        inh_compact = next_combination(inh_compact);
    }
    if (d > 0 && di + 1 < binomial_u64(n, d)) def = next_combination(def);
  }
  out.identifiable = out.assignments.size() == 1;
  return out;
}

double empirical_p_y_exact(std::int64_t n, std::int64_t d, std::int64_t r,
                           std::int64_t g) {
  if (n < 1 || d < 0 || r < 0 || d + r > n)
    throw std::invalid_argument("invalid population parameters");
  if (g < 1 || g > n) throw std::out_of_range("pool size g out of [1, n]");
  if (n > kMaxExactN)
    throw std::runtime_error("instance too large for exact counting");

  const std::uint64_t total = binomial_u64(n, g);
  constexpr std::uint64_t kEnumerationLimit = 2'000'000;
  if (total <= kEnumerationLimit) {
    // Literal enumeration of every pool. Defectives occupy the d lowest
    // item indices and inhibitors the next r; by symmetry the probability
    // only depends on the counts.
    const std::uint64_t def = d == 0 ? 0 : (1ULL << d) - 1;
    const std::uint64_t inh = r == 0 ? 0 : ((1ULL << (d + r)) - 1) & ~def;
    std::uint64_t positive = 0;
    std::uint64_t pool = (1ULL << g) - 1;
    for (std::uint64_t idx = 0;; ++idx) {
      positive += (pool & def) != 0 && (pool & inh) == 0;
      if (idx + 1 == total) break;
      pool = next_combination(pool);
    }
    return static_cast<double>(positive) / static_cast<double>(total);
  }
  // Exact count: sum over how many defectives land in the pool, with no
  // inhibitors, times the ways to fill the rest from normal items.
  std::uint64_t count = 0;
  for (std::int64_t k = 1; k <= std::min(d, g); ++k)
    count += binomial_u64(d, k) * binomial_u64(n - d - r, g - k);
  return static_cast<double>(count) / static_cast<double>(total);
}

SampledProbability empirical_p_y_sampled(std::int64_t n, std::int64_t d,
                                         std::int64_t r, std::int64_t g,
                                         std::int64_t samples,
                                         std::uint64_t seed) {
  if (n < 1 || d < 0 || r < 0 || d + r > n)
    throw std::invalid_argument("invalid population parameters");
  if (g < 1 || g > n) throw std::out_of_range("pool size g out of [1, n]");
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  SplitMix64 rng(seed);
  // Floyd's subset sampling over items; defectives are 0..d-1, inhibitors
  // d..d+r-1 by symmetry.
  std::vector<std::uint8_t> in_pool(static_cast<std::size_t>(n), 0);
  std::vector<std::int64_t> chosen;
  std::int64_t positive = 0;
  for (std::int64_t s = 0; s < samples; ++s) {
    chosen.clear();
    for (std::int64_t i = n - g; i < n; ++i) {
      const auto t =
          static_cast<std::int64_t>(rng.next_below(static_cast<std::uint64_t>(i) + 1));
      if (in_pool[static_cast<std::size_t>(t)]) {
        in_pool[static_cast<std::size_t>(i)] = 1;
        chosen.push_back(i);
      } else {
        in_pool[static_cast<std::size_t>(t)] = 1;
        chosen.push_back(t);
      }
    }
    bool any_def = false, any_inh = false;
    for (std::int64_t item : chosen) {
      any_def |= item < d;
      any_inh |= item >= d && item < d + r;
    }
    positive += any_def && !any_inh;
    for (std::int64_t item : chosen)
      in_pool[static_cast<std::size_t>(item)] = 0;
  }
  SampledProbability out;
  out.samples = samples;
  out.estimate = static_cast<double>(positive) / static_cast<double>(samples);
  constexpr double kZ99TwoSided = 2.5758293035489004;
  out.half_width_99 =
      kZ99TwoSided * std::sqrt(out.estimate * (1.0 - out.estimate) /
                               static_cast<double>(samples));
  return out;
}

double empirical_event_tail(std::int64_t t, double p_event, double threshold) {
  if (t < 0 || t > 100'000)
    throw std::invalid_argument("t out of supported range");
  if (!(p_event >= 0.0 && p_event <= 1.0))
    throw std::invalid_argument("probability must be in [0,1]");
  if (threshold <= 0.0) return 1.0;
  if (threshold > static_cast<double>(t)) return 0.0;
  const auto k_min = static_cast<std::int64_t>(std::ceil(threshold));
  if (p_event == 0.0) return k_min <= 0 ? 1.0 : 0.0;
  if (p_event == 1.0) return 1.0;

  const double log_p = std::log(p_event);
  const double log_q = std::log1p(-p_event);
  const double lg_t = std::lgamma(static_cast<double>(t) + 1.0);
  // log-sum-exp over k = k_min..t
  double max_log = -std::numeric_limits<double>::infinity();
  std::vector<double> logs;
  logs.reserve(static_cast<std::size_t>(t - k_min + 1));
  for (std::int64_t k = k_min; k <= t; ++k) {
    const double lk =
        lg_t - std::lgamma(static_cast<double>(k) + 1.0) -
        std::lgamma(static_cast<double>(t - k) + 1.0) +
        static_cast<double>(k) * log_p + static_cast<double>(t - k) * log_q;
    logs.push_back(lk);
    max_log = std::max(max_log, lk);
  }
  double sum = 0.0;
  for (double lk : logs) sum += std::exp(lk - max_log);
  const double result = std::exp(max_log) * sum;
  return std::min(result, 1.0);
}

}  // namespace gti
