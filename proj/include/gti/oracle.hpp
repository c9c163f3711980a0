#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "gti/model.hpp"

namespace gti {

/// All (defective set, inhibitor set) pairs of the given sizes that
/// reproduce an observed outcome vector exactly. Canonically ordered by
/// bit pattern (defective set first, then inhibitor set).
struct ConsistencySet {
  std::vector<std::pair<std::vector<std::int64_t>, std::vector<std::int64_t>>>
      assignments;
  bool identifiable = false;  // exactly one assignment
};

/// Exhaustive inversion of the outcome rule. Guarded: refuses instances
/// with more than max_candidates candidate pairs rather than truncating.
ConsistencySet consistent_assignments(const PoolingDesign& design,
                                      const OutcomeVector& outcomes,
                                      std::int64_t d, std::int64_t r,
                                      std::int64_t max_candidates = 10'000'000);

/// Exact positive-pool probability by counting: the number of size-g pools
/// containing at least one defective and no inhibitors, over C(n, g).
/// Literally enumerates all pools when C(n, g) is small, otherwise counts
/// by exact 64-bit combinatorics; requires n <= 62.
double empirical_p_y_exact(std::int64_t n, std::int64_t d, std::int64_t r,
                           std::int64_t g);

struct SampledProbability {
  double estimate = 0;
  double half_width_99 = 0;  // normal-approximation 99% confidence
  std::int64_t samples = 0;
};

/// Monte Carlo estimate of the positive-pool probability for instances too
/// large to count exactly.
SampledProbability empirical_p_y_sampled(std::int64_t n, std::int64_t d,
                                         std::int64_t r, std::int64_t g,
                                         std::int64_t samples,
                                         std::uint64_t seed);

/// Exact upper binomial tail P[X >= threshold] for X ~ Binomial(t, p),
/// evaluated in log space. threshold may be fractional (as produced by
/// threshold-fraction rules); t is capped at 100000.
double empirical_event_tail(std::int64_t t, double p_event, double threshold);

}  // namespace gti
