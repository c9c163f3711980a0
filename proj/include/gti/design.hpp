#pragma once

#include <cstdint>
#include <optional>

#include "gti/model.hpp"

namespace gti {

/// Decoder parameters for the exact-knowledge scenario (known d, r).
///
/// q  : probability that a test containing a given item also contains at
///      least one inhibitor, 1-(1-p)^r
/// a  : probability of a positive outcome given a fixed normal item is in
///      the test, (1-p)^r * (1-(1-p)^d)
/// b  : probability of a positive outcome given a fixed defective is in the
///      test, (1-p)^r = 1-q
/// tau: slack (1-q-a)/(2q); undefined at r = 0 where q = 0
/// threshold_fraction: the defective/normal boundary as a fraction of
///      |T_j|, equal to 1-q(1+tau) and identically to (a+b)/2.
struct ExactParams {
  double p = 0;
  double q = 0;
  double a = 0;
  double b = 0;
  std::optional<double> tau;
  double threshold_fraction = 0;
};

/// Parameters for the upper-bound scenario (known R >= r, D >= d).
/// Matrix M1 ~ Bernoulli(p1) drives defective identification, M2 ~
/// Bernoulli(p2) separates inhibitors from normals. qR is the worst-case
/// probability that a test of M1 contains an inhibitor.
struct UbParams {
  double p1 = 0;
  double p2 = 0;
  double qR = 0;
  double tau = 0;
  double stage1_threshold_fraction = 0;
};

/// i.i.d. Bernoulli(p) design; entry (i,j) is 1 with probability p,
/// independent across entries. Bit-reproducible for a given seed: row i is
/// filled from substream derive_seed(seed, i) by geometric gap skipping, so
/// generation order (or threading) cannot change the result.
PoolingDesign iid_design(std::int64_t tests, std::int64_t items, double p,
                         std::uint64_t seed);

/// Exact-knowledge parameters with the optimized p = 1/(2(r+d)+1), or a
/// caller-supplied p override.
ExactParams exact_params(std::int64_t n, std::int64_t d, std::int64_t r,
                         std::optional<double> p_override = std::nullopt);

/// Upper-bound-knowledge parameters: p1 = 1/(3(R+D)), p2 = 2/(3R),
/// tau = (1-(R+D)p1)/(2 qR).
UbParams ub_params(std::int64_t R, std::int64_t D);

}  // namespace gti
