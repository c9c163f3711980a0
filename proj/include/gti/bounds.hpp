#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace gti {

enum class Problem : std::uint8_t { Scp = 0, Dcp = 1 };

/// Where the positive-outcome probability p_Y(g) switches direction and
/// where its integer argmax lands. g0/g1 are the real switch points: p_Y is
/// nondecreasing on integers below g0 and nonincreasing above g1, for any
/// valid (n, d, r) with r >= 1. asymptote is the large-n limit d/(r e) of
/// the maximum in the inhibitor-dominant regime.
struct PoolSizeAnalysis {
  double g0 = 0;
  double g1 = 0;
  std::int64_t g_opt = 0;
  double p_y_max = 0;
  double asymptote = 0;
  // Max binary entropy of the outcome over the scanned pool sizes; equals
  // H2(p_y_max) whenever p_y_max <= 1/2.
  double max_entropy = 0;
};

/// Fano-style test-count lower bound: numerator_bits is the classification
/// entropy discounted by the allowed error probability, max_entropy is the
/// per-test outcome entropy, tests_lb their ratio.
struct LowerBoundReport {
  double numerator_bits = 0;
  double max_entropy = 0;
  double tests_lb = 0;
  PoolSizeAnalysis pool;
  bool py_max_below_half = true;
  std::string dominating_branch = "fano";  // "fano" or "counting"
};

/// log2 of the binomial coefficient C(n, k) via log-gamma.
double log2_binomial(std::int64_t n, std::int64_t k);

/// Binary entropy in bits; 0 at p = 0 and p = 1.
double binary_entropy(double p);

/// Probability that a uniformly random size-g pool contains at least one
/// defective and no inhibitors. Exact zero iff g > n-r or d = 0.
double p_y(std::int64_t n, std::int64_t d, std::int64_t r, std::int64_t g);

/// p_y for every g in [1, g_max], computed incrementally in O(g_max).
std::vector<double> p_y_scan(std::int64_t n, std::int64_t d, std::int64_t r,
                             std::int64_t g_max);

/// Real switch points (g0, g1); requires d >= 1, r >= 1, d + r < n.
std::pair<double, double> switch_points(std::int64_t n, std::int64_t d,
                                        std::int64_t r);

/// Integer argmax of p_y. Exhaustive over the bracket guaranteed by the
/// switch points (with margin) plus the branch boundary, falling back to a
/// full scan when the bracket degenerates; ties resolve to the smallest g.
PoolSizeAnalysis g_opt_search(std::int64_t n, std::int64_t d, std::int64_t r);

/// Lower bound on tests for classifying defectives AND inhibitors, with
/// classification count C(n,d)*C(n-d,r).
LowerBoundReport fano_lb_scp(std::int64_t n, std::int64_t d, std::int64_t r,
                             double pe);

/// Lower bound for identifying the defectives only; count C(n,d).
LowerBoundReport fano_lb_dcp(std::int64_t n, std::int64_t d, std::int64_t r,
                             double pe);

/// Upper-bound-knowledge scenario: max of the trivial counting bound
/// (outcome entropy <= 1 bit/test) and the Fano bound evaluated at the
/// worst case r = R, d = 1.
LowerBoundReport fano_lb_ub_scenario(std::int64_t n, std::int64_t R,
                                     std::int64_t D, double pe,
                                     Problem problem);

}  // namespace gti
