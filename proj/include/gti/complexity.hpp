#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gti {

/// One lower-bound term per error event, their maximum beta, and the
/// resulting test count T = ceil(beta * log2 n). Terms are kept individually
/// so a harness can attribute which event sizes an experiment.
struct BetaBreakdown {
  std::vector<double> terms;
  std::vector<std::string> labels;
  double beta = 0;
  double delta = 0;
  std::int64_t n = 0;
  std::int64_t tests = 0;
};

/// Exact-knowledge bound: four terms (defective missed, normal declared
/// defective, normal declared inhibitor, inhibitor absent); the last term is
/// dropped when r = 0. Default p = 1/(2(r+d)+1).
BetaBreakdown beta_exact(std::int64_t n, std::int64_t d, std::int64_t r,
                         double delta,
                         std::optional<double> p_override = std::nullopt);

/// Large-(r+d) asymptotic form of beta_exact, with p ~ 1/(2(r+d)) and
/// (1-p)^k ~ exp(-k/(2(r+d))) substituted.
BetaBreakdown beta_exact_asymptotic(std::int64_t n, std::int64_t d,
                                    std::int64_t r, double delta);

/// Upper-bound-knowledge bounds for the two matrices: beta1 sizes M1
/// (defective identification), beta2 sizes M2 (inhibitor/normal separation).
std::pair<BetaBreakdown, BetaBreakdown> beta_ub(std::int64_t n, std::int64_t R,
                                                std::int64_t D, double delta);

/// Defective-classification-only variants: keep the defective terms, drop
/// the inhibitor/normal separation terms.
BetaBreakdown beta_dcp(std::int64_t n, std::int64_t d, std::int64_t r,
                       double delta,
                       std::optional<double> p_override = std::nullopt);
BetaBreakdown beta_dcp_ub(std::int64_t n, std::int64_t R, std::int64_t D,
                          double delta);

/// Thumb rule for midpoint-threshold designs: the tests needed to separate
/// two item types with per-test positive probabilities b > a scale as
/// 1/(p (b-a)^2). Unnormalized; for regime comparison only.
double thumb_rule_tests(double p, double a, double b);

}  // namespace gti
