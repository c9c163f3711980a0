#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "gti/bounds.hpp"
#include "gti/harness.hpp"
#include "gti/model.hpp"
#include "gti/oracle.hpp"
#include "gti/rng.hpp"

using namespace gti;

namespace {

PoolingDesign tiny_design() {
  return PoolingDesign::from_rows({{1, 1, 0}, {1, 0, 1}, {1, 0, 0}});
}

}  // namespace

TEST_CASE("the three-item instance is uniquely identifiable") {
  const auto cs =
      consistent_assignments(tiny_design(), OutcomeVector{0, 1, 1}, 1, 1);
  REQUIRE(cs.identifiable);
  REQUIRE(cs.assignments.size() == 1);
  CHECK(cs.assignments[0].first == std::vector<std::int64_t>{0});
  CHECK(cs.assignments[0].second == std::vector<std::int64_t>{1});
}

TEST_CASE("all-zero outcomes with full coverage admit no lone defective") {
  // Every item appears in some test, so a defective with no inhibitors
  // would trigger at least one positive outcome.
  const auto cs =
      consistent_assignments(tiny_design(), OutcomeVector{0, 0, 0}, 1, 0);
  CHECK(cs.assignments.empty());
  CHECK_FALSE(cs.identifiable);
}

TEST_CASE("individual testing pins the defective") {
  const auto design =
      PoolingDesign::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  const auto cs =
      consistent_assignments(design, OutcomeVector{0, 1, 0}, 1, 0);
  REQUIRE(cs.assignments.size() == 1);
  CHECK(cs.assignments[0].first == std::vector<std::int64_t>{1});
}

TEST_CASE("enumeration guard refuses oversized instances") {
  const PoolingDesign design(1, 40);
  CHECK_THROWS_AS(
      consistent_assignments(design, OutcomeVector{0}, 10, 10, 1000),
      std::runtime_error);
  const PoolingDesign big(1, 80);
  CHECK_THROWS_AS(consistent_assignments(big, OutcomeVector{0}, 1, 1),
                  std::runtime_error);
}

TEST_CASE("every reported assignment reproduces the outcomes") {
  SplitMix64 rng(31);
  for (int round = 0; round < 40; ++round) {
    const std::int64_t n = 5 + static_cast<std::int64_t>(rng.next_below(6));
    const std::int64_t d = 1 + static_cast<std::int64_t>(rng.next_below(2));
    const std::int64_t r = static_cast<std::int64_t>(rng.next_below(3));
    if (d + r > n) continue;
    const auto truth = random_population(n, d, r, rng.next());
    PoolingDesign design(8, n);
    for (std::int64_t i = 0; i < 8; ++i)
      for (std::int64_t j = 0; j < n; ++j)
        if (rng.next_unit() < 0.35) design.set_entry(i, j, true);
    const auto y = simulate_outcomes(design, truth);
    const auto cs = consistent_assignments(design, y, d, r);
    bool truth_found = false;
    for (const auto& [defs, inhs] : cs.assignments) {
      CHECK(simulate_outcomes(design, Population(n, defs, inhs)) == y);
      truth_found |=
          defs == truth.defectives() && inhs == truth.inhibitors();
    }
    // The true population is always among the candidates.
    CHECK(truth_found);
  }
}

TEST_CASE("exact pool counting closed cases") {
  CHECK(empirical_p_y_exact(5, 1, 1, 5) == 0.0);  // inhibitor always present
  CHECK(empirical_p_y_exact(6, 1, 1, 1) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  CHECK_THROWS_AS(empirical_p_y_exact(70, 1, 1, 3), std::runtime_error);
}

TEST_CASE("enumeration and counting paths agree") {
  // Instances straddling the internal enumeration cutoff use different
  // strategies; both are exact.
  for (std::int64_t n : {10, 18, 26}) {
    for (std::int64_t g = 1; g <= n; g += 3) {
      const double a = empirical_p_y_exact(n, 2, 2, g);
      // Counting route, straight from the hypergeometric identity.
      double count = 0, total = std::exp2(log2_binomial(n, g));
      for (std::int64_t k = 1; k <= std::min<std::int64_t>(2, g); ++k)
        count += std::exp2(log2_binomial(2, k)) *
                 (g - k <= n - 4 ? std::exp2(log2_binomial(n - 4, g - k))
                                 : 0.0);
      CHECK(a == doctest::Approx(count / total).epsilon(1e-10));
    }
  }
}

TEST_CASE("sampled pool probability brackets the exact value") {
  const double exact = empirical_p_y_exact(40, 2, 5, 8);
  const auto est = empirical_p_y_sampled(40, 2, 5, 8, 20000, 17);
  CHECK(std::abs(est.estimate - exact) <= 2.0 * est.half_width_99);
  CHECK(est.half_width_99 > 0.0);
  CHECK(est.samples == 20000);
}

TEST_CASE("binomial tail edge cases") {
  CHECK(empirical_event_tail(10, 0.3, 0.0) == 1.0);
  CHECK(empirical_event_tail(10, 0.3, -2.0) == 1.0);
  CHECK(empirical_event_tail(10, 0.3, 11.0) == 0.0);
  CHECK(empirical_event_tail(10, 0.0, 1.0) == 0.0);
  CHECK(empirical_event_tail(10, 1.0, 10.0) == 1.0);
  CHECK_THROWS_AS(empirical_event_tail(10, 1.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(empirical_event_tail(200000, 0.5, 1.0),
                  std::invalid_argument);
}

TEST_CASE("binomial tail matches direct summation on small t") {
  for (std::int64_t t : {1, 5, 12}) {
    for (double p : {0.05, 0.4, 0.9}) {
      for (std::int64_t k = 0; k <= t + 1; ++k) {
        double direct = 0.0;
        for (std::int64_t v = k; v <= t; ++v) {
          double term = 1.0;
          for (std::int64_t i = 0; i < v; ++i)
            term *= p * static_cast<double>(t - i) /
                    static_cast<double>(i + 1);
          for (std::int64_t i = 0; i < t - v; ++i) term *= 1.0 - p;
          direct += term;
        }
        direct = std::min(direct, 1.0);
        CHECK(empirical_event_tail(t, p, static_cast<double>(k)) ==
              doctest::Approx(direct).epsilon(1e-10));
      }
    }
  }
}

TEST_CASE("binomial tail respects the Hoeffding bound") {
  for (std::int64_t t : {20, 100, 1000}) {
    for (double p : {0.1, 0.3, 0.5}) {
      for (double eps : {0.05, 0.1, 0.2}) {
        const double tail = empirical_event_tail(
            t, p, (p + eps) * static_cast<double>(t));
        const double hoeffding =
            std::exp(-2.0 * static_cast<double>(t) * eps * eps);
        CHECK(tail <= hoeffding * (1.0 + 1e-9));
      }
    }
  }
}
