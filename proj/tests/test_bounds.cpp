#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "gti/bounds.hpp"
#include "gti/oracle.hpp"

using namespace gti;

TEST_CASE("p_y input validation and exact zeros") {
  CHECK_THROWS_AS(p_y(10, 1, 1, 0), std::out_of_range);
  CHECK_THROWS_AS(p_y(10, 1, 1, 11), std::out_of_range);
  CHECK_THROWS_AS(p_y(10, 6, 6, 1), std::invalid_argument);

  CHECK(p_y(10, 2, 3, 8) == 0.0);   // g > n - r
  CHECK(p_y(10, 0, 3, 4) == 0.0);   // no defectives
  CHECK(p_y(12, 1, 1, 12) == 0.0);  // whole population includes inhibitor
}

TEST_CASE("p_y closed cases") {
  // g = 1: a single random item is positive iff it is a defective.
  CHECK(p_y(40, 3, 5, 1) == doctest::Approx(3.0 / 40.0).epsilon(1e-14));
  CHECK(p_y(7, 2, 0, 1) == doctest::Approx(2.0 / 7.0).epsilon(1e-14));
  // r = 0 and g > n-d: every pool catches a defective.
  CHECK(p_y(10, 2, 0, 9) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("p_y matches the exact counting value at (40,2,5,8)") {
  // 9'651'664 positive pools of C(40,8) = 76'904'685, frozen from the
  // combinatorial count sum_k C(2,k) C(33,8-k).
  const double expected = 9651664.0 / 76904685.0;
  CHECK(std::abs(p_y(40, 2, 5, 8) - expected) / expected < 1e-12);
  CHECK(empirical_p_y_exact(40, 2, 5, 8) ==
        doctest::Approx(expected).epsilon(1e-15));
}

TEST_CASE("p_y equals the counting oracle on the small grid") {
  for (std::int64_t n = 1; n <= 24; ++n) {
    for (std::int64_t d = 0; d <= 4; ++d) {
      for (std::int64_t r = 0; d + r <= std::min<std::int64_t>(6, n); ++r) {
        const auto scan = p_y_scan(n, d, r, n);
        for (std::int64_t g = 1; g <= n; ++g) {
          const double oracle = empirical_p_y_exact(n, d, r, g);
          const double direct = p_y(n, d, r, g);
          const double inc = scan[static_cast<std::size_t>(g - 1)];
          if (oracle == 0.0) {
            CHECK(direct == 0.0);
            CHECK(inc == 0.0);
          } else {
            CHECK(std::abs(direct - oracle) / oracle < 1e-12);
            CHECK(std::abs(inc - oracle) / oracle < 1e-12);
          }
        }
      }
    }
  }
}

TEST_CASE("p_y stays in [0,1] and vanishes exactly when it should") {
  for (std::int64_t n : {5, 17, 33}) {
    for (std::int64_t d = 0; d <= 3; ++d) {
      for (std::int64_t r = 0; d + r <= std::min<std::int64_t>(5, n); ++r) {
        for (std::int64_t g = 1; g <= n; ++g) {
          const double p = p_y(n, d, r, g);
          CHECK(p >= 0.0);
          CHECK(p <= 1.0);
          CHECK((p == 0.0) == (g > n - r || d == 0));
        }
      }
    }
  }
}

TEST_CASE("switch_points formulas and validation") {
  CHECK_THROWS_AS(switch_points(100, 1, 0), std::invalid_argument);
  CHECK_THROWS_AS(switch_points(100, 0, 5), std::invalid_argument);
  CHECK_THROWS_AS(switch_points(10, 5, 5), std::invalid_argument);

  const auto [g0, g1] = switch_points(10000, 1, 100);
  CHECK(g1 == doctest::Approx(std::log(1.01) / std::log1p(1.0 / 9899.0))
                  .epsilon(1e-12));
  const double lr = std::log1p(1.0 / 100.0);
  CHECK(g0 == doctest::Approx((1.0 + 9901.0 * lr) / (1.0 + lr))
                  .epsilon(1e-12));

  // Both converge to n/r in the inhibitor-dominant regime.
  const auto [h0, h1] = switch_points(1000000, 10, 1000);
  CHECK(h0 / 1000.0 > 0.98);
  CHECK(h0 / 1000.0 < 1.02);
  CHECK(h1 / 1000.0 > 0.98);
  CHECK(h1 / 1000.0 < 1.02);
}

TEST_CASE("p_y is monotone outside the switch points") {
  const std::int64_t n = 5000, d = 2, r = 50;
  const auto [g0, g1] = switch_points(n, d, r);
  const auto scan = p_y_scan(n, d, r, n - d - r);
  const auto lo = static_cast<std::int64_t>(std::floor(g0));
  const auto hi = static_cast<std::int64_t>(std::ceil(g1));
  for (std::int64_t g = 1; g < lo; ++g)
    CHECK(scan[static_cast<std::size_t>(g - 1)] <=
          scan[static_cast<std::size_t>(g)]);
  for (std::int64_t g = hi; g < n - d - r; ++g)
    CHECK(scan[static_cast<std::size_t>(g - 1)] >=
          scan[static_cast<std::size_t>(g)]);
}

TEST_CASE("p_y has a single maximal plateau at desk scale") {
  const std::int64_t n = 5000, d = 2, r = 50;
  const auto scan = p_y_scan(n, d, r, n);
  double best = 0;
  for (double v : scan) best = std::max(best, v);
  std::int64_t first = -1, last = -1;
  for (std::int64_t g = 1; g <= n; ++g) {
    if (scan[static_cast<std::size_t>(g - 1)] == best) {
      if (first < 0) first = g;
      last = g;
    }
  }
  for (std::int64_t g = first; g <= last; ++g)
    CHECK(scan[static_cast<std::size_t>(g - 1)] == best);
}

TEST_CASE("g_opt_search finds the true argmax") {
  // (n=1000, d=1, r=10) has an exact two-point plateau: with
  // p_y(g) = C(989, g-1)/C(1000, g), the step ratio equals one at g = 90,
  // so p_y(90) = p_y(91) is the maximum.
  const auto analysis = g_opt_search(1000, 1, 10);
  CHECK((analysis.g_opt == 90 || analysis.g_opt == 91));
  CHECK(analysis.g_opt >= std::floor(analysis.g0) - 2);
  CHECK(analysis.g_opt <= std::ceil(analysis.g1) + 2);
  // Exhaustive scan as the oracle for the maximum value.
  const auto scan = p_y_scan(1000, 1, 10, 1000);
  double best = 0;
  for (double v : scan) best = std::max(best, v);
  CHECK(analysis.p_y_max == doctest::Approx(best).epsilon(1e-12));
  CHECK(scan[89] == doctest::Approx(scan[90]).epsilon(1e-12));
}

TEST_CASE("g_opt_search equals a full scan on small random instances") {
  for (std::int64_t n : {12, 30, 57}) {
    for (std::int64_t d : {1, 2, 5}) {
      for (std::int64_t r : {1, 3, 8}) {
        if (d + r >= n) continue;
        const auto analysis = g_opt_search(n, d, r);
        const auto scan = p_y_scan(n, d, r, n);
        std::int64_t best_g = 1;
        for (std::int64_t g = 2; g <= n; ++g)
          if (scan[static_cast<std::size_t>(g - 1)] >
              scan[static_cast<std::size_t>(best_g - 1)])
            best_g = g;
        CHECK(analysis.p_y_max ==
              doctest::Approx(scan[static_cast<std::size_t>(best_g - 1)])
                  .epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("p_y maximum approaches d/(r e)") {
  const auto analysis = g_opt_search(1000000, 5, 500);
  const double ratio = analysis.p_y_max / analysis.asymptote;
  CHECK(ratio > 0.95);
  CHECK(ratio < 1.05);
}

TEST_CASE("fano numerator at zero error is the counting entropy") {
  const auto rep = fano_lb_scp(60, 2, 3, 0.0);
  CHECK(rep.numerator_bits ==
        doctest::Approx(log2_binomial(60, 2) + log2_binomial(58, 3))
            .epsilon(1e-12));
  const auto dcp = fano_lb_dcp(60, 2, 3, 0.0);
  CHECK(dcp.numerator_bits == doctest::Approx(log2_binomial(60, 2))
                                  .epsilon(1e-12));
  CHECK(dcp.tests_lb <= rep.tests_lb);
  CHECK_THROWS_AS(fano_lb_scp(60, 2, 3, 1.0), std::invalid_argument);
}

TEST_CASE("log2_binomial agrees with exact values") {
  CHECK(log2_binomial(10, 0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(log2_binomial(10, 3) == doctest::Approx(std::log2(120.0))
                                    .epsilon(1e-12));
  CHECK(log2_binomial(40, 8) == doctest::Approx(std::log2(76904685.0))
                                    .epsilon(1e-12));
}

TEST_CASE("fano bound decreases with the allowed error") {
  double prev = fano_lb_scp(100000, 3, 30, 0.0).tests_lb;
  for (double pe : {0.1, 0.2, 0.3, 0.4, 0.49}) {
    const double cur = fano_lb_scp(100000, 3, 30, pe).tests_lb;
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("fano bound has the predicted order at d = o(r)") {
  const auto rep = fano_lb_scp(1000000, 10, 1000, 0.0);
  const double predicted = (1000.0 * 1000.0 / (10.0 * std::log2(100.0))) *
                           std::log2(1e6);
  const double ratio = rep.tests_lb / predicted;
  CHECK(ratio > 0.1);
  CHECK(ratio < 10.0);

  const auto dcp = fano_lb_dcp(1000000, 10, 1000, 0.0);
  const double predicted_dcp =
      (1000.0 / std::log2(100.0)) * std::log2(1e6);
  const double ratio_dcp = dcp.tests_lb / predicted_dcp;
  CHECK(ratio_dcp > 0.1);
  CHECK(ratio_dcp < 10.0);
}

TEST_CASE("fano bound scales as log n") {
  const double lb1 = fano_lb_scp(10000, 5, 5, 0.0).tests_lb;
  const double lb2 = fano_lb_scp(100000000, 5, 5, 0.0).tests_lb;
  const double ratio = lb2 / lb1;
  CHECK(ratio > 1.9);
  CHECK(ratio < 2.3);
}

TEST_CASE("fano report flags the d >= r regime instead of refusing") {
  const auto rep = fano_lb_dcp(10000, 20, 20, 0.0);
  CHECK(rep.tests_lb > 0.0);
  CHECK(rep.pool.g_opt >= 1);
}

TEST_CASE("ub-scenario bound picks the dominating branch") {
  const auto trivial = fano_lb_ub_scenario(1000000, 2, 1000, 0.0,
                                           Problem::Scp);
  CHECK(trivial.dominating_branch == "counting");
  CHECK(trivial.max_entropy == 1.0);

  const auto fano = fano_lb_ub_scenario(1000000, 300, 5, 0.0, Problem::Scp);
  CHECK(fano.dominating_branch == "fano");
  CHECK(fano.tests_lb > trivial.tests_lb * 0.0);  // defined and positive
  CHECK(fano.tests_lb > 0.0);

  // R = 1 DCP reduces to the plain counting shape.
  const auto dcp = fano_lb_ub_scenario(100000, 1, 8, 0.0, Problem::Dcp);
  CHECK(dcp.tests_lb >= log2_binomial(100000, 8) * 0.99);
}
