#include <doctest.h>

#include <stdexcept>

#include <cmath>

#include "gti/complexity.hpp"
#include "gti/design.hpp"

using namespace gti;

TEST_CASE("beta_exact input validation") {
  CHECK_THROWS_AS(beta_exact(100, 0, 1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(beta_exact(100, 50, 50, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(beta_exact(100, 1, 1, 0.0), std::invalid_argument);
}

TEST_CASE("beta_exact drops the inhibitor term at r = 0") {
  const auto b = beta_exact(100000, 4, 0, 1.0);
  CHECK(b.terms.size() == 3);
  const auto b1 = beta_exact(100000, 4, 1, 1.0);
  CHECK(b1.terms.size() == 4);
  for (double t : b.terms) CHECK(t > 0.0);
  CHECK(b.beta == *std::max_element(b.terms.begin(), b.terms.end()));
  CHECK(b.tests ==
        static_cast<std::int64_t>(std::ceil(b.beta * std::log2(100000.0))));
}

TEST_CASE("beta scales linearly in r+d when r = d") {
  const auto b1 = beta_exact(1000000, 10, 10, 1.0);
  const auto b2 = beta_exact(1000000, 20, 20, 1.0);
  CHECK(std::isfinite(b1.beta));
  const double ratio = b2.beta / b1.beta;
  CHECK(ratio > 2.0 * 0.85);
  CHECK(ratio < 2.0 * 1.15);
}

TEST_CASE("beta tracks r^2/d in the inhibitor-dominant regime") {
  const auto b1 = beta_exact(1000000, 2, 200, 1.0);
  const auto b2 = beta_exact(1000000, 2, 400, 1.0);
  // Third term (normal declared inhibitor) dominates.
  CHECK(b1.beta == b1.terms[2]);
  const double r1 = b1.beta / (200.0 * 200.0 / 2.0);
  const double r2 = b2.beta / (400.0 * 400.0 / 2.0);
  CHECK(r2 / r1 > 0.66);
  CHECK(r2 / r1 < 1.5);
}

TEST_CASE("terms grow polynomially, not exponentially, in r+d") {
  double prev = beta_exact(1000000, 8, 8, 1.0).terms[1];
  for (std::int64_t k = 16; k <= 256; k *= 2) {
    const double cur = beta_exact(1000000, k, k, 1.0).terms[1];
    CHECK(cur / prev < 2.5);  // doubling (r+d) roughly doubles the term
    prev = cur;
  }
}

TEST_CASE("asymptotic form approaches the exact form") {
  const auto exact = beta_exact(1000000, 50, 50, 1.0);
  const auto asym = beta_exact_asymptotic(1000000, 50, 50, 1.0);
  const double ratio = asym.beta / exact.beta;
  CHECK(ratio > 0.9);
  CHECK(ratio < 1.1);

  // Fourth term is 2(r+d)(ln r/ln n + delta) ln 2 exactly.
  const double expected = 2.0 * 100.0 *
                          (std::log(50.0) / std::log(1e6) + 1.0) *
                          std::log(2.0);
  CHECK(asym.terms[3] == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("beta_ub closed forms") {
  const auto [b1, b2] = beta_ub(1000000, 10, 1000, 1.0);
  CHECK(b1.terms.size() == 2);
  CHECK(b2.terms.size() == 2);
  // Second beta1 term dominates the first whenever D <= n.
  for (std::int64_t R = 1; R <= 40; R += 13)
    for (std::int64_t D = 1; D <= 40; D += 13) {
      const auto pair = beta_ub(100000, R, D, 0.5);
      CHECK(pair.first.terms[1] >= pair.first.terms[0]);
    }
  // D >> R^2: total dominated by T1.
  CHECK(b1.tests > b2.tests);
  // R^2 >> D: total dominated by T2.
  const auto [c1, c2] = beta_ub(1000000, 100, 10, 1.0);
  CHECK(c2.tests > c1.tests);

  CHECK_THROWS_AS(beta_ub(1000, 0, 5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(beta_ub(1000, 5, 5, 0.0), std::invalid_argument);
}

TEST_CASE("beta_ub matches hand-computed values at R = D = 1") {
  const auto [b1, b2] = beta_ub(1024, 1, 1, 1.0);
  const double ln2 = std::log(2.0);
  const double c = 1.0 - std::exp(-2.0);
  CHECK(b1.terms[0] ==
        doctest::Approx(27.0 * 2.0 * (0.0 / std::log(1024.0) + 1.0) * ln2 / c)
            .epsilon(1e-12));
  CHECK(b1.terms[1] == doctest::Approx(27.0 * 2.0 * 2.0 * ln2 / c)
                           .epsilon(1e-12));
  CHECK(b2.terms[0] == doctest::Approx(27.0 / 4.0 * 2.0 * ln2).epsilon(1e-12));
  CHECK(b2.terms[1] == doctest::Approx(1.5 * 1.0 * ln2).epsilon(1e-12));
}

TEST_CASE("dcp variants keep only the defective terms") {
  for (std::int64_t r : {0, 5, 50}) {
    const auto full = beta_exact(1000000, 5, r, 1.0);
    const auto dcp = beta_dcp(1000000, 5, r, 1.0);
    CHECK(dcp.terms.size() == 2);
    CHECK(dcp.beta <= full.beta);
    CHECK(dcp.terms[0] == full.terms[0]);
    CHECK(dcp.terms[1] == full.terms[1]);
  }

  // Linear in (r+d): doubling r roughly doubles the dcp beta.
  const auto a = beta_dcp(1000000, 5, 500, 1.0);
  const auto b = beta_dcp(1000000, 5, 1000, 1.0);
  const double scale = b.beta / a.beta;
  const double rd_scale = 1005.0 / 505.0;
  CHECK(scale / rd_scale > 0.85);
  CHECK(scale / rd_scale < 1.15);

  // The ub-mode dcp bound is beta1 itself.
  const auto [b1, b2] = beta_ub(100000, 7, 9, 2.0);
  const auto dub = beta_dcp_ub(100000, 7, 9, 2.0);
  CHECK(dub.beta == b1.beta);
  CHECK(dub.tests == b1.tests);
}

TEST_CASE("calculators are monotone in delta") {
  for (double delta : {0.25, 0.5, 1.0, 2.0}) {
    const auto lo = beta_exact(100000, 4, 6, delta);
    const auto hi = beta_exact(100000, 4, 6, delta + 0.25);
    CHECK(hi.beta >= lo.beta);
    const auto [lo1, lo2] = beta_ub(100000, 4, 6, delta);
    const auto [hi1, hi2] = beta_ub(100000, 4, 6, delta + 0.25);
    CHECK(hi1.beta >= lo1.beta);
    CHECK(hi2.beta >= lo2.beta);
  }
}

TEST_CASE("tests counts are monotone in n at large n") {
  std::int64_t prev = beta_exact(100000, 5, 5, 1.0).tests;
  for (std::int64_t n : {1000000, 10000000, 100000000}) {
    const std::int64_t cur = beta_exact(n, 5, 5, 1.0).tests;
    CHECK(cur >= prev);
    prev = cur;
  }
}

TEST_CASE("thumb rule") {
  CHECK_THROWS_AS(thumb_rule_tests(0.5, 0.7, 0.7), std::invalid_argument);
  CHECK_THROWS_AS(thumb_rule_tests(0.0, 0.1, 0.2), std::invalid_argument);

  // Halving the statistical gap quadruples the estimate.
  const double est1 = thumb_rule_tests(0.1, 0.2, 0.6);
  const double est2 = thumb_rule_tests(0.1, 0.4, 0.6);
  CHECK(est2 == doctest::Approx(4.0 * est1).epsilon(1e-12));

  // With b - a = (1-p)^(r+d), the estimate reproduces the shape of the
  // defective-missed term up to its constant factor.
  const double ln2 = std::log(2.0);
  const double c = 1.0 - std::exp(-2.0);
  for (std::int64_t d : {2, 5, 10}) {
    for (std::int64_t r : {1, 10, 40}) {
      const auto params = exact_params(1000000, d, r);
      const auto b = beta_exact(1000000, d, r, 1.0);
      const double est = thumb_rule_tests(params.p, params.a, params.b);
      const double factor =
          4.0 * (std::log(static_cast<double>(d)) / std::log(1e6) + 1.0) *
          ln2 / c;
      CHECK(b.terms[0] == doctest::Approx(est * factor).epsilon(1e-9));
    }
  }

  // Regime ranking agrees with the defective-missed term across a grid.
  std::vector<double> est, term;
  for (std::int64_t d : {2, 4, 8}) {
    for (std::int64_t r : {2, 8, 32}) {
      const auto params = exact_params(1000000, d, r);
      est.push_back(thumb_rule_tests(params.p, params.a, params.b));
      term.push_back(beta_exact(1000000, d, r, 1.0).terms[1]);
    }
  }
  for (std::size_t i = 0; i < est.size(); ++i)
    for (std::size_t j = 0; j < est.size(); ++j)
      if (est[i] < est[j]) CHECK(term[i] < term[j]);
}
