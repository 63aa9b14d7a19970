#include <doctest.h>

#include <cmath>

#include "isacregion/mc.hpp"

using namespace isacregion;

TEST_CASE("make_mc_estimate invariants") {
  const auto e = make_mc_estimate(10000, 1234);
  CHECK(e.trials == 10000);
  CHECK(e.errors_observed == 1234);
  CHECK(e.p_hat == doctest::Approx(0.1234));
  const double se = std::sqrt(0.1234 * (1.0 - 0.1234) / 10000.0);
  CHECK(e.ci_half_width == doctest::Approx(1.96 * se).epsilon(1e-12));

  const auto zero = make_mc_estimate(100, 0);
  CHECK(zero.p_hat == 0.0);
  CHECK(zero.ci_half_width == 0.0);

  CHECK_THROWS_AS(make_mc_estimate(0, 0), std::domain_error);
  CHECK_THROWS_AS(make_mc_estimate(100, -1), std::domain_error);
  CHECK_THROWS_AS(make_mc_estimate(100, 101), std::domain_error);
}

TEST_CASE("mc_detection_error is deterministic given the seed") {
  const auto p = ChannelParams::from_db(10.0, 10.0);
  const InputDistribution dist = Gaussian{1.0};
  const auto a = mc_detection_error(dist, 3, p, 20000, 42);
  const auto b = mc_detection_error(dist, 3, p, 20000, 42);
  CHECK(a.errors_observed == b.errors_observed);
  CHECK(a.p_hat == b.p_hat);
  const auto c = mc_detection_error(dist, 3, p, 20000, 43);
  CHECK(a.errors_observed != c.errors_observed);
}

TEST_CASE("mc_detection_error input validation") {
  const auto p = ChannelParams::from_db(10.0, 10.0);
  const InputDistribution dist = BinaryPam{1.0};
  CHECK_THROWS_AS(mc_detection_error(dist, 0, p, 10000, 1), std::domain_error);
  CHECK_THROWS_AS(mc_detection_error(dist, 2, p, 999, 1), std::domain_error);
}

TEST_CASE("MC agrees with exact error within five standard errors") {
  const QuadratureConfig cfg;
  const auto p = ChannelParams::from_db(10.0, 10.0);
  const std::vector<InputDistribution> dists = {BinaryPam{1.0}, Gaussian{1.0},
                                                GaussianMixture{1.0}, SignedChi{4}};
  const long long trials = 200000;
  std::uint64_t seed = 7;
  for (const auto& dist : dists) {
    for (int n : {1, 4}) {
      const double exact = avg_error_exact(dist, n, p, cfg);
      const auto mc = mc_detection_error(dist, n, p, trials, seed++);
      const double se = std::sqrt(exact * (1.0 - exact) / double(trials));
      CHECK(std::abs(mc.p_hat - exact) < 5.0 * std::max(se, 1e-12));
    }
  }
}

TEST_CASE("essentially noiseless channel yields zero observed errors") {
  const auto p = ChannelParams::from_db(10.0, 60.0);
  const auto mc = mc_detection_error(BinaryPam{1.0}, 8, p, 50000, 11);
  CHECK(mc.errors_observed == 0);
}

TEST_CASE("independent substreams pool to the same answer") {
  // Two half-size runs with derived seeds behave like one run: each estimate
  // sits within five standard errors of the exact value, and the pooled
  // estimate is consistent with the full-run estimate.
  const QuadratureConfig cfg;
  const auto p = ChannelParams::from_db(10.0, 10.0);
  const InputDistribution dist = BinaryPam{1.0};
  const int n = 2;
  const double exact = avg_error_exact(dist, n, p, cfg);
  const auto h1 = mc_detection_error(dist, n, p, 100000, 1001);
  const auto h2 = mc_detection_error(dist, n, p, 100000, 1002);
  const double pooled = double(h1.errors_observed + h2.errors_observed) / 200000.0;
  const double se = std::sqrt(exact * (1.0 - exact) / 200000.0);
  CHECK(std::abs(pooled - exact) < 5.0 * se);
}

TEST_CASE("fit_exponent recovers closed-form slopes") {
  const QuadratureConfig cfg;
  const auto p = ChannelParams::from_db(10.0, 10.0);
  constexpr double kLog2E = 1.44269504088896340736;

  std::vector<int> grid;
  for (int n = 50; n <= 400; n += 50) grid.push_back(n);

  SUBCASE("binary PAM approaches snr2/8 nats") {
    const auto fit = fit_exponent(BinaryPam{1.0}, p, grid, cfg);
    const double target = 10.0 / 8.0 * kLog2E;
    CHECK(fit.r_squared >= 0.999);
    CHECK(std::abs(fit.slope / target - 1.0) < 0.02);
  }
  SUBCASE("Gaussian approaches half-log") {
    const auto fit = fit_exponent(Gaussian{1.0}, p, grid, cfg);
    const double target = 0.5 * std::log2(1.0 + 10.0 / 4.0);
    CHECK(fit.r_squared >= 0.999);
    CHECK(std::abs(fit.slope / target - 1.0) < 0.02);
  }
  SUBCASE("fit arrays are populated and finite") {
    const auto fit = fit_exponent(SignedChi{4}, p, grid, cfg);
    REQUIRE(fit.n_grid.size() == grid.size());
    REQUIRE(fit.log2_errors.size() == grid.size());
    for (double v : fit.log2_errors) CHECK(std::isfinite(v));
    CHECK(fit.r_squared >= 0.999);
  }
}

TEST_CASE("fit_exponent slope improves with a longer grid") {
  // The slope of the secant underestimates the asymptotic exponent at small
  // n; extending the grid should move it toward the target.
  const QuadratureConfig cfg;
  const auto p = ChannelParams::from_db(10.0, 10.0);
  constexpr double kLog2E = 1.44269504088896340736;
  const double target = 10.0 / 8.0 * kLog2E;

  const auto fit_short = fit_exponent(BinaryPam{1.0}, p, {10, 20, 30, 40}, cfg);
  const auto fit_long = fit_exponent(BinaryPam{1.0}, p, {100, 200, 300, 400}, cfg);
  CHECK(std::abs(fit_long.slope - target) < std::abs(fit_short.slope - target));
}

TEST_CASE("fit_exponent grid validation") {
  const QuadratureConfig cfg;
  const auto p = ChannelParams::from_db(10.0, 10.0);
  CHECK_THROWS_AS(fit_exponent(BinaryPam{1.0}, p, {1, 2, 3}, cfg), std::domain_error);
  CHECK_THROWS_AS(fit_exponent(BinaryPam{1.0}, p, {1, 2, 2, 4}, cfg), std::domain_error);
}

TEST_CASE("audit_bounds passes for all distributions") {
  const QuadratureConfig cfg;
  const auto p = ChannelParams::from_db(10.0, 10.0);
  std::vector<int> grid;
  for (int n = 1; n <= 32; ++n) grid.push_back(n);

  for (const InputDistribution& dist :
       {InputDistribution{BinaryPam{1.0}}, InputDistribution{Gaussian{1.0}},
        InputDistribution{GaussianMixture{1.0}}, InputDistribution{SignedChi{4}}}) {
    const auto rep = audit_bounds(dist, p, grid, cfg);
    CHECK(rep.all_pass);
    CHECK(rep.worst_margin >= 0.0);
    REQUIRE(rep.entries.size() == grid.size());
    for (const auto& e : rep.entries) {
      CHECK(e.pass);
      CHECK(e.exact <= e.chernoff);
      if (e.has_sandwich) {
        CHECK(e.sandwich_lo <= e.exact);
        CHECK(e.exact <= e.sandwich_hi);
      }
    }
  }
}

TEST_CASE("audit_bounds marks the sandwich only for deterministic power") {
  const QuadratureConfig cfg;
  const auto p = ChannelParams::from_db(10.0, 10.0);
  const auto pam = audit_bounds(BinaryPam{1.0}, p, {1, 2, 4}, cfg);
  for (const auto& e : pam.entries) CHECK(e.has_sandwich);
  const auto gauss = audit_bounds(Gaussian{1.0}, p, {1, 2, 4}, cfg);
  for (const auto& e : gauss.entries) CHECK_FALSE(e.has_sandwich);
}

TEST_CASE("mixture at a = 0 matches the Gaussian bound bit for bit") {
  const auto p = ChannelParams::from_db(10.0, 10.0);
  for (int n : {1, 3, 10, 64}) {
    CHECK(chernoff_avg_error(GaussianMixture{0.0}, n, p) ==
          chernoff_avg_error(Gaussian{2.0}, n, p));
  }
}

TEST_CASE("distribution_name") {
  CHECK(distribution_name(BinaryPam{1.0}) == "binary_pam(A=1)");
  CHECK(distribution_name(Gaussian{1.0}) == "gaussian(var=1)");
  CHECK(distribution_name(GaussianMixture{0.5}) == "mixture(a=0.5)");
  CHECK(distribution_name(SignedChi{3}) == "signed_chi(k=3)");
}
