#include <doctest.h>

#include <cmath>

#include "isacregion/regions.hpp"

using namespace isacregion;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kLog2E = 1.44269504088896340736;

// Independent brute-force evaluation of the binary-input AWGN rate by
// trapezoid rule on a fine fixed grid, never touching Gauss-Hermite.
double rate_binary_awgn_trapezoid(double snr) {
  const int points = 1000001;
  const double lo = -12.0, hi = 12.0;
  const double h = (hi - lo) / (points - 1);
  double acc = 0.0;
  for (int i = 0; i < points; ++i) {
    const double x = lo + i * h;
    const double u = -2.0 * snr - 2.0 * x * std::sqrt(snr);
    const double lg = u > 0 ? u / std::log(2.0) + std::log1p(std::exp(-u)) / std::log(2.0)
                            : std::log1p(std::exp(u)) / std::log(2.0);
    const double term = std::exp(-0.5 * x * x) * (1.0 - lg);
    acc += (i == 0 || i == points - 1) ? 0.5 * term : term;
  }
  return acc * h / std::sqrt(2.0 * kPi);
}

}  // namespace

TEST_CASE("rate_binary_awgn against trapezoid oracle") {
  const QuadratureConfig cfg;
  for (double snr : {0.25, 1.0, 10.0}) {
    CHECK(rate_binary_awgn(snr, cfg) ==
          doctest::Approx(rate_binary_awgn_trapezoid(snr)).epsilon(1e-6));
  }
}

TEST_CASE("rate_binary_awgn limits and monotonicity") {
  const QuadratureConfig cfg;
  CHECK(rate_binary_awgn(1e-8, cfg) == doctest::Approx(0.0).scale(1.0).epsilon(1e-6));
  CHECK(rate_binary_awgn(1e4, cfg) == doctest::Approx(1.0).epsilon(1e-9));
  double prev = 0.0;
  for (double snr = 0.1; snr <= 100.0; snr *= 2.0) {
    const double r = rate_binary_awgn(snr, cfg);
    CHECK(r > prev);
    CHECK(r < 1.0);
    prev = r;
  }
  CHECK_THROWS_AS(rate_binary_awgn(0.0, cfg), std::domain_error);
}

TEST_CASE("corner points at reference SNRs") {
  const QuadratureConfig cfg;
  const auto p10 = ChannelParams::from_db(10.0, 10.0);
  const auto cs = corner_sensing(p10, cfg);
  const auto cc = corner_comm(p10);
  CHECK(cs.exponent == doctest::Approx(1.25 * kLog2E).epsilon(1e-12));
  CHECK(cc.rate == doctest::Approx(0.5 * std::log2(11.0)).epsilon(1e-12));
  CHECK(cc.exponent == doctest::Approx(0.5 * std::log2(3.5)).epsilon(1e-12));

  const auto p0 = ChannelParams::from_db(10.0, 0.0);
  CHECK(corner_sensing(p0, cfg).exponent == doctest::Approx(0.125 * kLog2E).epsilon(1e-12));

  const auto phuge = ChannelParams::from_db(60.0, 10.0);
  CHECK(corner_sensing(phuge, cfg).rate == doctest::Approx(1.0).epsilon(1e-9));

  const auto ptiny = ChannelParams::from_db(-100.0, 10.0);
  CHECK(corner_comm(ptiny).rate == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
}

TEST_CASE("time_sharing_segment endpoints and midpoint") {
  const RatePoint p1{2.0, 0.0}, p2{0.0, 2.0};
  const auto seg = time_sharing_segment(p1, p2, 11);
  REQUIRE(seg.grid.size() == 11);
  CHECK(seg.grid.front().point.rate == doctest::Approx(p2.rate));
  CHECK(seg.grid.front().point.exponent == doctest::Approx(p2.exponent));
  CHECK(seg.grid.back().point.rate == doctest::Approx(p1.rate));
  CHECK(seg.grid[5].point.rate == doctest::Approx(1.0));
  CHECK(seg.grid[5].point.exponent == doctest::Approx(1.0));
  CHECK_THROWS_AS(time_sharing_segment(p1, p2, 1), std::domain_error);
}

TEST_CASE("theorem1_point corner limits and trade-off direction") {
  const QuadratureConfig cfg;
  const auto p = ChannelParams::from_db(10.0, 10.0);
  const auto cc = corner_comm(p);
  const auto cs = corner_sensing(p, cfg);

  const auto at0 = theorem1_point(0.0, p, cfg);
  CHECK(at0.rate == cc.rate);  // exact, by construction
  CHECK(at0.exponent == cc.exponent);

  const auto atinf = theorem1_point(1e6, p, cfg);
  CHECK(std::abs(atinf.rate / cs.rate - 1.0) < 1e-3);
  CHECK(std::abs(atinf.exponent / cs.exponent - 1.0) < 1e-3);

  const auto at1 = theorem1_point(1.0, p, cfg);
  CHECK(at1.rate < cc.rate);
  CHECK(at1.exponent > cc.exponent);
  CHECK(at1.exponent ==
        doctest::Approx(0.5 * std::log2(1.0 + 10.0 / 8.0) + 10.0 / 36.0 * kLog2E).epsilon(1e-12));

  CHECK_THROWS_AS(theorem1_point(-0.1, p, cfg), std::domain_error);
}

TEST_CASE("theorem1 alternative rate form differs from the default") {
  // The alternative expression drops the a under the square root; it
  // fails to reach the sensing corner, which is why the other form is the
  // default.
  const QuadratureConfig cfg;
  const auto p = ChannelParams::from_db(10.0, 10.0);
  // a = 1 would be degenerate (the dropped factor equals one there).
  const double alt = theorem1_rate_printed_form(4.0, p, cfg);
  const double main_form = theorem1_point(4.0, p, cfg).rate;
  CHECK(std::abs(alt - main_form) > 1e-4);
}

TEST_CASE("signed_chi_pdf shape") {
  const QuadratureConfig cfg;
  // k = 1 is the standard normal density.
  for (double x : {-2.0, -0.5, 0.0, 0.3, 1.7}) {
    CHECK(signed_chi_pdf(x, 1) ==
          doctest::Approx(std::exp(-0.5 * x * x) / std::sqrt(2.0 * kPi)).epsilon(1e-13));
  }
  for (int k : {2, 3, 8}) {
    for (double x : {0.1, 0.9, 2.2}) {
      CHECK(signed_chi_pdf(-x, k) == doctest::Approx(signed_chi_pdf(x, k)).epsilon(1e-14));
    }
    const double hi = std::sqrt(double(k)) + 13.0;
    const double mass =
        2.0 * adaptive_integrate([k](double x) { return signed_chi_pdf(x, k); }, 0.0, hi, cfg, 32);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
    const double m2 = 2.0 * adaptive_integrate(
                                [k](double x) { return x * x * signed_chi_pdf(x, k); }, 0.0, hi, cfg, 32);
    CHECK(m2 == doctest::Approx(double(k)).epsilon(1e-9));
  }
  CHECK_THROWS_AS(signed_chi_pdf(1.0, 0), std::domain_error);
}

TEST_CASE("entropy sanity: k = 1 is Gaussian") {
  const QuadratureConfig cfg;
  for (double snr1 : {1.0, 10.0, 100.0}) {
    const double t = 1.0 / snr1;
    const double h = signed_chi_plus_noise_entropy(1, t, cfg);
    const double closed = 0.5 * std::log2(2.0 * kPi * std::exp(1.0) * (1.0 + t));
    CHECK(h == doctest::Approx(closed).epsilon(1e-6));
  }
}

TEST_CASE("theorem2_point corner and closed-form exponent") {
  const QuadratureConfig cfg;
  const auto p = ChannelParams::from_db(10.0, 10.0);
  const auto cc = corner_comm(p);
  const auto k1 = theorem2_point(1, p, cfg);
  CHECK(std::abs(k1.rate - cc.rate) < 1e-3);
  CHECK(k1.exponent == cc.exponent);  // closed form, exact

  const auto k80 = theorem2_point(80, p, cfg);
  CHECK(k80.exponent == doctest::Approx(40.0 * std::log2(1.03125)).epsilon(1e-12));
  CHECK(k80.exponent < corner_sensing(p, cfg).exponent);
  CHECK(k80.rate >= 0.0);

  CHECK_THROWS_AS(theorem2_point(0, p, cfg), std::domain_error);
}

TEST_CASE("exponent ordering between the corners") {
  const QuadratureConfig cfg;
  for (double db : {0.0, 10.0, 20.0}) {
    const auto p = ChannelParams::from_db(db, db);
    const double es = corner_sensing(p, cfg).exponent;
    const double ec = corner_comm(p).exponent;
    for (int k : {2, 5, 20, 80}) {
      const double ek = 0.5 * k * std::log2(1.0 + p.snr2 / (4.0 * k));
      CHECK(ek > ec);
      CHECK(ek < es);
    }
    for (double a : {0.1, 1.0, 10.0}) {
      const double ea = 0.5 * std::log2(1.0 + p.snr2 / (4.0 + 4.0 * a)) +
                        a * p.snr2 / (8.0 + 8.0 * a + 2.0 * p.snr2) * kLog2E;
      CHECK(ea > ec);
      CHECK(ea < es);
    }
  }
}

TEST_CASE("sweep_region monotone trade-off and validation") {
  const QuadratureConfig cfg;
  const auto p = ChannelParams::from_db(10.0, 10.0);

  SUBCASE("signed-chi sweep") {
    std::vector<double> ks;
    for (int k = 1; k <= 12; ++k) ks.push_back(k);
    const auto curve = sweep_region(Scheme::SignedChi, p, ks, cfg);
    REQUIRE(curve.grid.size() == ks.size());
    for (size_t i = 1; i < curve.grid.size(); ++i) {
      REQUIRE(curve.grid[i].converged);
      CHECK(curve.grid[i].point.exponent > curve.grid[i - 1].point.exponent);
      CHECK(curve.grid[i].point.rate <= curve.grid[i - 1].point.rate + 1e-9);
    }
  }

  SUBCASE("mixture sweep hits the comm corner at a = 0") {
    const auto curve = sweep_region(Scheme::GaussianMixture, p, {0.0, 0.5, 1.0, 4.0}, cfg);
    const auto cc = corner_comm(p);
    CHECK(curve.grid.front().point.rate == cc.rate);
    CHECK(curve.grid.front().point.exponent == cc.exponent);
    for (size_t i = 1; i < curve.grid.size(); ++i) {
      CHECK(curve.grid[i].point.exponent > curve.grid[i - 1].point.exponent);
      CHECK(curve.grid[i].point.rate < curve.grid[i - 1].point.rate);
    }
  }

  SUBCASE("timeshare sweep stays on the segment") {
    const auto curve = sweep_region(Scheme::TimeSharing, p, {0.0, 0.5, 1.0}, cfg);
    const auto cc = corner_comm(p);
    const auto cs = corner_sensing(p, cfg);
    CHECK(curve.grid.front().point.rate == doctest::Approx(cc.rate));
    CHECK(curve.grid.back().point.rate == doctest::Approx(cs.rate));
    CHECK(curve.grid[1].point.rate == doctest::Approx(0.5 * (cc.rate + cs.rate)));
  }

  SUBCASE("grid validation") {
    CHECK_THROWS_AS(sweep_region(Scheme::SignedChi, p, {}, cfg), std::domain_error);
    CHECK_THROWS_AS(sweep_region(Scheme::SignedChi, p, {2.0, 1.0}, cfg), std::domain_error);
    CHECK_THROWS_AS(sweep_region(Scheme::SignedChi, p, {1.5, 2.5}, cfg), std::domain_error);
    CHECK_THROWS_AS(sweep_region(Scheme::TimeSharing, p, {0.0, 2.0}, cfg), std::domain_error);
  }
}

TEST_CASE("default grids") {
  const auto a = default_mixture_grid();
  CHECK(a.front() == 0.0);
  CHECK(a.back() == doctest::Approx(1000.0));
  for (size_t i = 1; i < a.size(); ++i) CHECK(a[i] > a[i - 1]);
  const auto k = default_signed_chi_grid();
  CHECK(k.size() == 80);
  CHECK(k.front() == 1.0);
  CHECK(k.back() == 80.0);
}
