#include "fracheat/special.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"

using namespace fracheat;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE("special") {

TEST_CASE("gamma anchors") {
  CHECK(special::gamma_pos(0.5) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-13));
  CHECK(special::gamma_pos(1.0) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(special::gamma_pos(1.5) == doctest::Approx(0.5 * std::sqrt(kPi)).epsilon(1e-13));
  CHECK(special::gamma_pos(5.0) == doctest::Approx(24.0).epsilon(1e-13));
  // recurrence Gamma(x+1) = x Gamma(x) across the working range
  for (double x : {0.1, 0.25, 0.75, 1.3, 2.7, 9.5, 23.0, 49.0}) {
    CHECK(special::lgamma_pos(x + 1.0) ==
          doctest::Approx(special::lgamma_pos(x) + std::log(x)).epsilon(1e-13));
  }
  CHECK_THROWS(special::lgamma_pos(0.0));
  CHECK_THROWS(special::lgamma_pos(-1.0));
}

TEST_CASE("riesz constants") {
  CHECK(special::riesz_constant(1.0, 2) == doctest::Approx(1.0 / (2.0 * kPi)).epsilon(1e-13));
  CHECK(special::riesz_constant(0.5, 1) ==
        doctest::Approx(1.0 / std::sqrt(2.0 * kPi)).epsilon(1e-13));
  CHECK_THROWS(special::riesz_constant(1.5, 1));
  CHECK_THROWS(special::riesz_constant(0.0, 2));

  // convention link: kappa = (2 pi)^d C_riesz, to 1e-12 relative
  for (auto [a, d] : std::vector<std::pair<double, int>>{{0.5, 1}, {0.7, 3}, {1.0, 2}, {1.9, 2}}) {
    const double lhs = special::riesz_fourier_constant(a, d);
    const double rhs = std::pow(2.0 * kPi, d) * special::riesz_constant(a, d);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  }
}

TEST_CASE("gaussian negative moment") {
  // d=1, alpha=1/2, t=1/2: 2^{1/4} Gamma(1/4) / sqrt(2 pi)
  CHECK(special::gaussian_negative_moment(0.5, 1, 0.5) ==
        doctest::Approx(1.7200799746490391).epsilon(1e-12));
  CHECK(special::gaussian_negative_moment(0.5, 1, 1.0) ==
        doctest::Approx(1.4464090846320771).epsilon(1e-12));
  // forced t-scaling value(t) = value(1) t^{-alpha/2}
  const double v1 = special::gaussian_negative_moment(0.5, 1, 1.0);
  for (double t : {0.5, 2.0, 8.0}) {
    CHECK(special::gaussian_negative_moment(0.5, 1, t) ==
          doctest::Approx(v1 * std::pow(t, -0.25)).epsilon(1e-13));
  }
}

TEST_CASE("stable negative moment") {
  // beta = 2 coincidence with the Gaussian formula at t = 1, to 1e-10
  for (auto [a, d] : std::vector<std::pair<double, int>>{{0.5, 1}, {1.3, 2}, {0.9, 3}}) {
    CHECK(special::stable_negative_moment(a, 2.0, d) ==
          doctest::Approx(special::gaussian_negative_moment(a, d, 1.0)).epsilon(1e-10));
  }
  // Cauchy case: E|X|^{-1/2} = sqrt(2)
  CHECK(special::stable_negative_moment(0.5, 1.0, 1) ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
  // alpha >= 2 beta violates the finiteness context
  CHECK_THROWS(special::stable_negative_moment(1.9, 0.5, 2));
}

TEST_CASE("spectral constants bundle") {
  const special::SpectralConstants c = special::spectral_constants(0.5, 2.0, 1);
  CHECK(c.c_d == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(c.c_beta == doctest::Approx(1.0));  // max(1, 2^{beta/2-1}) at beta = 2
  CHECK(c.bessel_riesz_finite);
  // triple-agreement value at (1/2, 2, 1): Gamma(1/2)
  CHECK(c.bessel_riesz == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
  const special::SpectralConstants cd = special::spectral_constants(1.0, 0.75, 2);
  CHECK_FALSE(cd.bessel_riesz_finite);
  CHECK(std::isinf(cd.bessel_riesz));
  // corrected chain constant stays >= 1 below beta = 2
  CHECK(special::spectral_constants(0.5, 1.2, 1).c_beta == doctest::Approx(1.0));
}

TEST_CASE("log_mittag_series identity and small cases") {
  CHECK(special::log_mittag_series(1.0, 100.0) == doctest::Approx(100.0).epsilon(1e-15));
  CHECK(special::log_mittag_series(0.5, 4.0) >= 8.0);  // >= h x^{1/h}
  CHECK_THROWS(special::log_mittag_series(0.0, 1.0));
  CHECK_THROWS(special::log_mittag_series(0.5, -1.0));
  CHECK_THROWS(special::log_mittag_series(1.5, 1.0));
}

namespace {
// independent long-double oracle: ascending brute-force sum of x^n / (n!)^h
double brute_log_series(double h, double x) {
  const long double lx = std::log(static_cast<long double>(x));
  long double best = 0.0L;
  std::vector<long double> terms;
  for (long n = 0; n < 400000; ++n) {
    const long double l = n * lx - static_cast<long double>(h) * lgammal(n + 1.0L);
    terms.push_back(l);
    if (l > best) best = l;
    if (n > 8 && l < best - 80.0L) break;
  }
  long double s = 0.0L;
  for (long double l : terms) s += expl(l - best);
  return static_cast<double>(best + logl(s));
}
}  // namespace

TEST_CASE("log_mittag_series against a brute-force oracle") {
  struct Case {
    double h, x;
  };
  for (const Case& c : {Case{0.5, 100.0}, Case{0.25, 15.0}, Case{0.8, 6000.0},
                        Case{0.95, 20000.0}, Case{0.3, 30.0}, Case{0.05, 1.5}, Case{0.6, 800.0},
                        Case{0.5, 307.0}, Case{0.5, 330.0}, Case{0.35, 2.5}, Case{0.9, 0.3}}) {
    const special::LogSeries info = special::log_mittag_series_info(c.h, c.x);
    CHECK(info.certified);
    CHECK(info.log_sum == doctest::Approx(brute_log_series(c.h, c.x)).epsilon(1e-12));
  }
}

TEST_CASE("log_mittag_series continuity across the summation switch") {
  // x chosen so the term mode x^{1/h} straddles the summation switch: the two
  // routes must line up to the analytic local slope d(h x^{1/h})/dx = x^{1/h-1}
  const double h = 0.5;
  const special::LogSeries below = special::log_mittag_series_info(h, 307.0);
  const special::LogSeries above = special::log_mittag_series_info(h, 308.0);
  REQUIRE_FALSE(below.via_integral);
  REQUIRE(above.via_integral);
  const double slope = above.log_sum - below.log_sum;
  CHECK(slope == doctest::Approx(0.5 * (308.0 * 308.0 - 307.0 * 307.0)).epsilon(1e-4));
}

TEST_CASE("log_mittag_series lower bound on the acceptance grid") {
  int violations = 0;
  for (int i = 0; i < 20; ++i) {
    const double h = 0.05 + 0.90 * i / 19.0;
    for (int j = 0; j < 20; ++j) {
      const double x = std::pow(10.0, -1.0 + 7.0 * j / 19.0);
      const double v = special::log_mittag_series(h, x);
      const double lb = h * std::pow(x, 1.0 / h);
      if (!(v >= lb)) ++violations;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("log_mittag_series monotonicity") {
  // increasing in x; decreasing in h for x > 1
  double prev = special::log_mittag_series(0.7, 0.5);
  for (double x : {1.0, 2.0, 10.0, 100.0, 1e4}) {
    const double v = special::log_mittag_series(0.7, x);
    CHECK(v > prev);
    prev = v;
  }
  for (double x : {2.0, 50.0, 1e4}) {
    double prev_h = special::log_mittag_series(0.1, x);
    for (double h : {0.3, 0.5, 0.7, 0.9}) {
      const double v = special::log_mittag_series(h, x);
      CHECK(v < prev_h);
      prev_h = v;
    }
  }
}

TEST_CASE("log_mittag_series asymptotic regime") {
  // (h=1/2, x=1e6): log E ~ h x^2; ratio within [1, 1.05]
  const double v = special::log_mittag_series(0.5, 1e6);
  const double lb = 0.5 * 1e12;
  CHECK(v / lb >= 1.0);
  CHECK(v / lb <= 1.05);
  // no overflow up to x = 1e12
  CHECK(std::isfinite(special::log_mittag_series(0.5, 1e12)));
  CHECK(special::log_mittag_series(0.5, 1e12) == doctest::Approx(0.5e24).epsilon(1e-10));
}

}  // TEST_SUITE
