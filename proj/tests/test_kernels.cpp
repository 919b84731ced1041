#include "fracheat/kernels.hpp"

#include <cmath>
#include <vector>

#include "doctest.h"
#include "fracheat/quad.hpp"
#include "fracheat/rng.hpp"
#include "fracheat/special.hpp"

using namespace fracheat;
using quad::Options;
using quad::QuadResult;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE("kernels") {

TEST_CASE("heat kernel closed forms") {
  CHECK(kernels::heat_kernel_point(2.0, 1, 1.0, 0.0) ==
        doctest::Approx(1.0 / std::sqrt(4.0 * kPi)).epsilon(1e-13));
  CHECK(kernels::heat_kernel_point(1.0, 1, 1.0, 0.0) == doctest::Approx(1.0 / kPi).epsilon(1e-13));
  // beta = 1.5 at the origin: Gamma(1 + 2/3) / pi, and against a direct quadrature
  const double v = kernels::heat_kernel_point(1.5, 1, 1.0, 0.0, Options{1e-9, 1 << 16});
  CHECK(v == doctest::Approx(0.28735275145216445).epsilon(1e-7));
  const QuadResult direct = quad::integrate_semi_infinite(
      [](double xi) { return std::exp(-std::pow(xi, 1.5)); }, Options{1e-10, 1 << 16});
  CHECK(v == doctest::Approx(direct.value / kPi).epsilon(1e-6));
  CHECK_THROWS(kernels::heat_kernel_point(1.5, 2, 1.0, 0.0));
}

TEST_CASE("heat kernel normalization") {
  for (double t : {0.5, 1.0, 2.0}) {
    for (double beta : {1.0, 2.0}) {
      Options opt{1e-10, 1 << 16};
      auto g = [&](double r) { return kernels::heat_kernel_point(beta, 1, t, r, opt); };
      const QuadResult norm = quad::radial_spectral(g, 1.0, 1, Options{1e-7, 1 << 17});
      CHECK(norm.value == doctest::Approx(1.0).epsilon(1e-6));
    }
    // beta = 1.5 goes through the cosine transform, whose absolute error at
    // radius r costs O(r^2) after the semi-infinite map; integrate octaves out
    // to where the true tail mass (~0.4 t R^{-3/2}) is below the tolerance
    Options kopt{1e-10, 1 << 16};
    auto g = [&](double r) { return kernels::heat_kernel_point(1.5, 1, t, r, kopt); };
    double total = quad::integrate_1d(g, 0.0, 64.0, Options{1e-8, 1 << 16}).value;
    for (double edge = 64.0; edge < 16384.0; edge *= 2.0)
      total += quad::integrate_1d(g, edge, 2.0 * edge, Options{1e-9, 64}).value;
    CHECK(2.0 * total == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("heat kernel Chapman-Kolmogorov at beta = 2") {
  const double s = 0.4, t = 0.9;
  Options inner{1e-10, 1 << 14};
  for (double x : {0.0, 0.5, 1.7}) {
    auto f = [&](double y) {
      return kernels::heat_kernel_point(2.0, 1, s, y) * kernels::heat_kernel_point(2.0, 1, t, x - y);
    };
    const QuadResult pos = quad::integrate_semi_infinite([&](double y) { return f(y); }, inner);
    const QuadResult neg = quad::integrate_semi_infinite([&](double y) { return f(-y); }, inner);
    CHECK(pos.value + neg.value ==
          doctest::Approx(kernels::heat_kernel_point(2.0, 1, s + t, x)).epsilon(1e-6));
  }
}

TEST_CASE("bessel kernel closed forms at beta = 2, d = 1") {
  // G_{1,2}(x) = e^{-|x|}/2
  const kernels::BesselValue at0 = kernels::bessel_kernel_point(2.0, 1, 0.0);
  CHECK(at0.finite);
  CHECK(at0.value == doctest::Approx(0.5).epsilon(1e-8));
  const kernels::BesselValue at1 = kernels::bessel_kernel_point(2.0, 1, 1.0);
  CHECK(at1.value == doctest::Approx(0.5 * std::exp(-1.0)).epsilon(1e-8));
  // divergence flag at the origin for beta <= d
  const kernels::BesselValue div = kernels::bessel_kernel_point(0.5, 1, 0.0);
  CHECK_FALSE(div.finite);
  CHECK(std::isinf(div.value));
}

TEST_CASE("bessel kernel is a density") {
  for (double beta : {0.5, 1.0, 2.0}) {
    Options kopt{1e-9, 1 << 14};
    auto g = [&](double r) { return kernels::bessel_kernel_point(beta, 1, r, kopt).value; };
    std::optional<quad::SingularWeight> w;  // kernel blowup r^{beta-1} below order 1
    if (beta < 1.0) w = quad::SingularWeight{beta - 1.0, quad::SingularAt::Origin};
    const QuadResult norm = quad::integrate_semi_infinite(g, Options{1e-7, 1 << 17}, w);
    CHECK(2.0 * norm.value == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("parseval identity for Gaussian pairs") {
  {
    const kernels::ParsevalReport r = kernels::verify_parseval(1.0, 1.0, 0.5, 1);
    CHECK(r.rel_gap < 1e-5);
    // spectral side equals E|Z|^{-1/2} for Z ~ N(0, 4)
    CHECK(r.rhs == doctest::Approx(special::gaussian_negative_moment(0.5, 1, 2.0)).epsilon(1e-7));
  }
  {
    const kernels::ParsevalReport r = kernels::verify_parseval(1.0, 2.0, 1.0, 2);
    CHECK(r.rel_gap < 1e-4);
    CHECK(r.lhs == doctest::Approx(0.51166335397324424).epsilon(1e-6));
  }
  {
    // stress case near alpha = d
    const kernels::ParsevalReport r =
        kernels::verify_parseval(1.0, 1.0, 0.95, 1, Options{1e-7, 1 << 18});
    CHECK(r.rel_gap < 1e-3);
  }
  {
    // d = 3: the identity recovers the Riesz constant there as well
    const kernels::ParsevalReport r = kernels::verify_parseval(1.0, 1.0, 0.7, 3);
    CHECK(r.rel_gap < 1e-5);
    CHECK(r.rhs == doctest::Approx(special::gaussian_negative_moment(0.7, 3, 2.0)).epsilon(1e-7));
  }
}

TEST_CASE("identity1: triple agreement and the convention ledger") {
  {
    const kernels::Identity1Report r = kernels::verify_identity1(0.5, 2.0, 1);
    REQUIRE(r.finite);
    CHECK(r.rel_gap < 1e-5);
    // all three watch values equal Gamma(1/2) = sqrt(pi)
    CHECK(r.lhs == doctest::Approx(std::sqrt(kPi)).epsilon(1e-5));
    CHECK(r.rhs == doctest::Approx(std::sqrt(kPi)).epsilon(1e-6));
    CHECK(r.closed_form == doctest::Approx(std::sqrt(kPi)).epsilon(1e-12));
    // raw spectral integral carries no (2 pi)^d factor
    CHECK(r.raw_spectral == doctest::Approx(std::sqrt(2.0) * kPi).epsilon(1e-6));
    CHECK(r.display_variant == doctest::Approx(2.0 * kPi * std::sqrt(kPi)).epsilon(1e-9));
    CHECK(r.validated_constant ==
          doctest::Approx(special::riesz_constant(0.5, 1)).epsilon(1e-12));
  }
  {
    const kernels::Identity1Report r = kernels::verify_identity1(0.5, 0.75, 1);
    REQUIRE(r.finite);
    CHECK(r.rel_gap < 1e-4);
    CHECK(r.rhs == doctest::Approx(4.5971123978055257).epsilon(1e-5));
  }
  {
    const kernels::Identity1Report r = kernels::verify_identity1(1.0, 1.5, 2);
    REQUIRE(r.finite);
    CHECK(r.rel_gap < 1e-4);
    CHECK(r.rhs == doctest::Approx(2.6220575542921198).epsilon(1e-5));
  }
  {
    // alpha = beta: both sides diverge and are flagged
    const kernels::Identity1Report r = kernels::verify_identity1(1.0, 1.0, 2);
    CHECK_FALSE(r.finite);
    CHECK(r.lhs_diverged);
    CHECK(r.rhs_diverged);
  }
}

TEST_CASE("identity2: shifted spectral identity, d = 1") {
  const kernels::Identity1Report base = kernels::verify_identity1(0.5, 2.0, 1);
  {
    // a = 0 reduces to identity1
    const kernels::Identity2Report r = kernels::verify_identity2(0.5, 2.0, 1, 0.0);
    CHECK(r.lhs == doctest::Approx(base.lhs).epsilon(1e-6));
    CHECK(r.rhs == doctest::Approx(base.rhs).epsilon(1e-9));
  }
  double rhs0 = 0.0;
  for (double a : {0.0, 1.0, 5.0}) {
    const kernels::Identity2Report r = kernels::verify_identity2(0.5, 2.0, 1, a);
    CHECK(r.rel_gap < 1e-4);
    CHECK(std::fabs(r.imag_residual) < 1e-8);
    if (a == 0.0) rhs0 = r.rhs;
    // supremum of the shifted integral sits at a = 0
    CHECK(r.rhs <= rhs0 * (1.0 + 1e-9));
  }
  {
    const kernels::Identity2Report r = kernels::verify_identity2(0.3, 1.2, 1, 2.0);
    CHECK(r.rel_gap < 1e-4);
  }
}

TEST_CASE("pointwise bound (1+u^2)^{beta/2} <= c_beta (1+u^beta)") {
  rng::Stream stream(5, 1);
  for (int i = 0; i < 5000; ++i) {
    const double beta = 0.05 + 1.95 * stream.uniform01();
    const double u = std::exp(8.0 * (stream.uniform01() - 0.5));
    const double cb = std::max(1.0, std::exp2(0.5 * beta - 1.0));
    CHECK(std::pow(1.0 + u * u, 0.5 * beta) <= cb * (1.0 + std::pow(u, beta)) * (1.0 + 1e-12));
  }
}

TEST_CASE("elementary inequality on the (t, eta) grid") {
  const std::vector<double> ts{0.1, 1.0, 10.0};
  const std::vector<double> etas{0.0, 1.0, 10.0};
  for (auto [alpha, beta] : {std::pair{0.5, 2.0}, std::pair{0.5, 1.2}}) {
    const kernels::ElemIneqReport rep = kernels::verify_elem_ineq(alpha, beta, 1, ts, etas);
    CHECK(rep.all_ok);
    CHECK(rep.points.size() == 9);
    // scaling: t^{alpha/beta} lhs(t, 0) is constant (change of variables)
    double cmin = 1e300, cmax = 0.0;
    for (const auto& pt : rep.points) {
      if (pt.eta != 0.0) continue;
      const double v = pt.lhs * std::pow(pt.t, alpha / beta);
      cmin = std::min(cmin, v);
      cmax = std::max(cmax, v);
    }
    CHECK((cmax - cmin) / cmax < 1e-3);
    // decay in eta at fixed t
    double lhs_eta0 = 0, lhs_eta10 = 0;
    for (const auto& pt : rep.points)
      if (pt.t == 1.0) {
        if (pt.eta == 0.0) lhs_eta0 = pt.lhs;
        if (pt.eta == 10.0) lhs_eta10 = pt.lhs;
      }
    CHECK(lhs_eta10 < lhs_eta0);
  }
  // at eta = 0 the scaled lhs equals 2 Gamma(alpha/beta)/beta exactly
  const std::vector<double> t1{1.0}, e0{0.0};
  const kernels::ElemIneqReport rep = kernels::verify_elem_ineq(0.5, 2.0, 1, t1, e0);
  CHECK(rep.points[0].lhs == doctest::Approx(special::gamma_pos(0.25)).epsilon(1e-7));
}

TEST_CASE("bessel semigroup under convolution") {
  {
    const kernels::SemigroupReport r = kernels::verify_semigroup(1.0, 1.0);
    CHECK(r.max_gap < 1e-4);
    for (std::size_t i = 0; i < r.xs.size(); ++i)
      CHECK(r.direct[i] == doctest::Approx(0.5 * std::exp(-r.xs[i])).epsilon(1e-7));
  }
  {
    const kernels::SemigroupReport r = kernels::verify_semigroup(2.0, 2.0);
    CHECK(r.max_gap < 1e-4);
    // closed form of the order-4 kernel: (1+|x|) e^{-|x|}/4
    for (std::size_t i = 0; i < r.xs.size(); ++i)
      CHECK(r.direct[i] ==
            doctest::Approx(0.25 * (1.0 + r.xs[i]) * std::exp(-r.xs[i])).epsilon(1e-7));
  }
  {
    const kernels::SemigroupReport r = kernels::verify_semigroup(0.5, 0.5);
    CHECK(r.max_gap < 1e-3);
  }
}

TEST_CASE("dalang integral finiteness dichotomy") {
  {
    const kernels::DalangResult r = kernels::dalang_integral(2.0, 1.0, 2);
    CHECK_FALSE(r.divergent);
    // closed form: C_riesz(1,2) c_2 int (1+r^2)^{-1} dr = pi/2
    CHECK(r.integral.value == doctest::Approx(0.5 * kPi).epsilon(1e-7));
    const kernels::Identity1Report id = kernels::verify_identity1(1.0, 2.0, 2);
    CHECK(r.integral.value == doctest::Approx(id.rhs).epsilon(1e-6));
  }
  {
    const kernels::DalangResult r = kernels::dalang_integral(1.0, 1.0, 2);
    CHECK(r.divergent);
  }
  {
    // near the alpha < d boundary: finite but large, needs the bigger budget
    const kernels::DalangResult r = kernels::dalang_integral(2.0, 1.99, 2, Options{1e-6, 1 << 18});
    CHECK_FALSE(r.divergent);
    CHECK(r.integral.value > 10.0);
    CHECK(r.integral.converged);
  }
}

}  // TEST_SUITE
