#include <cmath>
#include <numbers>

#include "doctest.h"
#include "gspnorm/numkit.hpp"
#include "gspnorm/special.hpp"

using namespace gspnorm;
using numkit::cplx;
constexpr double pi = std::numbers::pi;

TEST_CASE("half-line rule on elementary integrals") {
  numkit::PrecisionConfig cfg;
  auto r1 = numkit::integrate_halfline([](double t) { return std::exp(-t); }, cfg);
  CHECK(r1.converged);
  CHECK(r1.value == doctest::Approx(1.0).epsilon(1e-14));
  auto r2 = numkit::integrate_halfline([](double t) { return t * std::exp(-t * t); }, cfg);
  CHECK(r2.value == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("half-line rule reproduces K_{1/2}(1)") {
  numkit::PrecisionConfig cfg;
  numkit::QuadratureRule rule{numkit::RuleKind::tanh_sinh_halfline, 64, 1};
  const double x = 1.0, nu = 0.5;
  auto r = numkit::integrate_halfline(
      [&](double t) { return 0.5 * std::exp(-0.5 * x * (t + 1.0 / t)) * std::pow(t, nu - 1.0); }, rule, cfg);
  CHECK(std::abs(r.value - std::sqrt(pi / 2.0) * std::exp(-1.0)) < 1e-14);
  numkit::QuadratureRule wrong{numkit::RuleKind::gauss_legendre, 8, 1};
  CHECK_THROWS_AS(numkit::integrate_halfline([](double) { return 1.0; }, wrong, cfg), DomainError);
}

TEST_CASE("half-line rule handles endpoint singularities and algebraic tails") {
  numkit::PrecisionConfig cfg;
  // int_0^inf t^-1/2 e^-t = sqrt(pi); int_0^inf (1+t)^-2 = 1.
  auto r1 = numkit::integrate_halfline([](double t) { return std::exp(-t) / std::sqrt(t); }, cfg);
  CHECK(std::abs(r1.value - std::sqrt(pi)) < 1e-13);
  auto r2 = numkit::integrate_halfline([](double t) { return 1.0 / ((1 + t) * (1 + t)); }, cfg);
  CHECK(std::abs(r2.value - 1.0) < 1e-13);
}

TEST_CASE("one more halving stays within the reported error") {
  numkit::PrecisionConfig loose;
  loose.target_rel_tol = 1e-6;
  numkit::PrecisionConfig tight;
  tight.target_rel_tol = 1e-14;
  auto f = [](double t) { return std::cos(t) * std::exp(-t * t / 3.0) * std::pow(t, 0.3); };
  auto a = numkit::integrate_halfline(f, loose);
  auto b = numkit::integrate_halfline(f, tight);
  CHECK(a.converged);
  CHECK(std::abs(a.value - b.value) <= a.error);
}

TEST_CASE("line and interval rules") {
  numkit::PrecisionConfig cfg;
  auto r = numkit::integrate_line([](double x) { return 1.0 / (1.0 + x * x); }, cfg);
  CHECK(std::abs(r.value - pi) < 1e-13);
  auto s = numkit::integrate_interval([](double x) { return std::sqrt(1.0 - x * x); }, -1.0, 1.0, cfg);
  CHECK(std::abs(s.value - pi / 2) < 1e-13);
  auto t = numkit::integrate_interval([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, cfg);
  CHECK(std::abs(t.value - 2.0) < 1e-13);
}

TEST_CASE("extended summation agrees with double mode") {
  numkit::PrecisionConfig d, e;
  e.mode = numkit::WorkingMode::extended;
  auto f = [](double t) { return std::exp(-t) * std::sin(3 * t); };
  auto a = numkit::integrate_halfline(f, d);
  auto b = numkit::integrate_halfline(f, e);
  CHECK(std::abs(a.value - 0.3) < 1e-14);
  CHECK(std::abs(b.value - 0.3) < 1e-14);

  numkit::DoubleDouble dd;
  dd.add(1.0);
  for (int i = 0; i < 1000; ++i) dd.add(1e-17);
  CHECK(dd.hi + dd.lo - 1.0 == doctest::Approx(1e-14).epsilon(1e-6));
}

TEST_CASE("Gauss-Hermite exactness up to degree 2 order - 1") {
  for (int order = 1; order <= 24; ++order) {
    const auto rule = numkit::gauss_hermite(order);
    for (int deg = 0; deg <= 2 * order - 1; ++deg) {
      double acc = 0.0, mass = 0.0;
      for (const auto& nd : rule) {
        acc += nd.w * std::pow(nd.x, deg);
        mass += nd.w * std::pow(std::abs(nd.x), deg);
      }
      const double exact = (deg % 2 == 1) ? 0.0 : std::tgamma(0.5 * deg + 0.5);
      CHECK(std::abs(acc - exact) <= 1e-13 * mass);
    }
  }
}

TEST_CASE("Gauss-Legendre exactness") {
  for (int order = 1; order <= 40; order += 3) {
    const auto rule = numkit::gauss_legendre(order);
    for (int deg = 0; deg <= 2 * order - 1; ++deg) {
      double acc = 0.0;
      for (const auto& nd : rule) acc += nd.w * std::pow(nd.x, deg);
      const double exact = (deg % 2 == 1) ? 0.0 : 2.0 / (deg + 1);
      CHECK(std::abs(acc - exact) < 1e-13);
    }
  }
}

TEST_CASE("tensor Gauss-Hermite") {
  auto one = numkit::integrate_tensor_hermite([](const double*) { return 1.0; }, 4, 1);
  CHECK(one == doctest::Approx(std::sqrt(pi)).epsilon(1e-15));
  auto xy = numkit::integrate_tensor_hermite([](const double* x) { return x[0] * x[0] * x[1] * x[1]; }, 4, 2);
  CHECK(xy == doctest::Approx(pi / 4).epsilon(1e-14));
  // Wick: each coordinate has variance 1/2, so E[L^4] = 3 (|c|^2 / 2)^2.
  const double c[4] = {1.0, 2.0, -1.0, 0.5};
  auto quartic = numkit::integrate_tensor_hermite(
      [&](const double* x) {
        double l = c[0] * x[0] + c[1] * x[1] + c[2] * x[2] + c[3] * x[3];
        return l * l * l * l;
      },
      3, 4);
  const double norm2 = 1 + 4 + 1 + 0.25;
  CHECK(quartic == doctest::Approx(pi * pi * 3.0 * (norm2 / 2) * (norm2 / 2)).epsilon(1e-13));
  CHECK_THROWS_AS(numkit::integrate_tensor_hermite([](const double*) { return 1.0; }, 3, 5), DomainError);
}

TEST_CASE("Cahen-Mellin inversion on a vertical line") {
  numkit::PrecisionConfig cfg;
  for (double x : {1.0, 2.0}) {
    auto g = [x](cplx s) { return special::gamma(s) * std::exp(-s * std::log(x)); };
    numkit::ContourSpec spec{1.0, 0.0, 256};
    auto r = numkit::contour_line(g, spec, cfg);
    CHECK(r.converged);
    CHECK(std::abs(r.value - std::exp(-x)) < 1e-11);
    CHECK(std::abs(r.value.imag()) < 1e-13);
    spec.c = 2.0;
    auto shifted = numkit::contour_line(g, spec, cfg);
    CHECK(std::abs(shifted.value - r.value) < 1e-11);
  }
  numkit::ContourSpec bad{1.0, 10.0, 32};
  CHECK_THROWS_AS(numkit::contour_line([](cplx) { return cplx(0); }, bad, cfg), DomainError);
}

TEST_CASE("contour tail is flagged when the height is too small") {
  numkit::PrecisionConfig cfg;
  auto g = [](cplx s) { return special::gamma(s); };
  auto r = numkit::contour_line(g, numkit::ContourSpec{1.0, 2.0, 64}, cfg);
  CHECK(r.tail_flagged);
}

TEST_CASE("evaluation is deterministic and thread count does not matter") {
  numkit::PrecisionConfig cfg;
  auto f = [](double t) { return std::exp(-t) * std::log1p(t); };
  auto a = numkit::integrate_halfline(f, cfg);
  auto b = numkit::integrate_halfline(f, cfg);
  CHECK(a.value == b.value);

  std::vector<double> out1(100), out4(100);
  numkit::parallel_for(100, 1, [&](std::size_t i) { out1[i] = std::sin(double(i)); });
  numkit::parallel_for(100, 4, [&](std::size_t i) { out4[i] = std::sin(double(i)); });
  CHECK(out1 == out4);
}
