#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "gspnorm/numkit.hpp"
#include "gspnorm/special.hpp"

using namespace gspnorm;
using numkit::cplx;
using special::log_gamma;
constexpr double pi = std::numbers::pi;

TEST_CASE("log_gamma base values and poles") {
  CHECK(std::abs(log_gamma(1.0)) < 1e-15);
  CHECK(std::abs(log_gamma(0.5) - 0.5 * std::log(pi)) < 1e-15);
  CHECK(std::abs(log_gamma(6.0) - std::log(120.0)) < 1e-14);
  CHECK_THROWS_AS(log_gamma(0.0), PoleError);
  CHECK_THROWS_AS(log_gamma(-3.0), PoleError);
}

TEST_CASE("log_gamma recurrence along Im z = 3") {
  const cplx z0(0.5, 3.0);
  const cplx g0 = special::gamma(z0);
  const cplx g2 = special::gamma(z0 + 2.0);
  CHECK(std::abs(g2 - (z0 + 1.0) * z0 * g0) < 1e-12 * std::abs(g2));
}

TEST_CASE("log_gamma against reference values") {
  // Reference values from an independent 25-digit evaluation.
  struct Ref {
    cplx z, v;
  } refs[] = {{{3.7, 150.0}, {-218.6662407754050942667716, 606.5879892675877736399686}},
              {{95.0, -20.0}, {334.1603217986083404126556, -91.11942668839915386242561}},
              {{0.6, 199.0}, {-311.1402001175152943920226, 854.5249240077164511618882}},
              {{-4.3, 2.1}, {-7.954743135675226409508124, -11.71892009523355509662819}}};
  for (const auto& r : refs) {
    const cplx lg = log_gamma(r.z);
    CHECK(std::abs(lg.real() - r.v.real()) < 1e-12);
    // Principal branch: imaginary parts agree, not just modulo 2 pi.
    CHECK(std::abs(lg.imag() - r.v.imag()) < 1e-12);
  }
}

TEST_CASE("Gamma recurrence, reflection and duplication on random samples") {
  std::mt19937_64 rng(20240611);
  std::uniform_real_distribution<double> u(-14.0, 14.0);
  for (int i = 0; i < 400; ++i) {
    const cplx z(u(rng), u(rng));
    if (std::abs(z) > 20.0 || std::abs(z.imag()) < 0.1) continue;
    const cplx rec = log_gamma(z + 1.0) - log_gamma(z) - std::log(z);
    CHECK(std::abs(std::exp(rec) - 1.0) < 1e-12);
    const cplx refl = special::gamma(z) * special::gamma(1.0 - z) * std::sin(pi * z) / pi;
    CHECK(std::abs(refl - 1.0) < 1e-12);
    const cplx dup = log_gamma(z) + log_gamma(z + 0.5) - log_gamma(2.0 * z) -
                     (1.0 - 2.0 * z) * std::log(2.0) - 0.5 * std::log(pi);
    CHECK(std::abs(std::exp(dup) - 1.0) < 1e-12);
  }
}

TEST_CASE("rgamma vanishes at poles") {
  CHECK(special::rgamma(-2.0) == cplx(0.0));
  CHECK(std::abs(special::rgamma(3.0) - 0.5) < 1e-15);
}

TEST_CASE("bessel_k closed forms and symmetry") {
  CHECK(std::abs(special::bessel_k(0.5, 2.0) - std::sqrt(pi / 4.0) * std::exp(-2.0)) < 1e-16);
  const cplx a = special::bessel_k(cplx(0, 0.3), 2 * pi);
  const cplx b = special::bessel_k(cplx(0, -0.3), 2 * pi);
  CHECK(a == b);
  CHECK(std::abs(a.imag()) < 1e-12 * std::abs(a));
  CHECK_THROWS_AS(special::bessel_k(0.2, 0.0), DomainError);
}

TEST_CASE("bessel_k against quadrature of the defining integral") {
  numkit::PrecisionConfig cfg;
  cfg.target_rel_tol = 1e-14;
  const cplx nu(0.0, 0.3);
  const double x = 2 * pi;
  auto quad = numkit::integrate_halfline(
      [&](double t) { return 0.5 * std::exp(-0.5 * x * (t + 1.0 / t)) * std::pow(cplx(t), nu - 1.0); }, cfg);
  const cplx k = special::bessel_k(nu, x);
  CHECK(std::abs(k - quad.value) < 1e-10 * std::abs(k));
  // Independent 25-digit reference.
  CHECK(std::abs(k.real() - 0.0009104892047595360259969971) < 1e-15);
  CHECK(std::abs(special::bessel_k(0.45, 1e-8) - 5351.661911141814810472059) < 1e-9);
}

TEST_CASE("bessel_k is positive and increasing in real order") {
  for (double x : {0.1, 1.0, 5.0}) {
    double prev = special::bessel_k(0.0, x);
    CHECK(prev > 0.0);
    for (double nu = 0.1; nu <= 1.0; nu += 0.1) {
      const double k = special::bessel_k(nu, x);
      CHECK(k >= prev);
      prev = k;
    }
  }
}

TEST_CASE("hyp3f2_unit special cases") {
  CHECK(special::hyp3f2_unit(0.0, 0.3, 0.4, 1.1, 1.7) == cplx(1.0));
  const cplx a1(0.3, 0.1), a2(0.2, -0.4), b1(1.9, 0.2), a3(0.7, 0.5);
  const cplx gauss = special::gamma(b1) * special::gamma(b1 - a1 - a2) /
                     (special::gamma(b1 - a1) * special::gamma(b1 - a2));
  CHECK(std::abs(special::hyp3f2_unit(a1, a2, a3, b1, a3) - gauss) < 1e-13 * std::abs(gauss));
  CHECK_THROWS_AS(special::hyp3f2_unit(1.0, 1.0, 1.0, 1.5, 1.5), DomainError);
  CHECK_THROWS_AS(special::hyp3f2_unit(0.2, 0.3, 0.1, -1.0, 2.0), PoleError);
}

TEST_CASE("hyp3f2_unit at deficit 0.6 against brute-force partial sums") {
  const cplx a1(0.3, 0.2), a2(0.25, -0.1), a3(0.4, 0.3), b1(0.9, 0.1), b2(0.65, 0.3);
  const cplx s = b1 + b2 - a1 - a2 - a3;  // 0.6 + 0.3i
  // S_N = S - A N^-s + O(N^-s-1); eliminate A with N and 2N.
  const int N = 1000000;
  cplx term = 1.0, sum = 0.0, sN = 0.0;
  for (int k = 0; k < 2 * N; ++k) {
    if (k == N) sN = sum;
    sum += term;
    const double kk = k;
    term *= (a1 + kk) * (a2 + kk) * (a3 + kk) / ((b1 + kk) * (b2 + kk) * (kk + 1));
  }
  const cplx r = std::exp(s * std::log(2.0));
  const cplx brute = (r * sum - sN) / (r - 1.0);
  const cplx acc = special::hyp3f2_unit(a1, a2, a3, b1, b2);
  CHECK(std::abs(acc - brute) < 1e-9);
  // Independent 25-digit reference.
  CHECK(std::abs(acc - cplx(1.176754732976701438740778, 0.06626119764845117713714457)) < 1e-13);
}

TEST_CASE("hyp3f2_unit is real and positive for real parameters") {
  const cplx v = special::hyp3f2_unit(0.4, 0.7, 1.2, 1.5, 1.9);
  CHECK(v.imag() == 0.0);
  CHECK(v.real() > 0.0);
}

TEST_CASE("hermite polynomials") {
  CHECK(special::hermite(0, 0.3) == 1.0);
  CHECK(special::hermite(1, 0.3) == doctest::Approx(0.6));
  CHECK(special::hermite(3, 1.0) == doctest::Approx(-4.0));
  // Symbolic sixth derivative of exp(-x^2): 64x^6 - 480x^4 + 720x^2 - 120.
  const double x = 0.7;
  const double sym = 64 * std::pow(x, 6) - 480 * std::pow(x, 4) + 720 * x * x - 120;
  CHECK(std::abs(special::hermite(6, x) - sym) < 1e-12);
  const auto big = special::hermite_scaled(60, 1e6);
  CHECK(big.exponent > 0);
  // H_n(x) = (2x)^n (1 - n(n-1)/(4x^2) + O(x^-4)).
  const double expected = 60 * std::log2(2e6) + std::log2(1.0 - 60.0 * 59.0 / 4e12);
  CHECK(std::abs(std::log2(std::abs(big.mantissa)) + big.exponent - expected) < 1e-12);
  CHECK_THROWS_AS(special::hermite(61, 0.0), DomainError);
}

TEST_CASE("local zeta factors") {
  using special::LocalZetaPlace;
  CHECK(special::zeta_local(LocalZetaPlace::finite(2), 2.0) == doctest::Approx(4.0 / 3.0));
  CHECK(special::zeta_local(LocalZetaPlace::real(), 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(special::zeta_local(LocalZetaPlace::real(), 2.0) == doctest::Approx(1.0 / pi).epsilon(1e-15));
  const cplx zc = special::zeta_local(LocalZetaPlace::real(), cplx(2.0, 0.0));
  CHECK(std::abs(zc - 1.0 / pi) < 1e-15);
  for (long q : {2, 3, 5, 7})
    for (long s : {1, 2, 3, 4, -1})
      CHECK(special::zeta_local_exact(q, s) * (1 - rpow(q, -s)) == 1);
  CHECK_THROWS_AS(special::zeta_local(LocalZetaPlace::real(), 0.0), PoleError);
  CHECK_THROWS_AS(special::zeta_local_exact(3, 0), PoleError);
  CHECK_THROWS_AS(LocalZetaPlace::finite(1), DomainError);
}
