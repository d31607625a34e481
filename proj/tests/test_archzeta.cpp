#include <cmath>

#include "doctest.h"
#include "gspnorm/archzeta.hpp"
#include "gspnorm/error.hpp"
#include "gspnorm/special.hpp"

using namespace gspnorm;
using namespace gspnorm::archzeta;

namespace {

constexpr double pi = 3.14159265358979323846;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("Gaussian moments: closed form") {
  CHECK(f_n0_closed(0, 1.0, 1.0) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(f_n0_closed(2, 1.0, 1.0) == doctest::Approx(0.5 / (pi * pi)).epsilon(1e-14));
}

TEST_CASE("Gaussian moments: Gauss-Hermite oracle on a grid") {
  const double grid[] = {0.7, 1.0, 1.4};
  for (int n = 0; n <= 3; ++n)
    for (double a : grid)
      for (double b : grid) {
        CAPTURE(n);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(rel(f_n0_quad(n, a, b), f_n0_closed(n, a, b)) < 1e-8);
      }
  CHECK(rel(f_n0_quad(1, 1.3, 0.7), f_n0_closed(1, 1.3, 0.7)) < 1e-8);
  CHECK_THROWS_AS(f_n0_quad(7, 1.0, 1.0), DomainError);
}

TEST_CASE("Weil coefficients at the real place") {
  const auto w20 = DSWeight::from_lambda(2, 0);
  CHECK(weil_phi_ds(w20, 1.0, 1.0) == doctest::Approx(1.0 / (8.0 * pi * pi)).epsilon(1e-12));
  CHECK(weil_phi_ps(1.0, 1.0) == doctest::Approx(1.0 / 16.0).epsilon(1e-15));

  const auto w = DSWeight::from_lambda(3, -1);
  const double a = 1.2, b = 0.8;
  CHECK(rel(weil_phi_ds(w, a, b), f_n0_closed(3, a, b) * f_n0_closed(1, a, b)) < 1e-12);
  CHECK(rel(weil_phi_ds(w, a, b), weil_phi_ds(w, b, a)) < 1e-14);
  CHECK(rel(weil_phi_ds(w, a, b), weil_phi_ds(w, 1.0 / a, 1.0 / b)) < 1e-14);

  CHECK(rel(weil_phi_ps(1.5, 0.6), std::pow(f_n0_closed(0, 1.5, 0.6), 2)) < 1e-14);
  CHECK(rel(weil_phi_ps(1.5, 0.6), std::pow(f_n0_quad(0, 1.5, 0.6), 2)) < 1e-9);
}

TEST_CASE("Discrete series matrix coefficient") {
  const auto w = DSWeight::from_lambda(3, -1);
  CHECK(ds_matrix_coeff(w, 0.0, 0.0) == doctest::Approx(std::pow(2.0, -8)).epsilon(1e-15));
  CHECK(ds_matrix_coeff(w, 1.0, 0.0) < ds_matrix_coeff(w, 0.0, 0.0));

  const DSWeight w42{4, 2};
  const double direct = std::pow(2.0, -2 * 3 - 2) / (std::pow(std::cosh(0.5), 4) * std::pow(std::cosh(0.3), 2));
  CHECK(rel(ds_matrix_coeff(w42, 0.5, 0.3), direct) < 1e-14);
}

TEST_CASE("DSWeight validation") {
  CHECK_THROWS_AS(DSWeight({3, 2}).validate(), DomainError);
  CHECK_THROWS_AS(DSWeight({0, 2}).validate(), DomainError);
  CHECK_THROWS_AS(DSWeight({2, 4}).validate(), DomainError);
  CHECK_NOTHROW(DSWeight({4, 2}).validate());
}

TEST_CASE("Discrete series Rallis zeta: inner integrals") {
  const auto [q1, c1] = ds_inner_t1(4, 0.3);
  CHECK(rel(q1, c1) < 1e-10);
  CHECK(rel(c1, 0.5 / 5.0 * std::pow(1.0 + std::cosh(0.6), -5)) < 1e-14);

  const auto [q2, c2] = ds_reduced_double(DSWeight::from_lambda(3, -1));
  CHECK(rel(q2, c2) < 1e-9);
  CHECK(rel(c2, std::pow(2.0, -7) / 3.0 / 5.0) < 1e-14);
}

TEST_CASE("Discrete series Rallis zeta: assembly against closed form") {
  CHECK(ds_rallis_zeta_closed(DSWeight::from_lambda(3, -1), true) ==
        doctest::Approx(std::pow(2.0, -7) / 5.0).epsilon(1e-15));
  CHECK(ds_rallis_zeta_closed(DSWeight::from_lambda(2, 0), false) ==
        doctest::Approx(std::pow(2.0, -5) / 3.0).epsilon(1e-15));
  for (auto [l1, l2] : {std::pair{2, 0}, {3, -1}, {4, -2}})
    for (bool in_S : {false, true}) {
      CAPTURE(l1);
      CAPTURE(l2);
      const auto w = DSWeight::from_lambda(l1, l2);
      CHECK(rel(ds_rallis_zeta_assembled(w, in_S), ds_rallis_zeta_closed(w, in_S)) < 1e-8);
    }
}

TEST_CASE("Bessel norm") {
  for (cplx mu : {cplx(0.0), cplx(0.2), cplx(0.0, 0.3), cplx(0.45)}) {
    CAPTURE(mu);
    const auto [lhs, rhs] = bessel_norm(mu);
    CHECK(rel(lhs, rhs) < 1e-9);
    const auto [lhs_m, rhs_m] = bessel_norm(-mu);
    CHECK(rel(lhs_m, lhs) < 1e-12);
    CHECK(rel(rhs_m, rhs) < 1e-14);
  }
  const auto [l0, r0] = bessel_norm(0.0);
  CHECK(rel(l0, pi / 4.0) < 1e-9);
  CHECK(rel(r0, pi / 4.0) < 1e-14);
  const auto [li, ri] = bessel_norm(cplx(0.0, 0.3));
  CHECK(std::abs(li.imag()) < 1e-12);
  CHECK(li.real() > 0.0);
  CHECK_THROWS_AS(bessel_norm(PSPairing{0.6, 0.0}, 1), DomainError);
}

TEST_CASE("Principal series pairing constant") {
  CHECK(rel(ps_pairing_constant({0.0, 0.0}), 1.0 / 16.0) < 1e-8);
  CHECK(rel(ps_pairing_constant({cplx(0.0, 0.2), cplx(0.0, 0.35)}), 1.0 / 16.0) < 1e-8);
}

TEST_CASE("Gaussian integral over GL2(R)") {
  for (double s : {0.0, 0.5, 1.0, 2.0}) {
    CAPTURE(s);
    const auto [lhs, rhs] = f2o_check(s);
    CHECK(rel(lhs, rhs) < 1e-10);
  }
  CHECK(rel(f2o_check(0.5).second, 1.0 / (16.0 * pi * pi)) < 1e-14);
  double prev = f2o_check(0.0).second;
  for (int i = 1; i <= 8; ++i) {
    const double cur = f2o_check(0.25 * i).second;
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("Zonal spherical function") {
  const std::array<double, 4> id{1.0, 0.0, 0.0, 1.0};
  CHECK(rel(zonal_spherical(cplx(0.0, 0.4), 0.0, id), 1.0) < 1e-12);
  const auto [lhs, rhs] =
      zonal_product_check(cplx(0.0, 0.4), 0.0, {1.2, 0.3, -0.1, 0.9}, {0.7, 0.0, 0.5, 1.1});
  CHECK(rel(lhs, rhs) < 1e-8);
}

TEST_CASE("Zonal Mellin identity") {
  const auto [l0, r0] = zonal_mellin_check({0.0, 0.0}, 0.5);
  CHECK(rel(r0, 1.0) < 1e-14);
  CHECK(rel(l0, r0) < 1e-6);
  const auto [l1, r1] = zonal_mellin_check({cplx(0.0, 0.2), 0.0}, 0.5);
  CHECK(rel(l1, r1) < 1e-5);
}

TEST_CASE("Principal series Rallis zeta") {
  const auto r0 = ps_rallis_zeta({0.0, 0.0});
  CHECK(rel(r0.value, 1.0 / 16.0) < 1e-5);
  const double doubling = 1.0 / (special::zeta_real(2.0) * special::zeta_real(4.0));
  CHECK(rel(r0.doubling, doubling) < 1e-5);

  const PSPairing p{cplx(0.0, 0.2), cplx(0.0, 0.1)};
  const auto r1 = ps_rallis_zeta(p);
  CHECK(rel(r1.value, 1.0 / 16.0) < 1e-5);
  const cplx expected = ps_l_std(p, 1.0) * doubling;
  CHECK(rel(r1.doubling, expected) < 1e-5);
}
