#include <cmath>
#include <numbers>
#include <tuple>

#include "doctest.h"
#include "gspnorm/whittaker.hpp"

using namespace gspnorm;
using namespace gspnorm::whittaker;
constexpr double pi = std::numbers::pi;

namespace {
double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }
}  // namespace

TEST_CASE("J_n closed form at instantiated points") {
  CHECK(j_closed(0, 1.0, 0.0, 1.0) == doctest::Approx(0.5 * std::exp(-2.0 * pi)).epsilon(1e-14));
  CHECK(j_closed(1, 1.0, 1.0, 3.0) == doctest::Approx(1.5 * std::sqrt(pi) * std::exp(-6.0 * pi)).epsilon(1e-14));
}

TEST_CASE("J_n quadrature against closed form") {
  const double pts[][4] = {{0, 1.0, 0.0, 1.0}, {1, 1.0, 1.0, 3.0}, {2, 0.8, -0.3, 0.5}, {5, 1.7, -0.45, -0.1}};
  for (const auto& p : pts) {
    const int n = static_cast<int>(p[0]);
    CHECK(rel(j_quad(n, p[1], p[2], p[3]), j_closed(n, p[1], p[2], p[3])) < 1e-9);
  }
  CHECK_THROWS_AS(j_closed(0, -1.0, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(j_quad(0, 1.0, 0.5, -0.3), DomainError);
}

TEST_CASE("h_n reference values and monotone decay") {
  // Independent adaptive Gauss-Kronrod evaluations of the defining integral.
  CHECK(rel(h_fn(0, 1.0, 1.0), 1.262298898323681e-08) < 1e-11);
  CHECK(rel(h_fn(2, 1.2, 0.9), 5.469961182649070e-10) < 1e-11);
  double prev = h_fn(0, 1.0, 1.0);
  for (double a1 = 1.25; a1 <= 3.0; a1 += 0.25) {
    const double cur = h_fn(0, a1, 1.0);
    CHECK(cur < prev);
    prev = cur;
  }
}

TEST_CASE("h_n against Mellin inversion of the Gamma product") {
  // W+ = 2 a1^(l1+1) a2^l2 exp(-2 pi a2^2) h_{-l2}, so the contour evaluator inverts h_n.
  const double w0 = ds_whittaker_mb({2, 0}, {1.0, 1.0});
  CHECK(rel(w0 / (2.0 * std::exp(-2.0 * pi)), h_fn(0, 1.0, 1.0)) < 1e-6);
  const double a1 = 1.2, a2 = 0.9;
  const double w2 = ds_whittaker_mb({4, -2}, {a1, a2});
  const double h2 = w2 / (2.0 * std::pow(a1, 5) * std::pow(a2, -2) * std::exp(-2.0 * pi * a2 * a2));
  CHECK(rel(h2, h_fn(2, a1, a2)) < 1e-6);
}

TEST_CASE("Mellin transform of h_n") {
  for (auto [n, s1, s2] : {std::tuple{0, cplx(1.0), cplx(-0.5)}, std::tuple{1, cplx(2.0), cplx(-1.0)}}) {
    const auto [lhs, rhs] = h_mellin_check(n, s1, s2);
    CHECK(rel(lhs, rhs) < 1e-6);
  }
  // Gamma(-s2/2) pole as s2 -> 0 from below.
  const double a = std::abs(h_mellin_closed(0, 1.0, -0.1));
  const double b = std::abs(h_mellin_closed(0, 1.0, -0.01));
  const double c = std::abs(h_mellin_closed(0, 1.0, -0.001));
  CHECK(b > 5.0 * a);
  CHECK(c > 5.0 * b);
  CHECK_THROWS_AS(h_mellin_check(0, 1.0, 0.5), DomainError);
}

TEST_CASE("DS parameter and contour constraints") {
  CHECK_NOTHROW((DSParams{3, -1}.validate()));
  CHECK_THROWS_AS((DSParams{2, 1}.validate()), DomainError);
  CHECK_THROWS_AS((DSParams{2, -2}.validate()), DomainError);
  CHECK_THROWS_AS((DSParams{3, 0}.validate()), DomainError);
  ContourPair bad = ds_default_contours();
  bad.second.c = 0.25;
  CHECK_THROWS_AS(ds_whittaker_mb({2, 0}, {1.0, 1.0}, bad), DomainError);
  bad = ds_default_contours();
  bad.first.c = 0.3;
  bad.second.c = -1.5;
  CHECK_THROWS_AS(ds_whittaker_mb({2, 0}, {1.0, 1.0}, bad), DomainError);
}

TEST_CASE("DS direct integral reference values") {
  CHECK(rel(ds_whittaker_direct({2, 0}, {1.0, 1.0}), 4.714541805835121e-11) < 1e-11);
  CHECK(rel(ds_whittaker_direct({2, 0}, {1.0, 1.0}), 2.0 * std::exp(-2.0 * pi) * h_fn(0, 1.0, 1.0)) < 1e-14);
  CHECK(rel(ds_whittaker_direct({3, -1}, {1.0, 1.0}), 2.0 * std::exp(-2.0 * pi) * h_fn(1, 1.0, 1.0)) < 1e-14);
  CHECK(rel(ds_whittaker_direct({3, -1}, {0.8, 1.25}), 6.669208919044015e-12) < 1e-11);
}

TEST_CASE("DS Mellin-Barnes against direct integral") {
  const std::pair<DSParams, TorusPoint> pts[] = {
      {{2, 0}, {1.0, 1.0}}, {{3, -1}, {0.8, 1.25}}, {{4, -2}, {1.25, 0.8}}};
  for (const auto& [p, t] : pts) CHECK(rel(ds_whittaker_mb(p, t), ds_whittaker_direct(p, t)) < 1e-6);
}

TEST_CASE("DS contour shift") {
  ContourPair shifted = ds_default_contours();
  shifted.first.c = 2.0;
  shifted.second.c = -0.25;
  const DSParams p{3, -1};
  const TorusPoint t{1.0, 1.0};
  CHECK(rel(ds_whittaker_mb(p, t, shifted), ds_whittaker_mb(p, t)) < 1e-9);
}

TEST_CASE("DS normalization") {
  const DSParams p{3, -1};
  const double w = ds_normalization(p);
  CHECK(rel(w, ds_whittaker_mb(p, {1.0, 1.0}) / ds_prefactor(p)) < 1e-12);
  CHECK(rel(ds_whittaker_direct(p, {1.0, 1.0}) / w, ds_prefactor(p)) < 1e-6);
  CHECK(ds_normalization({2, 0}) > 0.0);
  // lambda1 -> lambda1 + 2 multiplies the integrand by 4 pi^3.
  CHECK(rel(ds_normalization({4, 0}), 4.0 * pi * pi * pi * ds_normalization({2, 0})) < 1e-9);
}

TEST_CASE("PS parameters and Weyl orbit") {
  CHECK_THROWS_AS((PSParams{0.6, 0.5}.validate()), DomainError);
  CHECK_THROWS_AS((PSParams{0.1, 0.1, 2}.validate()), DomainError);
  const PSParams p{cplx(0.2, 0.0), cplx(0.0, 0.3)};
  const auto orbit = weyl_orbit(p);
  for (std::size_t i = 0; i < orbit.size(); ++i)
    for (std::size_t j = i + 1; j < orbit.size(); ++j)
      CHECK((orbit[i].lambda1 != orbit[j].lambda1 || orbit[i].lambda2 != orbit[j].lambda2));
  const ContourPair c = ps_saddle_contours(p, {1.0, 1.0});
  CHECK(c.first.c > 0.2);
  CHECK(c.second.c > 0.1);
  ContourPair bad = ps_standard_contours(p);
  bad.first.c = 0.15;
  CHECK_THROWS_AS(ps_whittaker_mb(p, {1.0, 1.0}, bad), DomainError);
}

TEST_CASE("PS direct integral reference value") {
  // Independent adaptive double quadrature with library Bessel K.
  CHECK(rel(ps_whittaker_direct({0.2, 0.1}, {1.0, 1.0}), 2.242946186349296e-11) < 1e-10);
}

TEST_CASE("PS Mellin-Barnes against direct integral, real parameters") {
  const PSParams p{0.2, 0.1};
  const TorusPoint t{1.0, 1.0};
  const cplx mb = ps_whittaker_mb(p, t);
  CHECK(rel(mb, ps_whittaker_direct(p, t)) < 1e-5);
  CHECK(std::abs(mb.imag()) < 1e-8 * std::abs(mb));
}
