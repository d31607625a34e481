#include <cmath>
#include <random>

#include "doctest.h"
#include "gspnorm/constants.hpp"
#include "gspnorm/error.hpp"
#include "gspnorm/whittaker.hpp"

using namespace gspnorm;
using namespace gspnorm::constants;

namespace {

constexpr double pi = 3.14159265358979323846;

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

std::vector<PlaceSpec> sample_places() {
  std::vector<PlaceSpec> v;
  for (long q : {2L, 3L, 5L, 7L, 9L})
    for (long c : {0L, 1L, 2L}) {
      v.push_back(Unramified{q, c, cplx(0.0, 0.3), 0.1});
      v.push_back(IIa{q, c, 1, cplx(0.2, 0.0)});
    }
  for (int l1 = 2; l1 <= 7; ++l1)
    for (int l2 = 1 - l1; l2 <= 0; ++l2)
      if ((l1 - l2) % 2 == 0) {
        v.push_back(DS{l1, l2, false});
        v.push_back(DS{l1, l2, true});
      }
  v.push_back(PS{0.0, 0.0, 0});
  v.push_back(PS{cplx(0.0, 0.3), cplx(0.0, 0.1), 1});
  return v;
}

}  // namespace

TEST_CASE("Constants table entries") {
  const PiRational ds = c_constant(DS{3, -1, false});
  CHECK(ds.coeff == Rational(512, 5));
  CHECK(ds.pi_power == 15);
  CHECK(c_constant(IIa{2, 0, 0, 0.0}).coeff == Rational(2, 5));
  CHECK(c_constant(IIa{2, 0, 0, 0.0}).pi_power == 0);
  CHECK(c_constant(PS{}).coeff == Rational(1, 16));
  CHECK(c_constant(Unramified{3, 1, 0.0, 0.0}).coeff == Rational(1, 243));
  CHECK(c_constant(Unramified{3, 0, 0.0, 0.0}).coeff == 1);
  CHECK(rel(ds.value(), 512.0 / 5.0 * std::pow(pi, 15)) < 1e-14);
}

TEST_CASE("Theorem table equals the composed table") {
  for (const auto& p : sample_places()) {
    CAPTURE(describe(p));
    const PiRational c = c_constant(p);
    const PiRational cp = c_prime_constant(p);
    CHECK(c.coeff == cp.coeff);
    CHECK(c.pi_power == cp.pi_power);
  }
}

TEST_CASE("Place validation") {
  CHECK_THROWS_AS(validate(DS{3, 0, false}), DomainError);
  CHECK_THROWS_AS(validate(DS{3, -3, false}), DomainError);
  CHECK_THROWS_AS(validate(IIa{2, 0, 0, 0.6}), DomainError);
  CHECK_THROWS_AS(validate(IIa{2, 0, 2, 0.0}), DomainError);
  CHECK_THROWS_AS(validate(PS{0.6, 0.5, 0}), DomainError);
  CHECK_THROWS_AS(validate(Unramified{1, 0, 0.0, 0.0}), DomainError);
  CHECK_NOTHROW(validate(PS{0.3, cplx(0.0, 2.0), 0}));
}

TEST_CASE("Global spec validation") {
  GlobalSpec g;
  CHECK_THROWS_AS(g.validate(), DomainError);
  g.places = {DS{3, -1, true}, IIa{2}, IIa{2}};
  CHECK_THROWS_AS(g.validate(), DomainError);
  g.places = {DS{3, -1, true}, PS{}};
  CHECK_THROWS_AS(g.validate(), DomainError);
  g.places = {DS{3, -1, true}, IIa{2}, IIa{3}};
  CHECK_NOTHROW(g.validate());
  g.discriminant = 0;
  CHECK_THROWS_AS(g.validate(), DomainError);
}

TEST_CASE("Completed zeta values for Q") {
  CHECK(rel(completed_zeta_q(2.0), pi / 6.0) < 1e-14);
  CHECK(rel(completed_zeta_q(4.0), pi * pi / 90.0) < 1e-14);
  GlobalSpec g;
  CHECK(rel(delta_pgsp4(g), pi * pi * pi / 540.0) < 1e-14);
  g.zeta2 = 2.0;
  g.zeta4 = 3.0;
  CHECK(delta_pgsp4(g) == 6.0);
  CHECK_THROWS_AS(completed_zeta_q(1.0), DomainError);
}

TEST_CASE("Theta Whittaker constant") {
  GlobalSpec g;
  g.places = {DS{3, -1, true}};
  const double z2 = pi / 6.0;
  const double one = whittaker_theta_constant(g);
  CHECK(rel(one, std::pow(2.0, -8) * std::pow(pi, -7.5) / (z2 * z2)) < 1e-13);

  g.places.push_back(IIa{2});
  CHECK(rel(whittaker_theta_constant(g), one / 6.0) < 1e-14);

  g.places.push_back(Unramified{5, 0, 0.0, 0.0});
  CHECK(rel(whittaker_theta_constant(g), one / 6.0) < 1e-14);

  g.discriminant = 4;
  CHECK(rel(whittaker_theta_constant(g), one / 48.0) < 1e-14);
}

TEST_CASE("Theta Whittaker constant: discrete series factor against the Whittaker module") {
  const whittaker::DSParams p{3, -1};
  const double ratio = whittaker::ds_whittaker_direct(p, {1.0, 1.0}) / whittaker::ds_normalization(p);
  GlobalSpec g;
  g.places = {DS{3, -1, false}};
  const double z2 = pi / 6.0;
  CHECK(rel(whittaker_theta_constant(g) * z2 * z2, ratio) < 1e-6);
}

TEST_CASE("Rallis assembly on the worked specs") {
  GlobalSpec g;
  g.places = {DS{3, -1, true}, IIa{2}};
  auto r = rallis_assembly_check(g);
  CHECK(r.status == Status::pass);
  CHECK(r.rel_err == 0.0);

  g.places = {PS{cplx(0.0, 0.3), cplx(0.0, 0.1), 0}, IIa{3}};
  r = rallis_assembly_check(g);
  CHECK(r.status == Status::pass);
  CHECK(r.rel_err < 1e-8);

  g.places = {DS{2, 0, false}};
  r = rallis_assembly_check(g);
  CHECK(r.status == Status::pass);
  CHECK(r.lhs.real() == std::pow(2.0, -5) / 3.0);

  g.endoscopic = false;
  CHECK_THROWS_AS(rallis_assembly_check(g), DomainError);
}

TEST_CASE("Rallis assembly on random endoscopic specs") {
  std::mt19937_64 rng(20240611);
  int ps = 0;
  for (int i = 0; i < 20; ++i) {
    const GlobalSpec g = random_endoscopic_spec(rng, 0.15);
    for (const auto& p : g.places) ps += std::holds_alternative<PS>(p);
    const auto r = rallis_assembly_check(g);
    CAPTURE(r.detail);
    CHECK(r.status == Status::pass);
  }
  CHECK(ps > 0);
}

TEST_CASE("Petersson norm") {
  GlobalSpec g;
  g.places = {DS{3, -1, false}};
  const double expected = 4.0 * (540.0 / (pi * pi * pi)) * 512.0 / 5.0 * std::pow(pi, 15);
  const double endo = petersson_norm(g, 1.0);
  CHECK(rel(endo, expected) < 1e-13);

  g.endoscopic = false;
  CHECK(petersson_norm(g, 1.0) * 2.0 == endo);

  g.endoscopic = true;
  g.places.push_back(Unramified{11, 0, 0.0, 0.0});
  CHECK(petersson_norm(g, 1.0) == endo);

  g.places.push_back(IIa{2});
  CHECK(rel(petersson_norm(g, 1.0), endo * 0.4) < 1e-14);
  CHECK(rel(petersson_norm(g, 2.5), 2.5 * endo * 0.4) < 1e-14);
}
