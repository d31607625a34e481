#include "gspnorm/constants.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <boost/math/special_functions/zeta.hpp>

#include "gspnorm/archzeta.hpp"
#include "gspnorm/error.hpp"
#include "gspnorm/padic.hpp"
#include "gspnorm/special.hpp"
#include "gspnorm/whittaker.hpp"

namespace gspnorm::constants {

namespace {

constexpr double pi = 3.14159265358979323846;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

Rational zeta_v(long q, long s) { return special::zeta_local_exact(q, s); }

void check_unitary_pair(cplx l1, cplx l2, const char* what) {
  if (!(std::abs(l1.real()) + std::abs(l2.real()) < 1.0))
    throw DomainError(std::string(what) + ": need |Re lambda1| + |Re lambda2| < 1");
}

std::string cstr(cplx z) {
  char buf[64];
  if (z.imag() == 0.0)
    std::snprintf(buf, sizeof buf, "%g", z.real());
  else
    std::snprintf(buf, sizeof buf, "%g%+gi", z.real(), z.imag());
  return buf;
}

long finite_q(const PlaceSpec& p) {
  if (auto u = std::get_if<Unramified>(&p)) return u->q;
  if (auto f = std::get_if<IIa>(&p)) return f->q;
  return 0;
}

long finite_c(const PlaceSpec& p) {
  if (auto u = std::get_if<Unramified>(&p)) return u->c;
  if (auto f = std::get_if<IIa>(&p)) return f->c;
  return 0;
}

}  // namespace

void validate(const PlaceSpec& p) {
  std::visit(overloaded{
                 [](const Unramified& u) {
                   padic::FinitePlace{u.q, u.c}.validate();
                   check_unitary_pair(u.lambda1, u.lambda2, "unramified place");
                 },
                 [](const IIa& f) {
                   padic::FinitePlace{f.q, f.c}.validate();
                   padic::IIaParams{f.epsilon, f.lambda}.validate();
                 },
                 [](const DS& d) { whittaker::DSParams{d.lambda1, d.lambda2}.validate(); },
                 [](const PS& s) { whittaker::PSParams{s.lambda1, s.lambda2, s.epsilon}.validate(); },
             },
             p);
}

std::string describe(const PlaceSpec& p) {
  return std::visit(
      overloaded{
          [](const Unramified& u) { return "unramified(q=" + std::to_string(u.q) + ",c=" + std::to_string(u.c) + ")"; },
          [](const IIa& f) {
            return "IIa(q=" + std::to_string(f.q) + ",c=" + std::to_string(f.c) + ",eps=" + std::to_string(f.epsilon) +
                   ",lambda=" + cstr(f.lambda) + ")";
          },
          [](const DS& d) {
            return "DS(" + std::to_string(d.lambda1) + "," + std::to_string(d.lambda2) + (d.in_S ? ",in_S)" : ")");
          },
          [](const PS& s) { return "PS(" + cstr(s.lambda1) + "," + cstr(s.lambda2) + ")"; },
      },
      p);
}

bool is_real_place(const PlaceSpec& p) { return std::holds_alternative<DS>(p) || std::holds_alternative<PS>(p); }

bool is_halving(const PlaceSpec& p) {
  if (std::holds_alternative<IIa>(p)) return true;
  if (auto d = std::get_if<DS>(&p)) return d->in_S;
  return false;
}

double PiRational::value() const { return to_double(coeff) * std::pow(pi, static_cast<double>(pi_power)); }

std::string PiRational::str() const {
  std::string s = to_string(coeff);
  if (pi_power != 0) s += " * pi^" + std::to_string(pi_power);
  return s;
}

// ---------------------------------------------------------------------------

PiRational c_constant(const PlaceSpec& p) {
  validate(p);
  return std::visit(overloaded{
                        [](const Unramified& u) { return PiRational{rpow(u.q, -5 * u.c)}; },
                        [](const IIa& f) {
                          return PiRational{rpow(f.q, -1 - 5 * f.c) / zeta_v(f.q, 2) * zeta_v(f.q, 4)};
                        },
                        [](const DS& d) {
                          const long k = d.lambda1 - d.lambda2;
                          return PiRational{rpow(2, k + 5) / (1 + k), 3L * d.lambda1 - d.lambda2 + 5};
                        },
                        [](const PS&) { return PiRational{Rational(1, 16)}; },
                    },
                    p);
}

PiRational rallis_place_factor(const PlaceSpec& p) {
  validate(p);
  return std::visit(overloaded{
                        [](const Unramified&) { return PiRational{}; },
                        [](const IIa& f) {
                          const Rational z1 = zeta_v(f.q, 1);
                          return PiRational{rpow(f.q, -3) / (z1 * z1) * zeta_v(f.q, 2) * zeta_v(f.q, 4)};
                        },
                        [](const DS& d) {
                          return PiRational{rpow(2, -d.lambda1 - d.lambda2 - 3) / (1 + d.lambda1 - d.lambda2)};
                        },
                        [](const PS&) { return PiRational{Rational(1, 16)}; },
                    },
                    p);
}

PiRational whittaker_place_factor_sq(const PlaceSpec& p) {
  validate(p);
  return std::visit(overloaded{
                        [](const Unramified&) { return PiRational{}; },
                        [](const IIa& f) { return PiRational{Rational(1) / ((1 + f.q) * (1 + f.q))}; },
                        [](const DS& d) {
                          return PiRational{rpow(2, -2 * d.lambda1 - 8), -3L * d.lambda1 + d.lambda2 - 5};
                        },
                        [](const PS&) { return PiRational{}; },
                    },
                    p);
}

PiRational c_prime_constant(const PlaceSpec& p) {
  PiRational c = rallis_place_factor(p) / whittaker_place_factor_sq(p);
  if (!is_real_place(p)) c.coeff *= rpow(finite_q(p), -5 * finite_c(p));
  return c;
}

Rational finite_whittaker_value(const PlaceSpec& p) {
  validate(p);
  if (auto u = std::get_if<Unramified>(&p)) return rpow(u->q, u->c);
  if (auto f = std::get_if<IIa>(&p)) return rpow(f->q, f->c) / (1 + f->q);
  throw DomainError("finite_whittaker_value: real place");
}

// ---------------------------------------------------------------------------

void GlobalSpec::validate() const {
  int real = 0;
  std::set<long> iia_q;
  for (const auto& p : places) {
    constants::validate(p);
    if (is_real_place(p)) ++real;
    if (auto f = std::get_if<IIa>(&p))
      if (!iia_q.insert(f->q).second) throw DomainError("global spec: two IIa places with q = " + std::to_string(f->q));
  }
  if (real != real_places)
    throw DomainError("global spec: " + std::to_string(real) + " real-place entries for " +
                      std::to_string(real_places) + " archimedean slots");
  if (discriminant <= 0) throw DomainError("global spec: discriminant must be positive");
  if (zeta2 && !(*zeta2 > 0.0)) throw DomainError("global spec: zeta(2) must be positive");
  if (zeta4 && !(*zeta4 > 0.0)) throw DomainError("global spec: zeta(4) must be positive");
}

double completed_zeta_q(double s) {
  if (!(s > 1.0)) throw DomainError("completed_zeta_q: need s > 1");
  return special::zeta_real(s) * boost::math::zeta(s);
}

double GlobalSpec::zeta2_value() const { return zeta2 ? *zeta2 : completed_zeta_q(2.0); }
double GlobalSpec::zeta4_value() const { return zeta4 ? *zeta4 : completed_zeta_q(4.0); }

double delta_pgsp4(const GlobalSpec& g) { return g.zeta2_value() * g.zeta4_value(); }

double whittaker_theta_constant(const GlobalSpec& g) {
  g.validate();
  int halvings = 0;
  double prod = 1.0;
  for (const auto& p : g.places) {
    if (is_halving(p)) ++halvings;
    if (auto d = std::get_if<DS>(&p)) {
      prod *= std::pow(2.0, -d->lambda1 - 4) * std::pow(pi, 0.5 * (-3 * d->lambda1 + d->lambda2 - 5));
    } else if (!is_real_place(p)) {
      prod *= to_double(finite_whittaker_value(p) * rpow(finite_q(p), -finite_c(p)));
    }
  }
  const double z2 = g.zeta2_value();
  return std::ldexp(prod, -halvings) * std::pow(to_double(g.discriminant), -1.5) / (z2 * z2);
}

CheckReport rallis_assembly_check(const GlobalSpec& g, const PrecisionConfig& cfg, double tol) {
  g.validate();
  if (!g.endoscopic) throw DomainError("rallis_assembly_check: needs an endoscopic spec");

  // Exact factors on both sides; principal series places enter numerically on the left.
  Rational lhs_exact{1};
  Rational rhs_exact{1};
  cplx lhs_ps = 1.0;
  long halvings = 0;
  std::string trail;
  for (const auto& p : g.places) {
    if (is_halving(p)) ++halvings;
    const PiRational rhs_v = rallis_place_factor(p);
    rhs_exact *= rhs_v.coeff;
    if (auto f = std::get_if<IIa>(&p)) {
      lhs_exact *= padic::iia_rallis_zeta_closed({f->q, f->c});
    } else if (auto d = std::get_if<DS>(&p)) {
      lhs_exact *= archzeta::ds_rallis_zeta_closed_exact(archzeta::DSWeight::from_lambda(d->lambda1, d->lambda2),
                                                         d->in_S);
    } else if (auto s = std::get_if<PS>(&p)) {
      lhs_ps *= archzeta::ps_rallis_zeta({s->mu1(), s->mu2()}, cfg).value;
    }
    trail += describe(p) + " ";
  }
  rhs_exact *= rpow(2, -2 * halvings);

  Rational rhs_exact_nonps = rhs_exact;
  for (const auto& p : g.places)
    if (std::holds_alternative<PS>(p)) rhs_exact_nonps *= 16;

  CheckReport r = make_report("constants.rallis_assembly", "Rallis inner product formula vs explicit assembly",
                              to_double(lhs_exact) * lhs_ps, to_double(rhs_exact), tol);
  if (lhs_exact != rhs_exact_nonps) {
    r.status = Status::fail;
    r.detail = "exact mismatch: " + to_string(lhs_exact) + " vs " + to_string(rhs_exact_nonps) + " for " + trail;
  } else {
    r.detail = "exact part " + to_string(lhs_exact) + ", halvings " + std::to_string(halvings);
  }
  return r;
}

double petersson_norm(const GlobalSpec& g, double l_ad_at_1) {
  g.validate();
  if (!std::isfinite(l_ad_at_1)) throw DomainError("petersson_norm: L(1, Ad) must be finite");
  double prod = 1.0;
  for (const auto& p : g.places) prod *= c_constant(p).value();
  return (g.endoscopic ? 4.0 : 2.0) * l_ad_at_1 / delta_pgsp4(g) * prod;
}

GlobalSpec random_endoscopic_spec(std::mt19937_64& rng, double ps_probability) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  const long primes[] = {2, 3, 5, 7};

  GlobalSpec g;
  std::vector<long> pool(std::begin(primes), std::end(primes));
  std::shuffle(pool.begin(), pool.end(), rng);
  const int n_iia = pick(0, 2);
  for (int i = 0; i < n_iia; ++i)
    g.places.push_back(IIa{pool[i], 0, pick(0, 1), cplx(0.0, 2.0 * unit(rng) - 1.0)});
  const int n_unram = pick(0, 2);
  for (int i = 0; i < n_unram; ++i)
    g.places.push_back(Unramified{pool[n_iia + i], 0, cplx(0.0, unit(rng)), cplx(0.0, -unit(rng))});

  if (unit(rng) < ps_probability) {
    g.places.push_back(PS{cplx(0.0, 0.8 * unit(rng) - 0.4), cplx(0.0, 0.8 * unit(rng) - 0.4), 0});
  } else {
    const int l1 = pick(2, 6);
    std::vector<int> l2s;
    for (int l2 = 1 - l1; l2 <= 0; ++l2)
      if ((l1 - l2) % 2 == 0) l2s.push_back(l2);
    const int l2 = l2s[pick(0, static_cast<int>(l2s.size()) - 1)];
    g.places.push_back(DS{l1, l2, unit(rng) < 0.5});
  }
  return g;
}

}  // namespace gspnorm::constants
