#include "gspnorm/suites.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <tuple>

#include "gspnorm/archzeta.hpp"
#include "gspnorm/constants.hpp"
#include "gspnorm/error.hpp"
#include "gspnorm/padic.hpp"
#include "gspnorm/special.hpp"
#include "gspnorm/whittaker.hpp"

namespace gspnorm::suites {

namespace {

constexpr double pi = 3.14159265358979323846;

using Pair = std::pair<cplx, cplx>;
using ExactPair = std::pair<Rational, Rational>;
using Verdict = std::pair<bool, std::string>;

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

Check numeric(std::string id, std::string ref, double tol, std::function<Pair(const RunConfig&)> f) {
  return {id, ref, [=](const RunConfig& cfg) {
            const auto [l, r] = f(cfg);
            return make_report(id, ref, l, r, std::max(tol, cfg.tol));
          }};
}

Check exact(std::string id, std::string ref, std::function<ExactPair(const RunConfig&)> f) {
  return {id, ref, [=](const RunConfig& cfg) {
            const auto [l, r] = f(cfg);
            return make_exact_report(id, ref, l, r);
          }};
}

// Structural identities: lhs = 1 when the property holds.
Check predicate(std::string id, std::string ref, std::function<Verdict(const RunConfig&)> f) {
  return {id, ref, [=](const RunConfig& cfg) {
            const auto [ok, why] = f(cfg);
            CheckReport r = make_report(id, ref, ok ? 1.0 : 0.0, 1.0, 0.0);
            r.detail = why;
            return r;
          }};
}

// The worst of several (lhs, rhs) samples.
Pair worst(const std::vector<Pair>& v) {
  Pair w = v.front();
  for (const auto& p : v)
    if (rel(p.first, p.second) > rel(w.first, w.second)) w = p;
  return w;
}

Rational zq(long q, long s) { return special::zeta_local_exact(q, s); }

// ---------------------------------------------------------------------------

std::vector<Check> special_suite() {
  using namespace special;
  std::vector<Check> v;
  v.push_back(numeric("special.log_gamma.recurrence", "log Gamma functional equation", 1e-13, [](const RunConfig&) {
    const cplx z(0.3, 3.0);
    return Pair{log_gamma(z + 1.0), log_gamma(z) + std::log(z)};
  }));
  v.push_back(numeric("special.gamma.reflection", "Gamma reflection formula", 1e-13, [](const RunConfig&) {
    const cplx z(0.3, 0.7);
    return Pair{gamma(z) * gamma(1.0 - z), pi / std::sin(pi * z)};
  }));
  v.push_back(numeric("special.gamma.duplication", "Gamma duplication formula", 1e-13, [](const RunConfig&) {
    const cplx z(0.8, 0.4);
    return Pair{gamma(z) * gamma(z + 0.5), std::pow(2.0, 1.0 - 2.0 * z) * std::sqrt(pi) * gamma(2.0 * z)};
  }));
  v.push_back(numeric("special.bessel_k.half_order", "K Bessel function of order 1/2", 1e-13, [](const RunConfig&) {
    const double x = 1.3;
    return Pair{bessel_k(0.5, x), std::sqrt(pi / (2.0 * x)) * std::exp(-x)};
  }));
  v.push_back(numeric("special.bessel_k.integral", "K Bessel integral representation", 1e-10, [](const RunConfig& cfg) {
    const cplx nu(0.0, 0.3);
    const double x = 2.0;
    auto f = [&](double u) -> cplx {
      const double e = x * std::cosh(u);
      return e > 700.0 ? cplx(0.0) : std::exp(-e) * std::cosh(nu * u);
    };
    return Pair{bessel_k(nu, x), numkit::integrate_halfline(f, cfg.prec).require("K integral")};
  }));
  v.push_back(numeric("special.hyp3f2.gauss_reduction", "3F2 at unit argument, reducible case", 1e-12,
                      [](const RunConfig&) {
                        const cplx a1(0.3, 0.1), a2(0.2, -0.4), b1(1.9, 0.2), a3(0.7, 0.5);
                        const cplx g = gamma(b1) * gamma(b1 - a1 - a2) / (gamma(b1 - a1) * gamma(b1 - a2));
                        return Pair{hyp3f2_unit(a1, a2, a3, b1, a3), g};
                      }));
  v.push_back(numeric("special.hermite.degree5", "Hermite polynomial", 1e-14, [](const RunConfig&) {
    const double x = 0.7;
    return Pair{hermite(5, x), 32.0 * std::pow(x, 5) - 160.0 * std::pow(x, 3) + 120.0 * x};
  }));
  v.push_back(exact("special.zeta_local.q2_s2", "local zeta factor at a finite place",
                    [](const RunConfig&) { return ExactPair{zeta_local_exact(2, 2), Rational(4, 3)}; }));
  v.push_back(numeric("special.zeta_real.s2", "local zeta factor at the real place", 1e-14,
                      [](const RunConfig&) { return Pair{zeta_real(2.0), 1.0 / pi}; }));
  v.push_back(predicate("numkit.gauss_hermite.exactness", "Gauss-Hermite polynomial exactness", [](const RunConfig&) {
    for (int order = 1; order <= 24; ++order) {
      const auto rule = numkit::gauss_hermite(order);
      for (int deg = 0; deg <= 2 * order - 1; ++deg) {
        double acc = 0.0, mass = 0.0;
        for (const auto& nd : rule) {
          acc += nd.w * std::pow(nd.x, deg);
          mass += nd.w * std::pow(std::abs(nd.x), deg);
        }
        const double ex = deg % 2 == 1 ? 0.0 : std::tgamma(0.5 * deg + 0.5);
        if (std::abs(acc - ex) > 1e-13 * mass)
          return Verdict{false, "order " + std::to_string(order) + " degree " + std::to_string(deg)};
      }
    }
    return Verdict{true, "orders 1-24"};
  }));
  return v;
}

std::vector<Check> whittaker_ds_suite() {
  using namespace whittaker;
  std::vector<Check> v;
  v.push_back(numeric("whittaker.j.closed_point", "J_n identity, instantiated", 1e-14, [](const RunConfig&) {
    return Pair{j_closed(0, 1.0, 0.0, 1.0), 0.5 * std::exp(-2.0 * pi)};
  }));
  v.push_back(numeric("whittaker.j.random", "J_n identity on seeded samples", 1e-9, [](const RunConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<Pair> s;
    while (s.size() < 20) {
      const int n = static_cast<int>(u(rng) * 7.0);
      const double r1 = 0.5 + 1.5 * u(rng), r2 = -0.5 + 1.5 * u(rng), r3 = -0.2 + 1.2 * u(rng);
      if (r2 * r2 + r3 < 0.1) continue;
      s.push_back({j_quad(n, r1, r2, r3, cfg.prec), j_closed(n, r1, r2, r3)});
    }
    return worst(s);
  }));
  const std::tuple<int, double, double> mellin[] = {{0, 1.0, -0.5}, {1, 2.0, -1.0}, {2, 1.5, -0.7}};
  for (const auto& [n, s1, s2] : mellin)
    v.push_back(numeric("whittaker.h_mellin.n" + std::to_string(n), "Mellin transform of h_n", 1e-6,
                        [n, s1, s2](const RunConfig& cfg) { return h_mellin_check(n, s1, s2, cfg.prec); }));
  const std::pair<DSParams, TorusPoint> pts[] = {
      {{2, 0}, {1.0, 1.0}}, {{3, -1}, {0.8, 1.25}}, {{4, -2}, {1.25, 0.8}}};
  for (const auto& [p, t] : pts)
    v.push_back(numeric("whittaker.ds.mb_vs_direct.l" + std::to_string(p.lambda1) + "_" + std::to_string(p.lambda2),
                        "discrete series Whittaker function, contour vs direct", 1e-6,
                        [p, t](const RunConfig& cfg) {
                          return Pair{ds_whittaker_mb(p, t, cfg.prec), ds_whittaker_direct(p, t, cfg.prec)};
                        }));
  v.push_back(numeric("whittaker.ds.normalization_ratio", "discrete series normalization prefactor", 1e-6,
                      [](const RunConfig& cfg) {
                        const DSParams p{3, -1};
                        return Pair{ds_whittaker_direct(p, {1.0, 1.0}, cfg.prec) / ds_normalization(p, cfg.prec),
                                    ds_prefactor(p)};
                      }));
  v.push_back(numeric("whittaker.ds.contour_shift", "discrete series contour independence", 1e-9,
                      [](const RunConfig& cfg) {
                        ContourPair c = ds_default_contours();
                        c.first.c = 2.0;
                        c.second.c = -0.25;
                        return Pair{ds_whittaker_mb({3, -1}, {1.0, 1.0}, c, cfg.prec),
                                    ds_whittaker_mb({3, -1}, {1.0, 1.0}, cfg.prec)};
                      }));
  return v;
}

std::vector<Check> whittaker_ps_suite() {
  using namespace whittaker;
  std::vector<Check> v;
  v.push_back(numeric("whittaker.ps.mb_vs_direct.real", "principal series Whittaker function, contour vs direct",
                      1e-5, [](const RunConfig& cfg) {
                        const PSParams p{0.2, 0.1};
                        return Pair{ps_whittaker_mb(p, {1.0, 1.0}, cfg.prec), ps_whittaker_direct(p, {1.0, 1.0}, cfg.prec)};
                      }));
  v.push_back(numeric("whittaker.ps.mb_vs_direct.unitary",
                      "principal series Whittaker function, contour vs direct", 1e-5, [](const RunConfig& cfg) {
                        const PSParams p{cplx(0.0, 0.3), cplx(0.0, 0.1)};
                        return Pair{ps_whittaker_mb(p, {1.0, 1.0}, cfg.prec), ps_whittaker_direct(p, {1.0, 1.0}, cfg.prec)};
                      }));
  v.push_back(numeric("whittaker.ps.weyl_swap", "principal series normalization, Weyl invariance", 1e-6,
                      [](const RunConfig& cfg) {
                        return Pair{ps_normalization({cplx(0.0, 0.1), cplx(0.0, 0.3)}, cfg.prec),
                                    ps_whittaker_direct({cplx(0.0, 0.3), cplx(0.0, 0.1)}, {1.0, 1.0}, cfg.prec)};
                      }));
  return v;
}

std::vector<Check> padic_suite() {
  using namespace padic;
  std::vector<Check> v;
  v.push_back(numeric("padic.iia_zeta.series_q2", "local Rallis zeta integral, type IIa, cell sum", 1e-10,
                      [](const RunConfig&) {
                        return Pair{iia_rallis_zeta_series({2, 0}, {0, cplx(0.0, 0.3)}, 40), 1.0 / 90.0};
                      }));
  for (long q : {2L, 3L, 5L, 7L})
    v.push_back(exact("padic.iia_zeta.closed_q" + std::to_string(q), "local Rallis zeta integral, type IIa",
                      [q](const RunConfig&) {
                        const Rational z1 = zq(q, 1);
                        return ExactPair{iia_rallis_zeta_closed({q, 0}),
                                         Rational(1, 4) * rpow(q, -3) * zq(q, 2) * zq(q, 4) / (z1 * z1)};
                      }));
  v.push_back(numeric("padic.iia_zeta.alpha_independence", "type IIa zeta integral is parameter free", 1e-10,
                      [](const RunConfig& cfg) {
                        std::mt19937_64 rng(cfg.seed);
                        std::uniform_real_distribution<double> u(-3.0, 3.0);
                        std::vector<Pair> s;
                        for (int i = 0; i < 10; ++i)
                          s.push_back({iia_rallis_zeta_series({2, 0}, {i % 2, cplx(0.0, u(rng))}, 40), 1.0 / 90.0});
                        return worst(s);
                      }));
  for (int i = 1; i <= 4; ++i)
    v.push_back(numeric("padic.subsum." + std::to_string(i), "partial cell sums of the IIa zeta integral", 1e-12,
                        [i](const RunConfig&) {
                          const FinitePlace pl{3, 0};
                          const IIaParams p{1, cplx(0.0, 0.4)};
                          return Pair{z_subsum_series(pl, p, i), z_subsum_closed(pl, p, i)};
                        }));
  v.push_back(predicate("padic.satake.tensor", "Satake exponent decompositions", [](const RunConfig&) {
    const TensorCheck t = tensor_decomp_check();
    return Verdict{t.ok, t.witness};
  }));
  v.push_back(numeric("padic.satake.euler_product", "16-factor Euler product factorization", 1e-12,
                      [](const RunConfig& cfg) {
                        std::mt19937_64 rng(cfg.seed);
                        std::uniform_real_distribution<double> u(-0.4, 0.4);
                        std::vector<Pair> s;
                        for (int i = 0; i < 5; ++i) {
                          const cplx l1(u(rng), u(rng)), l2(u(rng), u(rng)), x(1.0 + u(rng), u(rng));
                          const UnramValues w = unram_formula_evaluators({3, 0}, l1, l2, x);
                          s.push_back({w.rankin, w.factored});
                        }
                        return worst(s);
                      }));
  return v;
}

std::vector<Check> archzeta_suite() {
  using namespace archzeta;
  std::vector<Check> v;
  v.push_back(numeric("archzeta.f_n0.grid", "Gaussian moments of the Weil representation", 1e-8, [](const RunConfig&) {
    std::vector<Pair> s;
    for (int n = 0; n <= 3; ++n)
      for (double a : {0.7, 1.0, 1.4})
        for (double b : {0.7, 1.0, 1.4}) s.push_back({f_n0_quad(n, a, b), f_n0_closed(n, a, b)});
    return worst(s);
  }));
  v.push_back(numeric("archzeta.weil_phi_ps.identity", "Weil coefficient, principal series", 1e-10,
                      [](const RunConfig&) { return Pair{weil_phi_ps(1.0, 1.0), 1.0 / 16.0}; }));
  v.push_back(numeric("archzeta.weil_phi_ds.identity", "Weil coefficient, discrete series", 1e-10, [](const RunConfig&) {
    return Pair{weil_phi_ds(DSWeight::from_lambda(2, 0), 1.0, 1.0), 1.0 / (8.0 * pi * pi)};
  }));
  v.push_back(numeric("archzeta.ds_inner_t1", "discrete series zeta integral, inner integral", 1e-10,
                      [](const RunConfig& cfg) {
                        const auto [q, c] = ds_inner_t1(4, 0.3, cfg.prec);
                        return Pair{q, c};
                      }));
  for (auto [l1, l2] : {std::pair{2, 0}, {3, -1}})
    v.push_back(numeric("archzeta.ds_zeta.l" + std::to_string(l1) + "_" + std::to_string(l2),
                        "discrete series local Rallis zeta integral", 1e-8, [l1, l2](const RunConfig& cfg) {
                          const auto w = DSWeight::from_lambda(l1, l2);
                          return Pair{ds_rallis_zeta_assembled(w, true, cfg.prec), ds_rallis_zeta_closed(w, true)};
                        }));
  const std::pair<std::string, cplx> mus[] = {
      {"0", 0.0}, {"0.2", 0.2}, {"0.3i", cplx(0.0, 0.3)}, {"0.45", 0.45}};
  for (const auto& [name, mu] : mus)
    v.push_back(numeric("archzeta.bessel_norm.mu" + name, "K Bessel norm", 1e-9,
                        [mu](const RunConfig& cfg) { return bessel_norm(mu, cfg.prec); }));
  for (double s : {0.0, 0.5, 1.0, 2.0}) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%g", s);
    v.push_back(numeric(std::string("archzeta.f2o.s") + buf, "Gaussian integral over GL2(R)", 1e-10,
                        [s](const RunConfig& cfg) {
                          const auto [l, r] = f2o_check(s, cfg.prec);
                          return Pair{l, r};
                        }));
  }
  v.push_back(numeric("archzeta.zonal_mellin.trivial", "zonal spherical Mellin identity", 1e-5,
                      [](const RunConfig& cfg) { return zonal_mellin_check({0.0, 0.0}, 0.5, cfg.prec); }));
  v.push_back(numeric("archzeta.zonal_mellin.unitary", "zonal spherical Mellin identity", 1e-5,
                      [](const RunConfig& cfg) { return zonal_mellin_check({cplx(0.0, 0.2), 0.0}, 0.5, cfg.prec); }));
  v.push_back(numeric("archzeta.ps_zeta", "principal series local Rallis zeta integral", 1e-5,
                      [](const RunConfig& cfg) {
                        return Pair{ps_rallis_zeta({cplx(0.0, 0.2), cplx(0.0, 0.1)}, cfg.prec).value, 1.0 / 16.0};
                      }));
  return v;
}

std::vector<Check> constants_suite() {
  using namespace constants;
  std::vector<Check> v;
  v.push_back(predicate("constants.table.c_equals_c_prime", "theorem table vs explicit Rallis table",
                        [](const RunConfig&) {
                          std::vector<PlaceSpec> places;
                          for (long q : {2L, 3L, 5L, 7L})
                            for (long c : {0L, 1L}) {
                              places.push_back(Unramified{q, c, 0.0, 0.0});
                              places.push_back(IIa{q, c, 0, 0.0});
                            }
                          for (int l1 = 2; l1 <= 6; ++l1)
                            for (int l2 = 1 - l1; l2 <= 0; ++l2)
                              if ((l1 - l2) % 2 == 0) places.push_back(DS{l1, l2, false});
                          places.push_back(PS{});
                          for (const auto& p : places)
                            if (!(c_constant(p) == c_prime_constant(p)))
                              return Verdict{false, describe(p) + ": " + c_constant(p).str() + " vs " +
                                                        c_prime_constant(p).str()};
                          return Verdict{true, std::to_string(places.size()) + " places"};
                        }));
  v.push_back(predicate("constants.table.ds_3_m1", "constants table, discrete series", [](const RunConfig&) {
    const PiRational c = c_constant(DS{3, -1, false});
    return Verdict{c.coeff == Rational(512, 5) && c.pi_power == 15, c.str()};
  }));
  v.push_back(exact("constants.table.iia_q2", "constants table, type IIa",
                    [](const RunConfig&) { return ExactPair{c_constant(IIa{2}).coeff, Rational(2, 5)}; }));
  v.push_back(exact("constants.table.ps", "constants table, principal series",
                    [](const RunConfig&) { return ExactPair{c_constant(PS{}).coeff, Rational(1, 16)}; }));
  for (long q : {2L, 3L, 5L, 7L}) {
    v.push_back(exact("constants.d_P.half.q" + std::to_string(q), "Siegel Eisenstein normalizing factor",
                      [q](const RunConfig&) {
                        const auto d = padic::dP_dPcal_values({q, 0});
                        return ExactPair{d.dP_half, d.dP_half_expected};
                      }));
    v.push_back(exact("constants.d_Pcal.one.q" + std::to_string(q), "doubling Eisenstein normalizing factor",
                      [q](const RunConfig&) {
                        const auto d = padic::dP_dPcal_values({q, 0});
                        return ExactPair{d.dPcal_one, d.dPcal_one_expected};
                      }));
  }
  v.push_back(numeric("constants.d_P.half.real", "Siegel Eisenstein normalizing factor, real place", 1e-12,
                      [](const RunConfig&) {
                        const auto d = padic::dP_dPcal_values_real();
                        return Pair{d.dP_half, d.dP_half_expected};
                      }));
  v.push_back(numeric("constants.d_Pcal.one.real", "doubling Eisenstein normalizing factor, real place", 1e-12,
                      [](const RunConfig&) {
                        const auto d = padic::dP_dPcal_values_real();
                        return Pair{d.dPcal_one, d.dPcal_one_expected};
                      }));
  v.push_back(numeric("constants.delta_q", "Delta for PGSp4 over Q", 1e-14, [](const RunConfig&) {
    return Pair{delta_pgsp4(GlobalSpec{}), pi * pi * pi / 540.0};
  }));
  v.push_back(predicate("constants.rallis_assembly.random", "Rallis inner product assembly, seeded specs",
                        [](const RunConfig& cfg) {
                          std::mt19937_64 rng(cfg.seed);
                          for (int i = 0; i < 20; ++i) {
                            const GlobalSpec g = random_endoscopic_spec(rng);
                            const CheckReport r = rallis_assembly_check(g, cfg.prec);
                            if (r.status != Status::pass) return Verdict{false, r.detail};
                          }
                          return Verdict{true, "20 specs"};
                        }));
  v.push_back(numeric("constants.rallis_assembly.ps_iia", "Rallis inner product assembly", 1e-8,
                      [](const RunConfig& cfg) {
                        GlobalSpec g;
                        g.places = {PS{cplx(0.0, 0.3), cplx(0.0, 0.1), 0}, IIa{3}};
                        const CheckReport r = rallis_assembly_check(g, cfg.prec);
                        if (r.status != Status::pass) throw Error("assembly mismatch: " + r.detail);
                        return Pair{r.lhs, r.rhs};
                      }));
  v.push_back(numeric("constants.petersson.stable_toggle", "Petersson norm, stable vs endoscopic", 0.0,
                      [](const RunConfig&) {
                        GlobalSpec g;
                        g.places = {DS{3, -1, false}, IIa{5}};
                        const double endo = petersson_norm(g, 1.0);
                        g.endoscopic = false;
                        return Pair{endo, 2.0 * petersson_norm(g, 1.0)};
                      }));
  v.push_back(numeric("constants.theta.ds_factor", "theta Whittaker constant vs Whittaker normalization", 1e-6,
                      [](const RunConfig& cfg) {
                        const whittaker::DSParams p{3, -1};
                        GlobalSpec g;
                        g.places = {DS{3, -1, false}};
                        const double z2 = g.zeta2_value();
                        return Pair{whittaker_theta_constant(g) * z2 * z2,
                                    whittaker::ds_whittaker_direct(p, {1.0, 1.0}, cfg.prec) /
                                        whittaker::ds_normalization(p, cfg.prec)};
                      }));
  return v;
}

}  // namespace

void RunConfig::validate() const {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  if (jobs < 1) throw DomainError("jobs must be >= 1");
  prec.validate();
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"special",  "whittaker-ds", "whittaker-ps", "padic",
                                                 "archzeta", "constants",    "all"};
  return names;
}

bool is_suite(const std::string& name) {
  const auto& n = suite_names();
  return std::find(n.begin(), n.end(), name) != n.end();
}

std::vector<Check> suite_checks(const std::string& name) {
  if (name == "special") return special_suite();
  if (name == "whittaker-ds") return whittaker_ds_suite();
  if (name == "whittaker-ps") return whittaker_ps_suite();
  if (name == "padic") return padic_suite();
  if (name == "archzeta") return archzeta_suite();
  if (name == "constants") return constants_suite();
  if (name == "all") {
    std::vector<Check> all;
    for (const auto& n : suite_names())
      if (n != "all")
        for (auto& c : suite_checks(n)) all.push_back(std::move(c));
    return all;
  }
  throw DomainError("unknown suite '" + name + "'");
}

std::vector<CheckReport> run_suite(const std::string& name, const RunConfig& cfg) {
  cfg.validate();
  const std::vector<Check> checks = suite_checks(name);
  std::vector<CheckReport> out(checks.size());
  numkit::parallel_for(checks.size(), cfg.jobs, [&](std::size_t i) {
    try {
      out[i] = checks[i].run(cfg);
    } catch (const std::exception& e) {
      out[i] = make_report(checks[i].id, checks[i].paper_ref, std::nan(""), std::nan(""), cfg.tol);
      out[i].status = Status::fail;
      out[i].detail = e.what();
    }
  });
  std::stable_sort(out.begin(), out.end(), [](const CheckReport& a, const CheckReport& b) { return a.id < b.id; });
  return out;
}

}  // namespace gspnorm::suites
