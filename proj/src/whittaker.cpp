#include "gspnorm/whittaker.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "gspnorm/special.hpp"

namespace gspnorm::whittaker {

namespace {

constexpr double kPi = std::numbers::pi;
using special::log_gamma;
using numkit::Accumulator;

// Integrand of a double vertical-line integral, split as
// exp(sep1(s1) + sep2(s2)) * joint(s1, s2, ...). joint receives the sum of the
// separable logs (plus log weights) so it can exponentiate once.
struct PlaneIntegrand {
  std::function<cplx(cplx)> sep1;
  std::function<cplx(cplx)> sep2;
  std::function<cplx(cplx, cplx, cplx)> joint;

  cplx at(cplx s1, cplx s2) const { return joint(s1, s2, sep1(s1) + sep2(s2)); }
};

double boundary_max(const PlaneIntegrand& g, double c1, double c2, double T1, double T2) {
  double m = 0.0;
  for (double t = -T1; t <= T1 + 1e-9; t += 0.5) {
    m = std::max(m, std::abs(g.at({c1, t}, {c2, T2})));
    m = std::max(m, std::abs(g.at({c1, t}, {c2, -T2})));
  }
  for (double t = -T2; t <= T2 + 1e-9; t += 0.5) {
    m = std::max(m, std::abs(g.at({c1, T1}, {c2, t})));
    m = std::max(m, std::abs(g.at({c1, -T1}, {c2, t})));
  }
  return m;
}

cplx plane_level(const PlaneIntegrand& g, double c1, double c2, double T1, double T2,
                 double width, int order, const PrecisionConfig& cfg, int& count, double& mass) {
  const auto n1 = numkit::contour_nodes(c1, T1, width, order);
  const auto n2 = numkit::contour_nodes(c2, T2, width, order);
  std::vector<cplx> log1(n1.size()), log2(n2.size());
  for (std::size_t i = 0; i < n1.size(); ++i) log1[i] = g.sep1(n1[i].s) + std::log(n1[i].w);
  for (std::size_t j = 0; j < n2.size(); ++j) log2[j] = g.sep2(n2[j].s) + std::log(n2[j].w);
  std::vector<cplx> rows(n1.size());
  std::vector<double> row_mass(n1.size());
  numkit::parallel_for(n1.size(), cfg.jobs, [&](std::size_t i) {
    Accumulator<cplx> acc(cfg.mode);
    double m = 0.0;
    for (std::size_t j = 0; j < n2.size(); ++j) {
      const cplx v = g.joint(n1[i].s, n2[j].s, log1[i] + log2[j]);
      acc.add(v);
      m += std::abs(v);
    }
    rows[i] = acc.value();
    row_mass[i] = m;
  });
  Accumulator<cplx> total(cfg.mode);
  mass = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    total.add(rows[i]);
    mass += row_mass[i];
  }
  count += static_cast<int>(n1.size() * n2.size());
  return total.value();
}

MBResult plane_integral(const PlaneIntegrand& g, const ContourPair& cp, const PrecisionConfig& cfg) {
  cp.first.validate();
  cp.second.validate();
  cfg.validate();
  const double c1 = cp.first.c, c2 = cp.second.c;
  double T1 = cp.first.T, T2 = cp.second.T;

  if (T1 == 0.0 || T2 == 0.0) {
    double peak = 0.0;
    for (double x = -6.0; x <= 6.0; x += 0.5)
      for (double y = -6.0; y <= 6.0; y += 0.5) peak = std::max(peak, std::abs(g.at({c1, x}, {c2, y})));
    const double rel = cfg.target_rel_tol * 1e-3;
    double T = 6.0;
    while (T < 120.0) {
      const double a = T1 == 0.0 ? T : T1, b = T2 == 0.0 ? T : T2;
      if (boundary_max(g, c1, c2, a, b) < rel * peak) break;
      T += 2.0;
    }
    if (T1 == 0.0) T1 = T;
    if (T2 == 0.0) T2 = T;
  }

  MBResult res;
  res.height1 = T1;
  res.height2 = T2;
  const int panels = static_cast<int>(std::ceil(std::max(T1, T2)));
  const int order = std::clamp(std::max(cp.first.nodes, cp.second.nodes) / panels, 10, 64);

  double width = 2.0;
  double mass = 0.0;
  cplx prev = plane_level(g, c1, c2, T1, T2, width, order, cfg, res.nodes, mass);
  const double eps = cfg.mode == numkit::WorkingMode::extended ? 1e-30 : std::numeric_limits<double>::epsilon();
  for (int level = 0; level < 4; ++level) {
    width *= 0.5;
    const int before = res.nodes;
    const cplx next = plane_level(g, c1, c2, T1, T2, width, order, cfg, res.nodes, mass);
    res.error = std::abs(next - prev);
    res.value = next;
    prev = next;
    res.cancellation = mass / std::abs(next);
    // Rounding floor of a sum of N terms with total modulus `mass`.
    const double noise = 4.0 * eps * mass * std::sqrt(static_cast<double>(res.nodes - before));
    if (res.error <= std::max(cfg.target_rel_tol * std::abs(next), noise)) {
      res.converged = true;
      break;
    }
    const double per_axis = 2.0 * std::max(T1, T2) / width * order;
    if (per_axis > cfg.max_nodes) break;
  }
  const double edge = boundary_max(g, c1, c2, T1, T2);
  res.tail = edge * 2.0 * (T1 + T2) / (4.0 * kPi * kPi);
  res.tail_flagged = res.tail > cfg.target_rel_tol * std::abs(res.value);
  return res;
}

// Node value of the h_n integrand; log_scale = log(a1 a2^(n+1)).
double h_integrand(int n, double a1, double a2, double log_scale, double y) {
  const double R = std::hypot(a1 / y, a2 * y);
  const double u = a1 / y;
  const double d = u * (u / (R + a2 * y));  // R - a2 y without cancellation
  if (!(d > 0.0) || !std::isfinite(R)) return 0.0;
  const double expo = -2.0 * kPi * (y * y + y * R / a2 + (a2 / y) * d);
  const double lg = log_scale + expo + (n == 0 ? -std::log(y * y * R) : n * std::log(d / y) - std::log(y * y * R));
  return std::isnan(lg) ? 0.0 : std::exp(lg);
}

numkit::QuadResult<double> h_quad(int n, double a1, double a2, const PrecisionConfig& cfg) {
  const double log_scale = std::log(a1) + (n + 1) * std::log(a2);
  return numkit::integrate_halfline([&](double y) { return h_integrand(n, a1, a2, log_scale, y); }, cfg);
}

void check_torus(const TorusPoint& t) { t.validate(); }

}  // namespace

void DSParams::validate() const {
  if (!(1 - lambda1 <= lambda2 && lambda2 <= 0))
    throw DomainError("DS parameters need 1 - lambda1 <= lambda2 <= 0");
  if ((lambda1 - lambda2) % 2 != 0) throw DomainError("DS parameters need lambda1 - lambda2 even");
}

void PSParams::validate() const {
  if (!(std::abs(lambda1.real()) + std::abs(lambda2.real()) < 1.0))
    throw DomainError("PS parameters need |Re lambda1| + |Re lambda2| < 1");
  if (epsilon != 0 && epsilon != 1) throw DomainError("PS sign character must be 0 or 1");
}

std::array<PSParams, 8> weyl_orbit(const PSParams& p) {
  std::array<PSParams, 8> out;
  int k = 0;
  for (int swap = 0; swap < 2; ++swap)
    for (int e1 = 0; e1 < 2; ++e1)
      for (int e2 = 0; e2 < 2; ++e2) {
        const cplx x = swap ? p.lambda2 : p.lambda1;
        const cplx y = swap ? p.lambda1 : p.lambda2;
        out[k++] = {e1 ? -x : x, e2 ? -y : y, p.epsilon};
      }
  return out;
}

void TorusPoint::validate() const {
  if (!(a1 > 0.0 && a2 > 0.0)) throw DomainError("torus coordinates must be positive");
}

// ---------------------------------------------------------------------------

double j_closed(int n, double r1, double r2, double r3) {
  if (n < 0) throw DomainError("J_n needs n >= 0");
  if (!(r1 > 0.0) || !(r2 * r2 + r3 > 0.0)) throw DomainError("J_n needs r1 > 0 and r2^2 + r3 > 0");
  const double rho = std::sqrt(r2 * r2 + r3);
  return std::pow(2.0, n - 1) * std::pow(kPi, 0.5 * n) * std::pow(rho + r2, n) / rho *
         std::exp(-2.0 * kPi * r1 * (rho + r2));
}

double j_quad(int n, double r1, double r2, double r3, const PrecisionConfig& cfg) {
  if (n < 0) throw DomainError("J_n needs n >= 0");
  if (!(r1 > 0.0) || !(r2 * r2 + r3 > 0.0)) throw DomainError("J_n needs r1 > 0 and r2^2 + r3 > 0");
  const double sq = std::sqrt(kPi);
  auto f = [&](double y) {
    // (r1 y + r2/y)^2 + r3/y^2 expanded so r3 < 0 does not cancel.
    const double q = r1 * r1 * y * y + 2.0 * r1 * r2 + (r2 * r2 + r3) / (y * y);
    return std::pow(y, n - 2) * special::hermite(n, sq * (r1 * y + r2 / y)) * std::exp(-kPi * q);
  };
  return numkit::integrate_halfline(f, cfg).require("j_quad");
}

double h_fn(int n, double a1, double a2, const PrecisionConfig& cfg) {
  if (n < 0) throw DomainError("h_n needs n >= 0");
  if (!(a1 > 0.0 && a2 > 0.0)) throw DomainError("h_n needs a1, a2 > 0");
  return h_quad(n, a1, a2, cfg).require("h_fn");
}

cplx h_mellin_closed(int n, cplx s1, cplx s2) {
  const cplx lg = (-n - 4.0) * std::log(2.0) + (-n - 1.0) * std::log(kPi) -
                  0.5 * s1 * std::log(4.0 * kPi * kPi * kPi) - 0.5 * s2 * std::log(4.0 * kPi) +
                  log_gamma(0.5 * (s1 + s2 + 2.0 * n + 1.0)) + log_gamma(0.5 * (s1 + s2 + 1.0)) +
                  log_gamma(0.5 * s1) + log_gamma(-0.5 * s2);
  return std::exp(lg);
}

std::pair<cplx, cplx> h_mellin_check(int n, cplx s1, cplx s2, const PrecisionConfig& cfg) {
  if (n < 0) throw DomainError("h_n needs n >= 0");
  if (!((s1 + s2).real() + 1.0 > 0.0 && s1.real() > 0.0 && s2.real() < 0.0))
    throw DomainError("Mellin strip needs Re(s1+s2+1) > 0 and Re s1 > 0 > Re s2");
  // Three nested levels; the outer target is capped at 1e-7 and each inner
  // level runs one digit tighter. The inner variable is x1 at fixed ratio
  // v = x2 / x1, which keeps the inner integrand on a single scale.
  PrecisionConfig outer = cfg;
  outer.target_rel_tol = std::max(cfg.target_rel_tol, 1e-7);
  PrecisionConfig inner = outer;
  inner.target_rel_tol = outer.target_rel_tol * 1e-1;
  PrecisionConfig leaf = outer;
  leaf.target_rel_tol = outer.target_rel_tol * 1e-2;
  const cplx total = s1 + s2;
  auto row = [&](double v) -> cplx {
    auto g = [&](double x1) -> cplx {
      const double h = h_quad(n, x1, x1 * v, leaf).value;
      if (h == 0.0) return 0.0;
      return std::exp((total - 1.0) * std::log(x1)) * h;
    };
    const cplx inner_value = numkit::integrate_halfline(g, inner).value;
    if (inner_value == 0.0) return 0.0;
    return std::exp((s2 - 1.0) * std::log(v)) * inner_value;
  };
  const cplx lhs = numkit::integrate_halfline(row, outer).require("h_mellin_check");
  return {lhs, h_mellin_closed(n, s1, s2)};
}

// ---------------------------------------------------------------------------

double ds_prefactor(const DSParams& p) {
  return std::pow(2.0, -p.lambda1 - 4) * std::pow(kPi, 0.5 * (-3.0 * p.lambda1 + p.lambda2 - 5.0));
}

ContourPair ds_default_contours() {
  ContourPair c;
  c.first.c = 1.0;
  c.second.c = -0.5;
  return c;
}

void ds_check_contours(const ContourPair& c) {
  const double c1 = c.first.c, c2 = c.second.c;
  if (!(c1 + c2 + 1.0 > 0.0 && c1 > 0.0 && c2 < 0.0))
    throw DomainError("DS contour needs c1 + c2 + 1 > 0 and c1 > 0 > c2");
}

double ds_whittaker_direct(const DSParams& p, const TorusPoint& t, const PrecisionConfig& cfg) {
  p.validate();
  check_torus(t);
  const double h = h_fn(-p.lambda2, t.a1, t.a2, cfg);
  return 2.0 * std::pow(t.a1, p.lambda1 + 1) * std::pow(t.a2, p.lambda2) *
         std::exp(-2.0 * kPi * t.a2 * t.a2) * h;
}

MBResult ds_mb_integral(const DSParams& p, const TorusPoint& t, const ContourPair& c,
                        const PrecisionConfig& cfg) {
  p.validate();
  check_torus(t);
  ds_check_contours(c);
  const double l1 = p.lambda1, l2 = p.lambda2;
  const double log_x1 = std::log(4.0 * kPi * kPi * kPi * t.a1 * t.a1);
  const double log_x2 = std::log(4.0 * kPi * t.a2 * t.a2);
  const double damp = -2.0 * kPi * t.a2 * t.a2;
  PlaneIntegrand g;
  g.sep1 = [=](cplx s1) { return 0.5 * (-s1 + l1 + 1.0) * log_x1 + log_gamma(0.5 * s1); };
  g.sep2 = [=](cplx s2) { return 0.5 * (-s2 + l2) * log_x2 + log_gamma(-0.5 * s2) + damp; };
  g.joint = [=](cplx s1, cplx s2, cplx base) {
    const cplx s = s1 + s2;
    return std::exp(base + log_gamma(0.5 * (s - 2.0 * l2 + 1.0)) + log_gamma(0.5 * (s + 1.0)));
  };
  return plane_integral(g, c, cfg);
}

double ds_whittaker_mb(const DSParams& p, const TorusPoint& t, const ContourPair& c,
                       const PrecisionConfig& cfg) {
  const MBResult r = ds_mb_integral(p, t, c, cfg);
  if (!r.converged)
    throw ConvergenceError("ds_whittaker_mb: contour quadrature did not converge", std::abs(r.value),
                           std::abs(r.value) + r.error);
  return ds_prefactor(p) * r.value.real();
}

double ds_whittaker_mb(const DSParams& p, const TorusPoint& t, const PrecisionConfig& cfg) {
  return ds_whittaker_mb(p, t, ds_default_contours(), cfg);
}

double ds_normalization(const DSParams& p, const PrecisionConfig& cfg) {
  const MBResult r = ds_mb_integral(p, TorusPoint{1.0, 1.0}, ds_default_contours(), cfg);
  if (!r.converged)
    throw ConvergenceError("ds_normalization: contour quadrature did not converge", std::abs(r.value),
                           std::abs(r.value) + r.error);
  return r.value.real();
}

// ---------------------------------------------------------------------------

namespace {

double ps_bound1(const PSParams& p) {
  return std::max(std::abs(p.lambda1.real()), std::abs(p.lambda2.real()));
}
double ps_bound2(const PSParams& p) {
  return std::max(std::abs(p.mu1().real()), std::abs(p.mu2().real()));
}

PlaneIntegrand ps_integrand(const PSParams& p, const TorusPoint& t) {
  const cplx l1 = p.lambda1, l2 = p.lambda2;
  const cplx m1 = 0.5 * p.mu1(), m2 = 0.5 * p.mu2();  // (l1 + l2)/4, (l1 - l2)/4
  const double log_x1 = std::log(kPi * t.a1 / t.a2);
  const double log_x2 = std::log(kPi * t.a2 * t.a2);
  PlaneIntegrand g;
  g.sep1 = [=](cplx s1) {
    return -s1 * log_x1 + log_gamma(0.5 * (s1 + l1)) + log_gamma(0.5 * (s1 - l1)) +
           log_gamma(0.5 * (s1 + l2)) + log_gamma(0.5 * (s1 - l2));
  };
  g.sep2 = [=](cplx s2) {
    const cplx h = 0.5 * s2;
    return -s2 * log_x2 + log_gamma(h + m1) + log_gamma(h - m1) + log_gamma(h + m2) + log_gamma(h - m2);
  };
  g.joint = [=](cplx s1, cplx s2, cplx base) {
    const cplx h = 0.5 * (s1 + s2);
    const cplx F = special::hyp3f2_unit(0.5 * s1, 0.5 * s2 + m2, 0.5 * s2 - m2, h + m1, h - m1);
    return std::exp(base - log_gamma(h + m1) - log_gamma(h - m1)) * F;
  };
  return g;
}

}  // namespace

ContourPair ps_standard_contours(const PSParams& p) {
  ContourPair c;
  c.first.c = ps_bound1(p) + 1.0;
  c.second.c = ps_bound2(p) + 1.0;
  return c;
}

ContourPair ps_saddle_contours(const PSParams& p, const TorusPoint& t) {
  p.validate();
  check_torus(t);
  const PlaneIntegrand g = ps_integrand(p, t);
  const double lo1 = ps_bound1(p), lo2 = ps_bound2(p);
  double best = std::numeric_limits<double>::infinity();
  ContourPair out = ps_standard_contours(p);
  for (double x = 0.5; x <= 30.0; x += 0.5)
    for (double y = 0.5; y <= 30.0; y += 0.5) {
      const cplx s1(lo1 + x, 0.0), s2(lo2 + y, 0.0);
      const double v = std::log(std::abs(g.at(s1, s2)));
      if (v < best) {
        best = v;
        out.first.c = s1.real();
        out.second.c = s2.real();
      }
    }
  return out;
}

void ps_check_contours(const PSParams& p, const ContourPair& c) {
  if (!(c.first.c > ps_bound1(p)) || !(c.second.c > ps_bound2(p)))
    throw DomainError("PS contour needs c1 > max|Re lambda_i| and c2 > max|Re mu_i|");
}

MBResult ps_mb_integral(const PSParams& p, const TorusPoint& t, const ContourPair& c,
                        const PrecisionConfig& cfg) {
  p.validate();
  check_torus(t);
  ps_check_contours(p, c);
  MBResult r = plane_integral(ps_integrand(p, t), c, cfg);
  const double pre = t.a1 * t.a1 * t.a2 / 16.0;
  r.value *= pre;
  r.error *= pre;
  r.tail *= pre;
  return r;
}

cplx ps_whittaker_mb(const PSParams& p, const TorusPoint& t, const ContourPair& c,
                     const PrecisionConfig& cfg) {
  const MBResult r = ps_mb_integral(p, t, c, cfg);
  if (!r.converged)
    throw ConvergenceError("ps_whittaker_mb: contour quadrature did not converge", std::abs(r.value),
                           std::abs(r.value) + r.error);
  return r.value;
}

cplx ps_whittaker_mb(const PSParams& p, const TorusPoint& t, const PrecisionConfig& cfg) {
  return ps_whittaker_mb(p, t, ps_saddle_contours(p, t), cfg);
}

cplx ps_normalization(const PSParams& p, const PrecisionConfig& cfg) {
  return ps_whittaker_mb(p, TorusPoint{1.0, 1.0}, cfg);
}

// Trapezoid rule in u = log y on both axes; the integrand decays double
// exponentially in every direction of the (u1, u2) plane.
cplx ps_whittaker_direct(const PSParams& p, const TorusPoint& t, const PrecisionConfig& cfg) {
  p.validate();
  check_torus(t);
  cfg.validate();
  const cplx m1 = p.mu1(), m2 = p.mu2();
  const double A = t.a1 * t.a1, B = t.a2 * t.a2;
  auto gauss = [&](double u1, double u2) {
    return std::exp(-kPi * (A * std::exp(-2.0 * (u1 + u2)) + B * std::exp(2.0 * (u2 - u1)) +
                            B * std::exp(2.0 * (u1 - u2)) + std::exp(2.0 * (u1 + u2)) / B));
  };
  auto kval = [](cplx nu, double u) { return special::bessel_k(nu, 2.0 * kPi * std::exp(2.0 * u)); };

  // Coarse scan for the active window.
  const double lo = -14.0, hi = 6.0, step = 0.25;
  const int m = static_cast<int>((hi - lo) / step) + 1;
  std::vector<double> k1(m), k2(m);
  for (int i = 0; i < m; ++i) {
    k1[i] = std::abs(kval(m1, lo + i * step));
    k2[i] = std::abs(kval(m2, lo + i * step));
  }
  double peak = 0.0;
  std::vector<double> mag(static_cast<std::size_t>(m) * m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      mag[i * m + j] = k1[i] * k2[j] * gauss(lo + i * step, lo + j * step);
      peak = std::max(peak, mag[i * m + j]);
    }
  int i0 = m, i1 = -1, j0 = m, j1 = -1;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (mag[i * m + j] > 1e-22 * peak) {
        i0 = std::min(i0, i);
        i1 = std::max(i1, i);
        j0 = std::min(j0, j);
        j1 = std::max(j1, j);
      }
  if (i1 < 0) throw ConvergenceError("ps_whittaker_direct: empty integrand", 0.0, 0.0);
  const double u1a = lo + (i0 - 2) * step, u1b = lo + (i1 + 2) * step;
  const double u2a = lo + (j0 - 2) * step, u2b = lo + (j1 + 2) * step;

  auto level = [&](double h) {
    const int n1 = static_cast<int>(std::ceil((u1b - u1a) / h)), n2 = static_cast<int>(std::ceil((u2b - u2a) / h));
    std::vector<cplx> K1(n1 + 1), K2(n2 + 1);
    for (int i = 0; i <= n1; ++i) K1[i] = kval(m1, u1a + i * h);
    for (int j = 0; j <= n2; ++j) K2[j] = kval(m2, u2a + j * h);
    std::vector<cplx> rows(n1 + 1);
    numkit::parallel_for(rows.size(), cfg.jobs, [&](std::size_t i) {
      Accumulator<cplx> acc(cfg.mode);
      const double u1 = u1a + static_cast<double>(i) * h;
      for (int j = 0; j <= n2; ++j) acc.add(K2[j] * gauss(u1, u2a + j * h));
      rows[i] = K1[i] * acc.value();
    });
    Accumulator<cplx> total(cfg.mode);
    for (const auto& r : rows) total.add(r);
    return total.value() * h * h;
  };

  double h = 0.2;
  cplx prev = level(h);
  for (int it = 0; it < 5; ++it) {
    h *= 0.5;
    const cplx next = level(h);
    const double change = std::abs(next - prev);
    prev = next;
    if (change <= cfg.target_rel_tol * std::abs(next)) return 8.0 * A * t.a2 * next;
  }
  throw ConvergenceError("ps_whittaker_direct: trapezoid did not settle", std::abs(prev), std::abs(prev));
}

}  // namespace gspnorm::whittaker
