#include "gspnorm/archzeta.hpp"

#include <cmath>
#include <numbers>

#include "gspnorm/special.hpp"

namespace gspnorm::archzeta {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double ln2 = std::numbers::ln2;

// log cosh x without overflow.
double log_cosh(double x) {
  const double a = std::abs(x);
  return a + std::log1p(std::exp(-2.0 * a)) - ln2;
}

// log sinh(2t) for t > 0.
double log_sinh2(double t) { return 2.0 * t + std::log(-std::expm1(-4.0 * t)) - ln2; }

double log_add(double a, double b) {
  const double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

PrecisionConfig inner_cfg(const PrecisionConfig& cfg, double factor = 0.1) {
  PrecisionConfig c = cfg;
  c.target_rel_tol = std::max(cfg.target_rel_tol * factor, 1e-14);
  return c;
}

double zeta_r(double s) { return special::zeta_real(s); }
cplx zeta_r(cplx s) { return special::zeta_real(s); }

}  // namespace

void DSWeight::validate() const {
  if (kappa1 < 1 || kappa2 < 1) throw DomainError("minimal weights must be positive");
  if ((kappa1 - kappa2) % 2 != 0) throw DomainError("minimal weights need equal parity");
  if (kappa1 < kappa2) throw DomainError("minimal weights are ordered kappa1 >= kappa2");
}

void PSPairing::validate() const {
  if (!(std::abs(mu1.real()) < 0.5 && std::abs(mu2.real()) < 0.5))
    throw DomainError("K-Bessel parameters need |Re mu| < 1/2");
}

// ---------------------------------------------------------------------------

double f_n0_closed(int n, double a, double b) {
  if (n < 0) throw DomainError("moment order must be non-negative");
  if (!(a > 0.0 && b > 0.0)) throw DomainError("torus coordinates must be positive");
  const double p = 1.0 / (a * b + 1.0 / (a * b));
  const double q = 1.0 / (a / b + b / a);
  return std::pow(pi, -n) * std::tgamma(n + 1.0) * p * q * std::pow(p + q, n);
}

double f_n0_quad(int n, double a, double b) {
  if (n < 0 || n > 6) throw DomainError("Gauss-Hermite moment supports 0 <= n <= 6");
  if (!(a > 0.0 && b > 0.0)) throw DomainError("torus coordinates must be positive");
  const double ai = 1.0 / a, bi = 1.0 / b;
  const double c[4] = {ai * ai + bi * bi, ai * ai + b * b, a * a + bi * bi, a * a + b * b};
  double scale[4];
  double jac = 1.0;
  for (int j = 0; j < 4; ++j) {
    scale[j] = 1.0 / std::sqrt(pi * c[j]);
    jac *= scale[j];
  }
  const cplx I(0.0, 1.0);
  auto f = [&](const double* y) -> cplx {
    const double x1 = y[0] * scale[0], x2 = y[1] * scale[1], x3 = y[2] * scale[2], x4 = y[3] * scale[3];
    const cplx l = ai * x1 - I * ai * x2 - I * a * x3 - a * x4;
    const cplx r = bi * x1 + I * b * x2 + I * bi * x3 - b * x4;
    return std::pow(l * r, n);
  };
  return (jac * numkit::integrate_tensor_hermite(f, n + 2, 4)).real();
}

double weil_phi_ds(const DSWeight& w, double a, double b) {
  w.validate();
  if (!(a > 0.0 && b > 0.0)) throw DomainError("torus coordinates must be positive");
  const int l1 = w.lambda1(), l2 = w.lambda2();
  const double p = 1.0 / (a * b + 1.0 / (a * b));
  const double q = 1.0 / (a / b + b / a);
  return std::pow(pi, -l1 + l2) * std::tgamma(l1 + 1.0) * std::tgamma(1.0 - l2) * p * p * q * q *
         std::pow(p + q, l1 - l2);
}

double weil_phi_ps(double a, double b) {
  if (!(a > 0.0 && b > 0.0)) throw DomainError("torus coordinates must be positive");
  const double p = 1.0 / (a * b + 1.0 / (a * b));
  const double q = 1.0 / (a / b + b / a);
  return p * p * q * q;
}

double ds_matrix_coeff(const DSWeight& w, double t1, double t2) {
  w.validate();
  return std::pow(2.0, -2 * w.lambda1() - 2) * std::pow(std::cosh(t1), -w.kappa1) *
         std::pow(std::cosh(t2), -w.kappa2);
}

// ---------------------------------------------------------------------------

std::pair<double, double> ds_inner_t1(int kappa1, double t2, const PrecisionConfig& cfg) {
  const double c2 = std::cosh(2.0 * t2);
  auto f = [&](double t1) {
    // sinh(2 t1) / (cosh 2t1 + c2)^(2 + kappa1), in logs for large t1.
    const double lc = 2.0 * t1 + std::log1p(std::exp(-4.0 * t1) + 2.0 * c2 * std::exp(-2.0 * t1)) - ln2;
    return std::exp(log_sinh2(t1) - (2.0 + kappa1) * lc);
  };
  const double quad = numkit::integrate_halfline(f, cfg).require("DS inner integral");
  const double closed = 0.5 / (1.0 + kappa1) * std::pow(1.0 + c2, -1.0 - kappa1);
  return {quad, closed};
}

std::pair<double, double> ds_reduced_double(const DSWeight& w, const PrecisionConfig& cfg) {
  w.validate();
  const int k1 = w.kappa1, l1 = w.lambda1(), l2 = w.lambda2();
  const PrecisionConfig icfg = inner_cfg(cfg);
  auto outer = [&](double t2) {
    if (t2 > 300.0) return 0.0;
    const double c2 = std::cosh(2.0 * t2);
    auto inner = [&](double t1) {
      const double lc = 2.0 * t1 + std::log1p(std::exp(-4.0 * t1) + 2.0 * c2 * std::exp(-2.0 * t1)) - ln2;
      return std::exp(log_sinh2(t1) - (2.0 + k1) * lc);
    };
    const double in = numkit::integrate_halfline(inner, icfg).require("DS reduced inner integral");
    if (!(in > 0.0)) return 0.0;
    const double log_sinh = t2 + std::log(-std::expm1(-2.0 * t2)) - ln2;
    return std::exp((1.0 - 2.0 * l2) * log_cosh(t2) + log_sinh + std::log(in));
  };
  const double quad = numkit::integrate_halfline(outer, cfg).require("DS reduced integral");
  return {quad, std::pow(2.0, -3 - k1) / (l1 * (1.0 + k1))};
}

double ds_l_std(const DSWeight& w, double s) {
  const int l1 = w.lambda1(), l2 = w.lambda2();
  return 4.0 * std::pow(2.0 * pi, -2.0 * s - l1 + l2 + 1.0) * special::gamma(s + l1 - 1.0) * special::gamma(s - l2);
}

double ds_rallis_zeta_quad(const DSWeight& w, const PrecisionConfig& cfg) {
  w.validate();
  const int k1 = w.kappa1, k2 = w.kappa2, l1 = w.lambda1(), l2 = w.lambda2();
  const double log_const = std::log(16.0 * pi * pi) - k1 * std::log(pi) + std::lgamma(l1 + 1.0) +
                           std::lgamma(1.0 - l2) + (-2.0 * l1 - 2.0) * ln2;
  const PrecisionConfig icfg = inner_cfg(cfg);
  auto outer = [&](double t2) {
    if (t2 > 300.0) return 0.0;
    auto inner = [&](double t1) {
      if (t1 > 300.0) return 0.0;
      // Phi([m(e^t1), m(e^t2)]) with ab + 1/ab = 2 cosh(t1 + t2), a/b + b/a = 2 cosh(t1 - t2).
      const double lp = ln2 + log_cosh(t1 + t2), lm = ln2 + log_cosh(t1 - t2);
      const double log_phi = -2.0 * lp - 2.0 * lm + k1 * log_add(-lp, -lm);
      const double log_b = -k1 * log_cosh(t1) - k2 * log_cosh(t2);
      return std::exp(log_const + log_phi + log_b + log_sinh2(t1) + log_sinh2(t2));
    };
    return numkit::integrate_halfline(inner, icfg).require("DS Rallis inner integral");
  };
  return numkit::integrate_halfline(outer, cfg).require("DS Rallis integral");
}

double ds_rallis_zeta_assembled(const DSWeight& w, bool in_S, const PrecisionConfig& cfg) {
  const double z = zeta_r(2.0) * zeta_r(4.0) / ds_l_std(w, 1.0) * ds_rallis_zeta_quad(w, cfg);
  return in_S ? 0.25 * z : z;
}

Rational ds_rallis_zeta_closed_exact(const DSWeight& w, bool in_S) {
  w.validate();
  const Rational z = rpow(2, -w.lambda1() - w.lambda2() - 3) / (1 + w.kappa1);
  return in_S ? z / 4 : z;
}

double ds_rallis_zeta_closed(const DSWeight& w, bool in_S) { return to_double(ds_rallis_zeta_closed_exact(w, in_S)); }

// ---------------------------------------------------------------------------

std::pair<cplx, cplx> bessel_norm(cplx mu, const PrecisionConfig& cfg) {
  if (!(std::abs(mu.real()) < 0.5)) throw DomainError("K-Bessel norm needs |Re mu| < 1/2");
  auto f = [&](double t) -> cplx {
    const double x = 2.0 * pi * t;
    if (x > 700.0) return 0.0;
    const cplx k = special::bessel_k(mu, x);
    return 2.0 * k * k;
  };
  const cplx lhs = numkit::integrate_halfline(f, cfg).require("K-Bessel norm");
  const cplx rhs = 0.25 * special::gamma(0.5 + mu) * special::gamma(0.5 - mu);
  return {lhs, rhs};
}

std::pair<cplx, cplx> bessel_norm(const PSPairing& p, int i, const PrecisionConfig& cfg) {
  p.validate();
  if (i != 1 && i != 2) throw DomainError("Bessel norm index must be 1 or 2");
  return bessel_norm(i == 1 ? p.mu1 : p.mu2, cfg);
}

cplx gl2_l_ad_at_one(cplx mu) { return zeta_r(1.0 + 2.0 * mu) * zeta_r(1.0) * zeta_r(1.0 - 2.0 * mu); }

cplx ps_pairing_constant(const PSPairing& p, const PrecisionConfig& cfg) {
  p.validate();
  const double z = zeta_r(2.0) / zeta_r(1.0);
  const cplx n1 = bessel_norm(p.mu1, cfg).first;
  const cplx n2 = bessel_norm(p.mu2, cfg).first;
  return z * z * n1 * n2 / (gl2_l_ad_at_one(p.mu1) * gl2_l_ad_at_one(p.mu2));
}

std::pair<double, double> f2o_check(double s, const PrecisionConfig& cfg) {
  if (!(s > -0.5)) throw DomainError("F2 integral diverges for s <= -1/2");
  // Upper-triangular coordinates: the unipotent entry, then the two diagonal entries.
  const double iu = numkit::integrate_line([](double u) { return std::exp(-2.0 * pi * u * u); }, cfg)
                        .require("F2 unipotent integral");
  auto diag = [&](double power) {
    auto f = [&](double t) { return t > 1e3 ? 0.0 : 2.0 * std::exp(-2.0 * pi * t * t) * std::pow(t, power); };
    return numkit::integrate_halfline(f, cfg).require("F2 diagonal integral");
  };
  const double lhs = iu * diag(2.0 * s) * diag(2.0 * s + 1.0);
  const double rhs = std::pow(2.0, -2.0 * s - 2.0) * zeta_r(2.0 * s + 1.0) * zeta_r(2.0 * s + 2.0);
  return {lhs, rhs};
}

namespace {

// omega(diag(e^t, e^-t)) = (2/pi) int_0^(pi/2) (e^2t sin^2 + e^-2t cos^2)^(-p) dtheta.
cplx spherical_diag(cplx p, double t, const PrecisionConfig& cfg) {
  if (t < 1e-300) return 1.0;
  const double e4 = std::exp(4.0 * t);
  auto f = [&](double th) -> cplx {
    const double s = std::sin(th), c = std::cos(th);
    return std::exp(-p * std::log(e4 * s * s + c * c));
  };
  const cplx v = numkit::integrate_interval(f, 0.0, 0.5 * pi, cfg).require("spherical function");
  return (2.0 / pi) * std::exp(2.0 * t * p) * v;
}

// omega at a matrix with tr(g g^t) = S and |det g| = D.
cplx spherical_sd(cplx nu1, cplx nu2, double S, double D, const PrecisionConfig& cfg) {
  const double ch = std::max(1.0, S / (2.0 * D));
  const double t = 0.5 * std::acosh(ch);
  const cplx p = 0.5 * (1.0 + nu1 - nu2);
  return std::exp(0.5 * (nu1 + nu2) * std::log(D)) * spherical_diag(p, t, cfg);
}

std::array<double, 4> mul(const std::array<double, 4>& x, const std::array<double, 4>& y) {
  return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
          x[2] * y[1] + x[3] * y[3]};
}

}  // namespace

cplx zonal_spherical(cplx nu1, cplx nu2, const std::array<double, 4>& g, const PrecisionConfig& cfg) {
  const double D = std::abs(g[0] * g[3] - g[1] * g[2]);
  if (!(D > 0.0)) throw DomainError("spherical function needs an invertible matrix");
  const double S = g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[3];
  return spherical_sd(nu1, nu2, S, D, cfg);
}

std::pair<cplx, cplx> zonal_product_check(cplx nu1, cplx nu2, const std::array<double, 4>& g1,
                                          const std::array<double, 4>& g2, const PrecisionConfig& cfg) {
  constexpr int n = 256;
  numkit::Accumulator<cplx> acc(numkit::WorkingMode::extended);
  for (int j = 0; j < n; ++j) {
    const double th = 2.0 * pi * j / n;
    const double c = std::cos(th), s = std::sin(th);
    const std::array<double, 4> rot{c, -s, s, c}, refl{c, -s, -s, -c};
    acc.add(zonal_spherical(nu1, nu2, mul(mul(g1, rot), g2), cfg));
    acc.add(zonal_spherical(nu1, nu2, mul(mul(g1, refl), g2), cfg));
  }
  return {acc.value() / (2.0 * n), zonal_spherical(nu1, nu2, g1, cfg) * zonal_spherical(nu1, nu2, g2, cfg)};
}

cplx zonal_gauss_integral(cplx nu1, cplx nu2, double s, const PrecisionConfig& cfg) {
  // g = t2 [[r, v], [0, 1]] k: the t2 integral is a Gamma function. Trading v for the
  // Cartan parameter t (cosh 2t = (r^2 + v^2 + 1) / 2r) leaves an elementary r integral
  // equal to 2 pi sinh(2t) (2 cosh 2t)^(-c/2).
  const cplx c = 2.0 * s + 2.0 + nu1 + nu2;
  const cplx front = 4.0 * special::gamma(0.5 * c) * std::exp(-0.5 * c * std::log(pi));
  const cplx p = 0.5 * (1.0 + nu1 - nu2);
  const PrecisionConfig leaf = inner_cfg(cfg);
  auto f = [&](double t) -> cplx {
    if (t > 150.0) return 0.0;
    const double log_2cosh = 2.0 * t + std::log1p(std::exp(-4.0 * t));
    return 2.0 * pi * std::exp(log_sinh2(t) - 0.5 * c * log_2cosh) * spherical_diag(p, t, leaf);
  };
  return front * numkit::integrate_halfline(f, cfg).require("zonal integral");
}

cplx ps_l_std(const PSPairing& p, cplx s) {
  cplx r = 1.0;
  for (double e1 : {1.0, -1.0})
    for (double e2 : {1.0, -1.0}) r *= zeta_r(s + e1 * p.mu1 + e2 * p.mu2);
  return r;
}

std::pair<cplx, cplx> zonal_mellin_check(const PSPairing& p, double s, const PrecisionConfig& cfg) {
  p.validate();
  const cplx nu1 = p.mu1 + p.mu2, nu2 = p.mu1 - p.mu2;
  const double margin = 2.0 * std::max(std::abs(p.mu1.real()), std::abs(p.mu2.real())) - 0.5;
  if (!(s > std::max(0.0, margin) - 0.5)) throw DomainError("zonal Gaussian integral needs larger s");
  const cplx lhs = zonal_gauss_integral(nu1, nu2, s, cfg) * zonal_gauss_integral(-nu1, -nu2, s, cfg);
  return {lhs, ps_l_std(p, s + 0.5)};
}

double f1o_value(double s) { return 2.0 * zeta_r(2.0 * s + 2.0) / zeta_r(2.0 * s + 3.0); }

PSRallisParts ps_rallis_zeta(const PSPairing& p, const PrecisionConfig& cfg) {
  p.validate();
  PSRallisParts r;
  r.pairing = ps_pairing_constant(p, cfg);
  r.weil = weil_phi_ps(1.0, 1.0);
  r.f1 = f1o_value(0.5);
  r.f2 = f2o_check(0.5, cfg).first;
  r.zonal = zonal_mellin_check(p, 0.5, cfg).first;
  r.doubling = r.pairing * (r.f1 / r.f2) * r.zonal;
  r.value = r.weil * zeta_r(2.0) * zeta_r(4.0) / ps_l_std(p, 1.0) * r.doubling;
  return r;
}

}  // namespace gspnorm::archzeta
