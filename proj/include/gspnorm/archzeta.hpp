#pragma once

#include <array>
#include <utility>

#include "gspnorm/numkit.hpp"
#include "gspnorm/rational.hpp"

namespace gspnorm::archzeta {

using numkit::cplx;
using numkit::PrecisionConfig;

// Minimal weights kappa1 = lambda1 - lambda2 >= kappa2 = lambda1 + lambda2 >= 1.
struct DSWeight {
  int kappa1 = 2;
  int kappa2 = 2;

  static DSWeight from_lambda(int lambda1, int lambda2) { return {lambda1 - lambda2, lambda1 + lambda2}; }
  int lambda1() const { return (kappa1 + kappa2) / 2; }
  int lambda2() const { return (kappa2 - kappa1) / 2; }
  void validate() const;
};

// K-Bessel parameters of the two GL2 factors, |Re mu_i| < 1/2.
struct PSPairing {
  cplx mu1 = 0.0;
  cplx mu2 = 0.0;

  void validate() const;
};

// ---------------------------------------------------------------------------
// Weil-representation coefficients

// Gaussian moment f_n(0) in closed form.
double f_n0_closed(int n, double a, double b);
// Same moment by tensor Gauss-Hermite over R^4, n <= 6.
double f_n0_quad(int n, double a, double b);

double weil_phi_ds(const DSWeight& w, double a, double b);
double weil_phi_ps(double a, double b);

// B(sigma(h) W, W) at h = [m(e^t1), m(e^t2)], identity rotations.
double ds_matrix_coeff(const DSWeight& w, double t1, double t2);

// ---------------------------------------------------------------------------
// Discrete series local zeta integral

// int_0^inf sinh(2 t1) (cosh 2t1 + cosh 2t2)^(-2-kappa1) dt1: (quadrature, closed form).
std::pair<double, double> ds_inner_t1(int kappa1, double t2, const PrecisionConfig& cfg = {});
// The reduced double integral: (quadrature, 2^(-3-kappa1) / (lambda1 (1 + kappa1))).
std::pair<double, double> ds_reduced_double(const DSWeight& w, const PrecisionConfig& cfg = {});

// 2^2 (2 pi)^(-2s - lambda1 + lambda2 + 1) Gamma(s + lambda1 - 1) Gamma(s - lambda2)
double ds_l_std(const DSWeight& w, double s);

// int over H_1 of Phi * B in the Cartan measure 16 pi^2 sinh(2 t1) sinh(2 t2) dt1 dt2.
double ds_rallis_zeta_quad(const DSWeight& w, const PrecisionConfig& cfg = {});
// zeta(2) zeta(4) / L(1, std) times the quadrature, quartered when in_S.
double ds_rallis_zeta_assembled(const DSWeight& w, bool in_S, const PrecisionConfig& cfg = {});
// 2^(-lambda1-lambda2-3) / (1 + lambda1 - lambda2), quartered when in_S.
double ds_rallis_zeta_closed(const DSWeight& w, bool in_S);
Rational ds_rallis_zeta_closed_exact(const DSWeight& w, bool in_S);

// ---------------------------------------------------------------------------
// Principal series pieces

// (int_R K_mu(2 pi |t|)^2 dt, Gamma(1/2 + mu) Gamma(1/2 - mu) / 4)
std::pair<cplx, cplx> bessel_norm(cplx mu, const PrecisionConfig& cfg = {});
std::pair<cplx, cplx> bessel_norm(const PSPairing& p, int i, const PrecisionConfig& cfg = {});

// zeta_R(1 + 2 mu) zeta_R(1) zeta_R(1 - 2 mu)
cplx gl2_l_ad_at_one(cplx mu);

// Normalized pairing B(W, W) assembled from the two Bessel norms.
cplx ps_pairing_constant(const PSPairing& p, const PrecisionConfig& cfg = {});

// (integral of exp(-2 pi tr x x^t) |det x|^(2s+2) over GL2(R), 2^(-2s-2) zeta_R(2s+1) zeta_R(2s+2))
std::pair<double, double> f2o_check(double s, const PrecisionConfig& cfg = {});

// Bi-O(2)-invariant spherical function of Ind(|.|^nu1 x |.|^nu2) at the 2x2 matrix
// g = {g11, g12, g21, g22}, normalized to 1 at the identity.
cplx zonal_spherical(cplx nu1, cplx nu2, const std::array<double, 4>& g, const PrecisionConfig& cfg = {});

// (average over O(2) of omega(g1 k g2), omega(g1) omega(g2))
std::pair<cplx, cplx> zonal_product_check(cplx nu1, cplx nu2, const std::array<double, 4>& g1,
                                          const std::array<double, 4>& g2, const PrecisionConfig& cfg = {});

// int over GL2(R) of exp(-pi tr g g^t) omega(g) |det g|^(s+1).
cplx zonal_gauss_integral(cplx nu1, cplx nu2, double s, const PrecisionConfig& cfg = {});

// (product of the tau and tau-dual integrals, prod zeta_R(s + 1/2 +- mu1 +- mu2))
std::pair<cplx, cplx> zonal_mellin_check(const PSPairing& p, double s, const PrecisionConfig& cfg = {});

// prod over signs of zeta_R(s +- mu1 +- mu2)
cplx ps_l_std(const PSPairing& p, cplx s);

// 2 zeta_R(2s+2) / zeta_R(2s+3); supplied, not derived.
double f1o_value(double s);

struct PSRallisParts {
  cplx pairing;      // Psi(1)
  double weil;       // Phi(1)
  double f1;         // F1(A, 1/2)
  double f2;         // F2(A, 1/2) by quadrature
  cplx zonal;        // product of the two zonal integrals at s = 1/2
  cplx doubling;     // Psi(1) F1/F2 zonal
  cplx value;        // Z_v
};
PSRallisParts ps_rallis_zeta(const PSPairing& p, const PrecisionConfig& cfg = {});

}  // namespace gspnorm::archzeta
