#pragma once

#include <array>
#include <utility>

#include "gspnorm/numkit.hpp"

namespace gspnorm::whittaker {

using numkit::cplx;
using numkit::ContourSpec;
using numkit::PrecisionConfig;

// Discrete series with Blattner parameter (lambda1, lambda2).
struct DSParams {
  int lambda1 = 2;
  int lambda2 = 0;

  void validate() const;
  int kappa1() const { return lambda1 - lambda2; }
  int kappa2() const { return lambda1 + lambda2; }
};

// Spherical principal series.
struct PSParams {
  cplx lambda1 = 0.0;
  cplx lambda2 = 0.0;
  int epsilon = 0;

  void validate() const;
  cplx mu1() const { return 0.5 * (lambda1 + lambda2); }
  cplx mu2() const { return 0.5 * (lambda1 - lambda2); }
};

// The eight signed permutations of (lambda1, lambda2).
std::array<PSParams, 8> weyl_orbit(const PSParams& p);

// diag(a1, a2, 1/a1, 1/a2).
struct TorusPoint {
  double a1 = 1.0;
  double a2 = 1.0;

  void validate() const;
};

struct ContourPair {
  ContourSpec first;
  ContourSpec second;
};

// Outcome of a double vertical-line integral.
struct MBResult {
  cplx value;
  double error = 0.0;    // change under the last panel halving
  double tail = 0.0;     // max |integrand| on the truncation boundary, times area weight
  double height1 = 0.0;
  double height2 = 0.0;
  double cancellation = 0.0;  // sum of |terms| over |value|
  int nodes = 0;
  bool converged = false;
  bool tail_flagged = false;
};

// ---------------------------------------------------------------------------
// J_n(r1, r2, r3) = int_0^inf y^(n-2) H_n(sqrt(pi)(r1 y + r2/y))
//                   exp(-pi (r1 y + r2/y)^2 - pi r3 / y^2) dy

double j_closed(int n, double r1, double r2, double r3);
double j_quad(int n, double r1, double r2, double r3, const PrecisionConfig& cfg = {});

// h_n(a1, a2) by one-dimensional quadrature.
double h_fn(int n, double a1, double a2, const PrecisionConfig& cfg = {});

// Gamma-product side of the double Mellin transform of h_n.
cplx h_mellin_closed(int n, cplx s1, cplx s2);

// (double quadrature of x1^(s1-1) x2^(s2-1) h_n, Gamma-product).
std::pair<cplx, cplx> h_mellin_check(int n, cplx s1, cplx s2, const PrecisionConfig& cfg = {});

// ---------------------------------------------------------------------------
// Discrete series

// 2^(-lambda1-4) pi^((-3 lambda1 + lambda2 - 5)/2)
double ds_prefactor(const DSParams& p);

ContourPair ds_default_contours();
void ds_check_contours(const ContourPair& c);

double ds_whittaker_direct(const DSParams& p, const TorusPoint& t, const PrecisionConfig& cfg = {});

// exp(-2 pi a2^2) times the double contour integral, without the prefactor.
MBResult ds_mb_integral(const DSParams& p, const TorusPoint& t, const ContourPair& c,
                        const PrecisionConfig& cfg = {});

double ds_whittaker_mb(const DSParams& p, const TorusPoint& t, const ContourPair& c,
                       const PrecisionConfig& cfg = {});
double ds_whittaker_mb(const DSParams& p, const TorusPoint& t, const PrecisionConfig& cfg = {});

double ds_normalization(const DSParams& p, const PrecisionConfig& cfg = {});

// ---------------------------------------------------------------------------
// Principal series

// c1 = max|Re lambda_i| + 1, c2 = max|Re mu_i| + 1.
ContourPair ps_standard_contours(const PSParams& p);
// Real point of least integrand modulus inside the admissible region.
ContourPair ps_saddle_contours(const PSParams& p, const TorusPoint& t);
void ps_check_contours(const PSParams& p, const ContourPair& c);

MBResult ps_mb_integral(const PSParams& p, const TorusPoint& t, const ContourPair& c,
                        const PrecisionConfig& cfg = {});

cplx ps_whittaker_mb(const PSParams& p, const TorusPoint& t, const ContourPair& c,
                     const PrecisionConfig& cfg = {});
// Uses ps_saddle_contours.
cplx ps_whittaker_mb(const PSParams& p, const TorusPoint& t, const PrecisionConfig& cfg = {});

cplx ps_whittaker_direct(const PSParams& p, const TorusPoint& t, const PrecisionConfig& cfg = {});

cplx ps_normalization(const PSParams& p, const PrecisionConfig& cfg = {});

}  // namespace gspnorm::whittaker
