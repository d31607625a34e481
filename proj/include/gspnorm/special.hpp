#pragma once

#include <complex>

#include "gspnorm/numkit.hpp"
#include "gspnorm/rational.hpp"

namespace gspnorm::special {

using numkit::cplx;

// Principal branch of log Gamma.
cplx log_gamma(cplx z);
cplx gamma(cplx z);
double gamma(double x);
// 1/Gamma, entire; zero at the non-positive integers.
cplx rgamma(cplx z);

// K_nu(x) = 1/2 int_0^inf exp(-x (t + 1/t)/2) t^(nu-1) dt for x > 0.
cplx bessel_k(cplx nu, double x);
double bessel_k(double nu, double x);

// 3F2(a1, a2, a3; b1, b2; 1), Re(b1 + b2 - a1 - a2 - a3) > 0.
cplx hyp3f2_unit(cplx a1, cplx a2, cplx a3, cplx b1, cplx b2);

// Physicists' Hermite polynomial, n <= 60.
double hermite(int n, double x);

// H_n(x) = mantissa * 2^exponent, safe where H_n overflows a double.
struct Scaled {
  double mantissa;
  int exponent;
  double value() const;
};
Scaled hermite_scaled(int n, double x);

struct LocalZetaPlace {
  enum class Kind { finite, real } kind = Kind::real;
  long q = 0;

  static LocalZetaPlace finite(long q);
  static LocalZetaPlace real() { return {}; }
};

// (1 - q^-s)^-1 at a finite place, pi^(-s/2) Gamma(s/2) at the real place.
cplx zeta_local(const LocalZetaPlace& place, cplx s);
double zeta_local(const LocalZetaPlace& place, double s);
// Exact value at a finite place and integer s.
Rational zeta_local_exact(long q, long s);

// zeta_R(s) shorthand.
inline double zeta_real(double s) { return zeta_local(LocalZetaPlace::real(), s); }
inline cplx zeta_real(cplx s) { return zeta_local(LocalZetaPlace::real(), s); }

}  // namespace gspnorm::special
