#include "gspnorm/special.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

namespace gspnorm::special {

namespace {

constexpr double kPi = std::numbers::pi;

// Lanczos approximation, g = 607/128, 15 terms.
constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczos = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};

bool nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

cplx log_gamma_lanczos(cplx z) {
  const cplx zm = z - 1.0;
  cplx series = kLanczos[0];
  for (int i = 1; i < 15; ++i) series += kLanczos[i] / (zm + static_cast<double>(i));
  const cplx t = zm + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * kPi) + (zm + 0.5) * std::log(t) - t + std::log(series);
}

}  // namespace

cplx log_gamma(cplx z) {
  if (nonpositive_integer(z))
    throw PoleError("log_gamma: pole at z = " + std::to_string(z.real()));
  if (z.real() >= 0.5) return log_gamma_lanczos(z);
  const int shift = static_cast<int>(std::ceil(0.5 - z.real()));
  if (shift > 2000) throw DomainError("log_gamma: real part too negative");
  cplx acc = 0.0;
  for (int k = 0; k < shift; ++k) acc += std::log(z + static_cast<double>(k));
  return log_gamma_lanczos(z + static_cast<double>(shift)) - acc;
}

cplx gamma(cplx z) { return std::exp(log_gamma(z)); }

double gamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) throw PoleError("gamma: pole at " + std::to_string(x));
  return std::tgamma(x);
}

cplx rgamma(cplx z) {
  if (nonpositive_integer(z)) return 0.0;
  return std::exp(-log_gamma(z));
}

// K_nu(x) = int_0^inf exp(-x cosh u) cosh(nu u) du, the defining integral
// after t = e^u. The integrand decays double exponentially in u, so the plain
// trapezoid rule is already a double-exponential rule.
cplx bessel_k(cplx nu, double x) {
  if (!(x > 0.0)) throw DomainError("bessel_k: x must be positive");
  const double a = std::abs(nu.real());
  const double ustar = std::asinh(a / x);
  const double gstar = -x * std::cosh(ustar) + a * ustar;
  double U = ustar;
  while (-x * std::cosh(U) + a * U > gstar - 46.0) U += 0.25;

  auto f = [&](double u) {
    const double e = -x * std::cosh(u);
    return 0.5 * (std::exp(e + nu * u) + std::exp(e - nu * u));
  };

  double h = 0.5;
  cplx sum = 0.5 * f(0.0);
  for (int j = 1; j <= static_cast<int>(U / h); ++j) sum += f(j * h);
  cplx est = sum * h;
  for (int level = 0; level < 14; ++level) {
    h *= 0.5;
    cplx odd = 0.0;
    const int count = static_cast<int>(U / h);
    for (int j = 1; j <= count; j += 2) odd += f(j * h);
    sum += odd;
    const cplx next = sum * h;
    const double change = std::abs(next - est);
    est = next;
    if (level >= 1 && change <= 1e-15 * std::abs(est)) return est;
  }
  return est;
}

double bessel_k(double nu, double x) { return bessel_k(cplx(nu, 0.0), x).real(); }

double hermite(int n, double x) { return hermite_scaled(n, x).value(); }

double Scaled::value() const { return std::ldexp(mantissa, exponent); }

Scaled hermite_scaled(int n, double x) {
  if (n < 0) throw DomainError("hermite: negative degree");
  if (n > 60) throw DomainError("hermite: degree above 60 not supported");
  if (n == 0) return {1.0, 0};
  double prev = 1.0, cur = 2.0 * x;
  int exponent = 0;
  for (int k = 1; k < n; ++k) {
    double next = 2.0 * x * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > 0x1p500) {
      cur = std::ldexp(cur, -500);
      prev = std::ldexp(prev, -500);
      exponent += 500;
    }
  }
  return {cur, exponent};
}

LocalZetaPlace LocalZetaPlace::finite(long q) {
  if (q < 2) throw DomainError("finite place needs q >= 2");
  return {Kind::finite, q};
}

cplx zeta_local(const LocalZetaPlace& place, cplx s) {
  if (place.kind == LocalZetaPlace::Kind::finite) {
    if (place.q < 2) throw DomainError("finite place needs q >= 2");
    const cplx x = std::exp(-s * std::log(static_cast<double>(place.q)));
    if (std::abs(1.0 - x) < 1e-15) throw PoleError("zeta_local: q^-s = 1");
    return 1.0 / (1.0 - x);
  }
  if (nonpositive_integer(0.5 * s)) throw PoleError("zeta_local: pole of Gamma(s/2)");
  return std::exp(-0.5 * s * std::log(kPi) + log_gamma(0.5 * s));
}

double zeta_local(const LocalZetaPlace& place, double s) {
  if (place.kind == LocalZetaPlace::Kind::finite) {
    if (place.q < 2) throw DomainError("finite place needs q >= 2");
    if (s == 0.0) throw PoleError("zeta_local: q^-s = 1");
    return 1.0 / (1.0 - std::pow(static_cast<double>(place.q), -s));
  }
  const double half = 0.5 * s;
  if (half <= 0.0 && half == std::floor(half)) throw PoleError("zeta_local: pole of Gamma(s/2)");
  return std::pow(kPi, -half) * std::tgamma(half);
}

Rational zeta_local_exact(long q, long s) {
  if (q < 2) throw DomainError("finite place needs q >= 2");
  if (s == 0) throw PoleError("zeta_local_exact: pole at s = 0");
  return Rational(1) / (Rational(1) - rpow(q, -s));
}

}  // namespace gspnorm::special
