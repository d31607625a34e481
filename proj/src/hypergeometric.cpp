#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "gspnorm/special.hpp"

namespace gspnorm::special {

namespace {

// B_0 .. B_20.
constexpr std::array<double, 21> kBernoulli = {
    1.0,          -0.5,   1.0 / 6.0,        0.0, -1.0 / 30.0,        0.0, 1.0 / 42.0,
    0.0,          -1.0 / 30.0,              0.0, 5.0 / 66.0,         0.0, -691.0 / 2730.0,
    0.0,          7.0 / 6.0,                0.0, -3617.0 / 510.0,    0.0, 43867.0 / 798.0,
    0.0,          -174611.0 / 330.0};

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

cplx bernoulli_poly(int m, cplx x) {
  cplx acc = 0.0;
  cplx pw = 1.0;  // x^(m-k), built from k = m downwards
  for (int k = m; k >= 0; --k) {
    acc += binomial(m, k) * kBernoulli[k] * pw;
    pw *= x;
  }
  return acc;
}

// Hurwitz zeta sum_{k>=0} (k + N)^-sigma by Euler-Maclaurin at large N.
cplx hurwitz_tail(cplx sigma, double N) {
  const double logN = std::log(N);
  const cplx npow = std::exp(-sigma * logN);  // N^-sigma
  cplx acc = npow * N / (sigma - 1.0) + 0.5 * npow;
  cplx poch = sigma;  // (sigma)_{2j-1}
  double fact = 2.0;  // (2j)!
  double npw = 1.0 / N;
  for (int j = 1; j <= 9; ++j) {
    acc += kBernoulli[2 * j] / fact * poch * npow * npw;
    poch *= (sigma + (2.0 * j - 1.0)) * (sigma + 2.0 * j);
    fact *= (2.0 * j + 1.0) * (2.0 * j + 2.0);
    npw /= N * N;
  }
  return acc;
}

bool nonpositive_integer(cplx z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace

// Partial sum to N terms, then the tail from the large-k expansion
//   t_k = C k^(-1-s) exp(sum_m c_m k^-m),
//   c_m = (-1)^(m+1) / (m(m+1)) [sum_i B_{m+1}(a_i) - sum_j B_{m+1}(b_j) - B_{m+1}(1)],
// summed termwise as Hurwitz zeta values.
cplx hyp3f2_unit(cplx a1, cplx a2, cplx a3, cplx b1, cplx b2) {
  const std::array<cplx, 3> a = {a1, a2, a3};
  const std::array<cplx, 2> b = {b1, b2};
  for (const auto& bj : b)
    if (nonpositive_integer(bj)) throw PoleError("hyp3f2_unit: denominator parameter at a pole");

  // Terminating series.
  for (const auto& ai : a) {
    if (nonpositive_integer(ai)) {
      const int len = static_cast<int>(-ai.real());
      cplx term = 1.0, sum = 1.0;
      for (int k = 0; k < len; ++k) {
        term *= (a1 + double(k)) * (a2 + double(k)) * (a3 + double(k)) /
                ((b1 + double(k)) * (b2 + double(k)) * double(k + 1));
        sum += term;
      }
      return sum;
    }
  }

  const cplx s = b1 + b2 - a1 - a2 - a3;
  if (!(s.real() > 0.0)) throw DomainError("hyp3f2_unit: series diverges at unit argument");

  double big = 1.0;
  for (const auto& ai : a) big = std::max(big, std::abs(ai));
  for (const auto& bj : b) big = std::max(big, std::abs(bj));
  const int N = static_cast<int>(std::max(64.0, std::ceil(8.0 * big + 2.0 * std::abs(s))));

  cplx term = 1.0, partial = 0.0;
  for (int k = 0; k < N; ++k) {
    partial += term;
    const double kk = k;
    term *= (a1 + kk) * (a2 + kk) * (a3 + kk) / ((b1 + kk) * (b2 + kk) * (kk + 1.0));
  }

  constexpr int J = 12;
  std::array<cplx, J + 1> c{}, e{};
  for (int m = 1; m <= J; ++m) {
    cplx acc = -bernoulli_poly(m + 1, 1.0);
    for (const auto& ai : a) acc += bernoulli_poly(m + 1, ai);
    for (const auto& bj : b) acc -= bernoulli_poly(m + 1, bj);
    c[m] = ((m % 2 == 1) ? 1.0 : -1.0) / (m * (m + 1.0)) * acc;
  }
  e[0] = 1.0;
  for (int j = 1; j <= J; ++j) {
    cplx acc = 0.0;
    for (int m = 1; m <= j; ++m) acc += double(m) * c[m] * e[j - m];
    e[j] = acc / double(j);
  }

  const cplx logC = log_gamma(b1) + log_gamma(b2) - log_gamma(a1) - log_gamma(a2) - log_gamma(a3);
  cplx tail = 0.0;
  for (int j = 0; j <= J; ++j) tail += e[j] * hurwitz_tail(1.0 + s + double(j), N);
  return partial + std::exp(logC) * tail;
}

}  // namespace gspnorm::special
