#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <string>
#include <type_traits>
#include <vector>

#include "gspnorm/error.hpp"

namespace gspnorm::numkit {

using cplx = std::complex<double>;

enum class WorkingMode { machine_double, extended };

struct PrecisionConfig {
  double target_rel_tol = 1e-12;
  int max_nodes = 1 << 16;
  WorkingMode mode = WorkingMode::machine_double;
  int jobs = 1;

  void validate() const;
};

// ---------------------------------------------------------------------------
// Summation. In extended mode partial sums are carried as unevaluated
// double-double pairs (Knuth two-sum), otherwise as plain doubles.

struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  void add(double x) {
    double s = hi + x;
    double bp = s - hi;
    double err = (hi - (s - bp)) + (x - bp);
    lo += err;
    hi = s + lo;
    lo -= hi - s;
  }
  double value() const { return hi + lo; }
};

template <class T>
class Accumulator;

template <>
class Accumulator<double> {
 public:
  explicit Accumulator(WorkingMode mode = WorkingMode::machine_double)
      : extended_(mode == WorkingMode::extended) {}
  void add(double x) {
    if (extended_) dd_.add(x);
    else plain_ += x;
  }
  double value() const { return extended_ ? dd_.value() : plain_; }

 private:
  bool extended_;
  double plain_ = 0.0;
  DoubleDouble dd_;
};

template <>
class Accumulator<cplx> {
 public:
  explicit Accumulator(WorkingMode mode = WorkingMode::machine_double)
      : re_(mode), im_(mode) {}
  void add(cplx x) {
    re_.add(x.real());
    im_.add(x.imag());
  }
  cplx value() const { return {re_.value(), im_.value()}; }

 private:
  Accumulator<double> re_, im_;
};

inline double magnitude(double x) { return std::abs(x); }
inline double magnitude(cplx x) { return std::abs(x); }
inline bool finite_value(double x) { return std::isfinite(x); }
inline bool finite_value(cplx x) { return std::isfinite(x.real()) && std::isfinite(x.imag()); }

// ---------------------------------------------------------------------------
// Rules

enum class RuleKind { gauss_legendre, tanh_sinh_halfline, gauss_hermite };

struct QuadratureRule {
  RuleKind kind = RuleKind::tanh_sinh_halfline;
  int order = 64;
  int dimension = 1;
};

struct Node {
  double x;
  double w;
};

// Gauss-Legendre on [-1, 1].
std::vector<Node> gauss_legendre(int order);

// Gauss-Hermite for the weight exp(-x^2) on the real line.
std::vector<Node> gauss_hermite(int order);

template <class T>
struct QuadResult {
  T value{};
  double error = 0.0;
  int nodes = 0;
  bool converged = false;

  // Throws ConvergenceError when the estimate did not settle.
  const T& require(const std::string& context) const {
    if (!converged)
      throw ConvergenceError(context + ": quadrature did not converge (last change " +
                                 std::to_string(error) + ")",
                             magnitude(value), magnitude(value) + error);
    return value;
  }
};

// ---------------------------------------------------------------------------
// Double-exponential (tanh-sinh family) quadrature.
//
//   halfline: x = exp(pi/2 sinh t)            on (0, inf)
//   line:     x = sinh(pi/2 sinh t)           on (-inf, inf)
//   interval: x = mid + rad tanh(pi/2 sinh t) on (a, b)
//
// Trapezoid levels h = 2^-k share nodes, so each level adds only the odd
// multiples of h.

enum class DEDomain { halfline, line, interval };

struct DEMap {
  DEDomain domain;
  double a = 0.0;
  double b = 1.0;

  // Abscissa and Jacobian at parameter t.
  void operator()(double t, double& x, double& w) const {
    constexpr double half_pi = 1.5707963267948966;
    const double sh = half_pi * std::sinh(t);
    const double ch = half_pi * std::cosh(t);
    switch (domain) {
      case DEDomain::halfline:
        x = std::exp(sh);
        w = x * ch;
        break;
      case DEDomain::line:
        x = std::sinh(sh);
        w = std::cosh(sh) * ch;
        break;
      case DEDomain::interval: {
        // Offset from the nearer endpoint, without cancellation.
        const double c = std::cosh(sh);
        x = sh < 0.0 ? a + (b - a) / (1.0 + std::exp(-2.0 * sh)) : b - (b - a) / (1.0 + std::exp(2.0 * sh));
        w = 0.5 * (b - a) * ch / (c * c);
        break;
      }
    }
  }
};

// Fixed-step rule: all nodes of the trapezoid with step h on [-tmax, tmax].
std::vector<Node> de_rule(const DEMap& map, double h, double tmax = 6.5);

template <class T, class F>
QuadResult<T> integrate_de(F&& f, const DEMap& map, const PrecisionConfig& cfg) {
  constexpr double tmax = 6.5;
  QuadResult<T> res;
  auto term = [&](double t) -> T {
    double x = 0.0, w = 0.0;
    map(t, x, w);
    if (!(w > 0.0) || !std::isfinite(w) || !std::isfinite(x)) return T{};
    if (map.domain == DEDomain::halfline && x == 0.0) return T{};
    if (map.domain == DEDomain::interval && (x <= map.a || x >= map.b)) return T{};
    T v = f(x) * w;
    if (!finite_value(v)) {
      if (std::abs(t) > 2.0) return T{};
      throw DomainError("integrand not finite at interior node x=" + std::to_string(x));
    }
    return v;
  };

  // Coarse pass at h = 1/2 fixes the active window.
  double h = 0.5;
  const int kmax = static_cast<int>(tmax / h);
  std::vector<T> coarse(2 * kmax + 1);
  double peak = 0.0;
  for (int j = -kmax; j <= kmax; ++j) {
    coarse[j + kmax] = term(j * h);
    peak = std::max(peak, magnitude(coarse[j + kmax]));
  }
  res.nodes = 2 * kmax + 1;
  if (peak == 0.0) {
    res.converged = true;
    return res;
  }
  int lo = -kmax, hi = kmax;
  const double floor = peak * 1e-19;
  while (lo < 0 && magnitude(coarse[lo + kmax]) < floor && magnitude(coarse[lo + 1 + kmax]) < floor) ++lo;
  while (hi > 0 && magnitude(coarse[hi + kmax]) < floor && magnitude(coarse[hi - 1 + kmax]) < floor) --hi;
  const double tlo = std::max(-tmax, (lo - 1) * h), thi = std::min(tmax, (hi + 1) * h);

  Accumulator<T> acc(cfg.mode);
  double mass = 0.0;
  for (int j = lo; j <= hi; ++j) {
    acc.add(coarse[j + kmax]);
    mass += magnitude(coarse[j + kmax]);
  }
  T sum = acc.value();
  T est = sum * h;
  double prev_change = std::numeric_limits<double>::infinity();

  for (int level = 0; level < 12; ++level) {
    h *= 0.5;
    Accumulator<T> odd(cfg.mode);
    int count = 0;
    const int jlo = static_cast<int>(std::ceil(tlo / h)), jhi = static_cast<int>(std::floor(thi / h));
    for (int j = jlo; j <= jhi; ++j) {
      if ((j & 1) == 0) continue;
      T v = term(j * h);
      odd.add(v);
      mass += magnitude(v);
      ++count;
    }
    res.nodes += count;
    Accumulator<T> merged(cfg.mode);
    merged.add(sum);
    merged.add(odd.value());
    sum = merged.value();
    T next = sum * h;
    const double change = magnitude(next - est);
    est = next;
    res.value = est;
    res.error = change;
    const double scale = magnitude(est);
    const double noise = 64.0 * std::numeric_limits<double>::epsilon() * mass * h;
    if (level >= 1 && (change <= cfg.target_rel_tol * scale || change <= noise)) {
      res.converged = true;
      return res;
    }
    if (level >= 3 && change >= prev_change && change <= noise * 1e3) {
      // Rounding floor reached.
      res.converged = change <= 1e3 * noise && noise <= cfg.target_rel_tol * scale;
      return res;
    }
    prev_change = change;
    if (res.nodes > cfg.max_nodes) break;
  }
  return res;
}

template <class F>
auto integrate_halfline(F&& f, const PrecisionConfig& cfg) {
  using T = std::decay_t<decltype(f(1.0))>;
  return integrate_de<T>(std::forward<F>(f), DEMap{DEDomain::halfline}, cfg);
}

template <class F>
auto integrate_line(F&& f, const PrecisionConfig& cfg) {
  using T = std::decay_t<decltype(f(1.0))>;
  return integrate_de<T>(std::forward<F>(f), DEMap{DEDomain::line}, cfg);
}

template <class F>
auto integrate_interval(F&& f, double a, double b, const PrecisionConfig& cfg) {
  using T = std::decay_t<decltype(f(1.0))>;
  return integrate_de<T>(std::forward<F>(f), DEMap{DEDomain::interval, a, b}, cfg);
}

// Rule-driven entry point; only the half-line kind is accepted.
QuadResult<double> integrate_halfline(const std::function<double(double)>& f,
                                      const QuadratureRule& rule,
                                      const PrecisionConfig& cfg);

// ---------------------------------------------------------------------------
// Tensor-product Gauss-Hermite: integral of f(x) exp(-|x|^2) over R^dim.

template <class F>
auto integrate_tensor_hermite(F&& f, int order, int dim) {
  using T = std::decay_t<decltype(f(static_cast<const double*>(nullptr)))>;
  if (dim < 1 || dim > 4) throw DomainError("tensor Gauss-Hermite supports dimension 1..4");
  if (order < 1) throw DomainError("Gauss-Hermite order must be positive");
  const auto rule = gauss_hermite(order);
  const int n = order;
  long total = 1;
  for (int d = 0; d < dim; ++d) total *= n;
  Accumulator<T> acc;
  double x[4] = {0, 0, 0, 0};
  int idx[4] = {0, 0, 0, 0};
  for (long k = 0; k < total; ++k) {
    long r = k;
    double w = 1.0;
    for (int d = 0; d < dim; ++d) {
      idx[d] = static_cast<int>(r % n);
      r /= n;
      x[d] = rule[idx[d]].x;
      w *= rule[idx[d]].w;
    }
    acc.add(f(static_cast<const double*>(x)) * w);
  }
  return acc.value();
}

// ---------------------------------------------------------------------------
// Vertical-line contour integrals (1/2 pi i) int_{c-iT}^{c+iT} g(s) ds.

struct ContourSpec {
  double c = 1.0;
  double T = 0.0;  // 0 selects the height adaptively
  int nodes = 256;

  void validate() const;
};

struct ContourNode {
  cplx s;
  double w;  // includes the 1/(2 pi) from ds/(2 pi i)
};

// Gauss-Legendre panels of the given width covering [-T, T].
std::vector<ContourNode> contour_nodes(double c, double T, double panel_width, int order);

struct ContourResult {
  cplx value;
  double error = 0.0;  // change under panel halving
  double tail = 0.0;   // max |g(c +- iT)| / (2 pi)
  double height = 0.0;
  int nodes = 0;
  bool converged = false;
  bool tail_flagged = false;
};

ContourResult contour_line(const std::function<cplx(cplx)>& g, const ContourSpec& spec,
                           const PrecisionConfig& cfg);

// Smallest even height T <= Tmax with max |g(c +- iT')| < rel * scale for all T' >= T
// on the sampled grid, where scale = max |g| on the line.
double contour_height(const std::function<double(double)>& abs_g, double rel, double Tmax = 400.0);

// ---------------------------------------------------------------------------
// Deterministic parallel map: out[i] = fn(i), split over `jobs` threads.

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

}  // namespace gspnorm::numkit
