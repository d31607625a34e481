#include "gspnorm/numkit.hpp"

#include <algorithm>
#include <numbers>
#include <thread>

namespace gspnorm::numkit {

void PrecisionConfig::validate() const {
  if (!(target_rel_tol > 0.0 && target_rel_tol < 1.0))
    throw DomainError("target_rel_tol must lie in (0, 1)");
  if (max_nodes < 16) throw DomainError("max_nodes must be at least 16");
  if (jobs < 1) throw DomainError("jobs must be positive");
}

void ContourSpec::validate() const {
  if (nodes < 64) throw DomainError("contour needs at least 64 nodes");
  if (T < 0.0) throw DomainError("contour height must be positive");
}

std::vector<Node> gauss_legendre(int order) {
  if (order < 1) throw DomainError("Gauss-Legendre order must be positive");
  std::vector<Node> out(order);
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= order; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
      }
      dp = order * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    // Recompute the derivative at the converged root.
    double p0 = 1.0, p1 = 0.0;
    for (int j = 1; j <= order; ++j) {
      double p2 = p1;
      p1 = p0;
      p0 = ((2.0 * j - 1.0) * z * p1 - (j - 1.0) * p2) / j;
    }
    dp = order * (z * p0 - p1) / (z * z - 1.0);
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    out[i] = {-z, w};
    out[order - 1 - i] = {z, w};
  }
  return out;
}

std::vector<Node> gauss_hermite(int order) {
  if (order < 1) throw DomainError("Gauss-Hermite order must be positive");
  if (order > 200) throw DomainError("Gauss-Hermite order capped at 200");
  const int n = order;
  std::vector<double> x(n), w(n);
  const double pim4 = std::pow(std::numbers::pi, -0.25);
  const int half = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    if (i == 0) z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    else if (i == 1) z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    else if (i == 2) z = 1.86 * z - 0.86 * x[0];
    else if (i == 3) z = 1.91 * z - 0.91 * x[1];
    else z = 2.0 * z - x[i - 2];
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = pim4, p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    double p1 = pim4, p2 = 0.0;
    for (int j = 1; j <= n; ++j) {
      double p3 = p2;
      p2 = p1;
      p1 = z * std::sqrt(2.0 / j) * p2 - std::sqrt((j - 1.0) / j) * p3;
    }
    pp = std::sqrt(2.0 * n) * p2;
    x[i] = z;
    w[i] = 2.0 / (pp * pp);
    x[n - 1 - i] = -z;
    w[n - 1 - i] = w[i];
  }
  if (n % 2 == 1) x[n / 2] = 0.0;
  std::vector<Node> out(n);
  for (int i = 0; i < n; ++i) out[i] = {x[n - 1 - i], w[n - 1 - i]};
  return out;
}

std::vector<Node> de_rule(const DEMap& map, double h, double tmax) {
  std::vector<Node> out;
  const int k = static_cast<int>(tmax / h);
  out.reserve(2 * k + 1);
  for (int j = -k; j <= k; ++j) {
    double x = 0.0, w = 0.0;
    map(j * h, x, w);
    if (!(w > 0.0) || !std::isfinite(w) || !std::isfinite(x)) continue;
    if (map.domain == DEDomain::halfline && x == 0.0) continue;
    if (map.domain == DEDomain::interval && (x <= map.a || x >= map.b)) continue;
    out.push_back({x, w * h});
  }
  return out;
}

QuadResult<double> integrate_halfline(const std::function<double(double)>& f,
                                      const QuadratureRule& rule,
                                      const PrecisionConfig& cfg) {
  if (rule.kind != RuleKind::tanh_sinh_halfline)
    throw DomainError("integrate_halfline requires a tanh-sinh half-line rule");
  cfg.validate();
  return integrate_de<double>(f, DEMap{DEDomain::halfline}, cfg);
}

std::vector<ContourNode> contour_nodes(double c, double T, double panel_width, int order) {
  const int panels = std::max(1, static_cast<int>(std::ceil(2.0 * T / panel_width - 1e-9)));
  const double width = 2.0 * T / panels;
  const auto gl = gauss_legendre(order);
  std::vector<ContourNode> out;
  out.reserve(static_cast<std::size_t>(panels) * order);
  for (int p = 0; p < panels; ++p) {
    const double mid = -T + (p + 0.5) * width;
    for (const auto& nd : gl)
      out.push_back({cplx(c, mid + 0.5 * width * nd.x), nd.w * 0.5 * width / (2.0 * std::numbers::pi)});
  }
  return out;
}

double contour_height(const std::function<double(double)>& abs_g, double rel, double Tmax) {
  double scale = 0.0;
  std::vector<double> samples;
  for (double t = 0.0; t <= Tmax; t += 0.5) {
    samples.push_back(abs_g(t));
    scale = std::max(scale, samples.back());
  }
  if (scale == 0.0) return 2.0;
  // Last sampled point above threshold, rounded up to an even height.
  double last = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i)
    if (samples[i] >= rel * scale) last = 0.5 * i;
  double T = 2.0 * std::ceil((last + 1.0) / 2.0);
  return std::min(std::max(T, 2.0), Tmax);
}

namespace {

cplx panel_sum(const std::function<cplx(cplx)>& g, double c, double T, double width, int order,
               WorkingMode mode, int& count) {
  const auto nodes = contour_nodes(c, T, width, order);
  Accumulator<cplx> acc(mode);
  for (const auto& nd : nodes) acc.add(g(nd.s) * nd.w);
  count += static_cast<int>(nodes.size());
  return acc.value();
}

}  // namespace

ContourResult contour_line(const std::function<cplx(cplx)>& g, const ContourSpec& spec,
                           const PrecisionConfig& cfg) {
  spec.validate();
  cfg.validate();
  ContourResult res;
  const double c = spec.c;
  double T = spec.T;
  if (T == 0.0) {
    auto abs_line = [&](double t) { return std::max(std::abs(g({c, t})), std::abs(g({c, -t}))); };
    T = contour_height(abs_line, cfg.target_rel_tol * 1e-2);
  }
  const int panels = std::max(1, static_cast<int>(std::ceil(T)));
  const int order = std::clamp(spec.nodes / panels, 8, 64);

  double width = 2.0;
  cplx prev = panel_sum(g, c, T, width, order, cfg.mode, res.nodes);
  for (int level = 0; level < 10; ++level) {
    width *= 0.5;
    cplx next = panel_sum(g, c, T, width, order, cfg.mode, res.nodes);
    res.error = std::abs(next - prev);
    res.value = next;
    prev = next;
    if (res.error <= cfg.target_rel_tol * std::abs(next)) {
      res.converged = true;
      break;
    }
    if (res.nodes > cfg.max_nodes) break;
  }
  res.height = T;
  res.tail = std::max(std::abs(g({c, T})), std::abs(g({c, -T}))) / (2.0 * std::numbers::pi);
  res.tail_flagged = res.tail > cfg.target_rel_tol * std::abs(res.value);
  return res;
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  const std::size_t workers = std::min<std::size_t>(std::max(1, jobs), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = w; i < n; i += workers) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

}  // namespace gspnorm::numkit
