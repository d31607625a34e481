#include "gspnorm/padic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "gspnorm/special.hpp"

namespace gspnorm::padic {

namespace {

Rational zeta_q(long q, long s) { return special::zeta_local_exact(q, s); }

double qpow(long q, double e) { return std::pow(static_cast<double>(q), e); }

// alpha^k (1 - alpha^-2/q)/(1 - alpha^-2) + alpha^-k (1 - alpha^2/q)/(1 - alpha^2)
cplx macdonald_bracket(double q, cplx a, int k) {
  const cplx a2 = a * a;
  return std::pow(a, k) * (1.0 - 1.0 / (a2 * q)) / (1.0 - 1.0 / a2) +
         std::pow(a, -k) * (1.0 - a2 / q) / (1.0 - a2);
}

// Same bracket as chi_k(a) - chi_(k-2)(a)/q with chi_k(a) = sum_j a^(k-2j); no pole at a^2 = 1.
cplx character_bracket(double q, cplx a, int k) {
  auto chi = [&](int j) -> cplx {
    if (j == -1) return 0.0;
    if (j == -2) return -1.0;
    cplx s = 0.0, x = std::pow(a, j);
    const cplx step = 1.0 / (a * a);
    for (int i = 0; i <= j; ++i, x *= step) s += x;
    return s;
  };
  return chi(k) - chi(k - 2) / q;
}

int iabs(int x) { return std::abs(x); }

}  // namespace

void FinitePlace::validate() const {
  if (q < 2) throw DomainError("residue field size q must be >= 2");
  if (c < 0) throw DomainError("conductor exponent must be >= 0");
}

void IIaParams::validate() const {
  if (epsilon != 0 && epsilon != 1) throw DomainError("IIa sign must be 0 or 1");
  if (!(std::abs(lambda.real()) < 0.5)) throw DomainError("IIa parameter needs |Re lambda| < 1/2");
}

cplx IIaParams::alpha(const FinitePlace& place) const {
  return std::exp(lambda * std::log(static_cast<double>(place.q)));
}

cplx macdonald_iia(const FinitePlace& place, const IIaParams& p, const Cell& cell, SingularMode mode) {
  place.validate();
  p.validate();
  if (cell.n + cell.m < 0) throw DomainError("cell needs n + m >= 0");
  const double q = static_cast<double>(place.q);
  const cplx a = p.alpha(place);
  const int k = cell.n + cell.m;
  const double gap = std::abs(a * a - 1.0);
  if (mode == SingularMode::strict && gap < 1e-12)
    throw PoleError("Macdonald coefficient at alpha = +-1 needs limit mode");
  const cplx bracket = gap < 1e-2 ? character_bracket(q, a, k) : macdonald_bracket(q, a, k);
  const double z21 = (1.0 - 1.0 / q) / (1.0 - 1.0 / (q * q));
  const double sgn = (iabs(cell.n - cell.m) % 2 == 1) ? p.sign() : 1.0;
  const int dist = cell.w ? iabs(cell.n - cell.m - 1) : iabs(cell.n - cell.m);
  const double mag = qpow(place.q, -dist - 0.5 * k) / (1.0 + 1.0 / q);
  return (cell.w ? -1.0 : 1.0) * z21 * sgn * mag * bracket;
}

Rational weil_phi_finite(PlaceType type, const FinitePlace& place, const Cell& cell) {
  place.validate();
  const int n = cell.n, m = cell.m;
  if (type == PlaceType::unram) {
    if (cell.w) throw DomainError("unramified Weil coefficient is tabulated on h_{n,m} only");
    return rpow(place.q, -2 * iabs(n) - 2 * iabs(m));
  }
  // div_n2 carries the same values with the two GL2 factors interchanged.
  if (!cell.w) return rpow(place.q, -2 * iabs(n) - 2 * iabs(m) - 2);
  return rpow(place.q, -iabs(n) - iabs(n - 1) - iabs(m) - iabs(m + 1) - 2);
}

Rational coset_card(const FinitePlace& place, const Cell& cell) {
  place.validate();
  const int k = cell.n + cell.m;
  if (k < 0) throw DomainError("double coset representative needs n + m >= 0");
  const int dist = cell.w ? iabs(cell.n - cell.m - 1) : iabs(cell.n - cell.m);
  if (k == 0) return rpow(place.q, dist);
  return rpow(place.q, k + dist) * (Rational(1) + Rational(1, place.q));
}

cplx ExactLFactor::operator()(cplx s) const {
  const cplx x = std::exp(-s * std::log(static_cast<double>(q)));
  auto horner = [&](const std::vector<cplx>& c) {
    cplx r = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
  };
  const cplx den = horner(denominator);
  if (std::abs(den) < 1e-14) throw PoleError("Euler factor evaluated at a pole");
  return horner(numerator) / den;
}

ExactLFactor l_std_gl2pair(const FinitePlace& place, const IIaParams& p) {
  place.validate();
  p.validate();
  const cplx a = p.alpha(place);
  const double r = 1.0 / std::sqrt(static_cast<double>(place.q));
  ExactLFactor f;
  f.q = place.q;
  f.denominator = {1.0, -p.sign() * (a + 1.0 / a) * r, cplx(r * r)};
  return f;
}

cplx l_std_gl2pair(const FinitePlace& place, const IIaParams& p, cplx s) {
  return l_std_gl2pair(place, p)(s);
}

cplx iia_rallis_zeta_series(const FinitePlace& place, const IIaParams& p, int N) {
  place.validate();
  p.validate();
  if (N < 1) throw DomainError("truncation N must be >= 1");
  numkit::Accumulator<cplx> acc(numkit::WorkingMode::extended);
  for (int n = -N; n <= N; ++n)
    for (int m = std::max(-N, -n); m <= N; ++m)
      for (bool w : {false, true}) {
        const Cell cell{n, m, w};
        const double weight = to_double(weil_phi_finite(PlaceType::div_n1, place, cell) * coset_card(place, cell));
        acc.add(weight * macdonald_iia(place, p, cell, SingularMode::limit));
      }
  const double q = static_cast<double>(place.q);
  const double z2z4 = to_double(zeta_q(place.q, 2) * zeta_q(place.q, 4));
  return 0.25 * z2z4 / l_std_gl2pair(place, p, 1.0) / (1.0 + q) * acc.value();
}

double iia_tail_bound(const FinitePlace& place, const IIaParams& p, int N) {
  const double r = qpow(place.q, -0.5 + std::abs(p.lambda.real()));
  return 8.0 * (N + 1) * std::pow(r, N) / ((1.0 - r) * (1.0 - r));
}

Rational iia_rallis_zeta_closed(const FinitePlace& place) {
  place.validate();
  const Rational z1 = zeta_q(place.q, 1);
  return Rational(1, 4) * rpow(place.q, -3) * zeta_q(place.q, 2) * zeta_q(place.q, 4) / (z1 * z1);
}

cplx z_subsum_closed(const FinitePlace& place, const IIaParams& p, int i) {
  place.validate();
  p.validate();
  const double q = static_cast<double>(place.q);
  const double e = p.sign();
  const cplx a = p.alpha(place);
  const double q4m1 = std::pow(q, 4) - 1.0;
  if (i == 1) return (q - 1.0 / q) * (q - 1.0 / q) / q4m1;
  const double r = std::pow(q, -1.5);
  const cplx den = (1.0 - e * a * r) * (1.0 - e * r / a);
  if (std::abs(den) < 1e-14 || std::abs(a * a - 1.0) < 1e-14)
    throw PoleError("geometric series denominator vanishes");
  const cplx shared = (e * r * (a + 1.0 / a) - std::pow(q, -3) - std::pow(q, -4)) / den;
  const double d24 = std::pow(q, -2) - std::pow(q, -4);
  switch (i) {
    case 2: return d24 * shared;
    case 3: return d24 / q4m1 * shared;
    case 4: return (std::pow(q, -2) - 1.0) / q4m1 * shared;
    default: throw DomainError("subsum index must be 1..4");
  }
}

cplx z_subsum_series(const FinitePlace& place, const IIaParams& p, int i, int N) {
  place.validate();
  p.validate();
  const double q = static_cast<double>(place.q);
  const double e = p.sign();
  const cplx a = p.alpha(place);
  auto sgn = [&](int k) { return (iabs(k) % 2 == 1) ? e : 1.0; };
  numkit::Accumulator<cplx> acc(numkit::WorkingMode::extended);
  const double d24 = std::pow(q, -2) - std::pow(q, -4);
  switch (i) {
    case 1:
      for (int n = -N; n <= N; ++n)
        acc.add(std::pow(q, -4 * iabs(n) - 2) - std::pow(q, -2 * iabs(n) - 2 * iabs(n - 1) - 2));
      return acc.value();
    case 2:
      for (int m = 1; m <= N; ++m) acc.add(sgn(m) * std::pow(q, -1.5 * m) * macdonald_bracket(q, a, m));
      return d24 * acc.value();
    case 3:
      for (int n = 1; n <= N; ++n)
        for (int m = n + 1; m <= n + N; ++m)
          acc.add(sgn(n + m) * std::pow(q, -2.5 * n - 1.5 * m) * macdonald_bracket(q, a, m - n));
      return d24 * acc.value();
    case 4:
      for (int m = 1; m <= N; ++m)
        for (int n = m + 1; n <= m + N; ++n)
          acc.add(sgn(n + m) * std::pow(q, -1.5 * n - 2.5 * m) * macdonald_bracket(q, a, n - m));
      return (std::pow(q, -2) - 1.0) * acc.value();
    default: throw DomainError("subsum index must be 1..4");
  }
}

// ---------------------------------------------------------------------------

ExponentMultiset ExponentMultiset::sorted() const {
  ExponentMultiset r = *this;
  std::sort(r.items.begin(), r.items.end());
  return r;
}

ExponentMultiset ExponentMultiset::operator+(const ExponentMultiset& other) const {
  ExponentMultiset r = *this;
  r.items.insert(r.items.end(), other.items.begin(), other.items.end());
  return r;
}

bool ExponentMultiset::operator==(const ExponentMultiset& other) const {
  return sorted().items == other.sorted().items;
}

std::string ExponentMultiset::str() const {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& e : sorted().items) {
    os << (first ? "" : ", ") << to_string(e.u) << "*l1" << (e.v < 0 ? "" : "+") << to_string(e.v) << "*l2";
    first = false;
  }
  os << "}";
  return os.str();
}

ExponentMultiset zero_exponent() { return {{{0, 0}}}; }

ExponentMultiset satake_multisets(SatakeKind kind) {
  const Rational h(1, 2);
  ExponentMultiset r;
  switch (kind) {
    case SatakeKind::spin:
      r.items = {{h, h}, {-h, -h}, {h, -h}, {-h, h}};
      break;
    case SatakeKind::std_rep:
      r.items = {{0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}};
      break;
    case SatakeKind::ad:
      r.items = {{0, 0}, {0, 0}, {1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, -1}, {1, -1}, {-1, 1}};
      break;
  }
  return r;
}

ExponentMultiset pairwise_sums(const ExponentMultiset& a, PairMode mode) {
  ExponentMultiset r;
  const std::size_t n = a.items.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (mode == PairMode::wedge && j <= i) continue;
      if (mode == PairMode::sym && j < i) continue;
      r.items.push_back({a.items[i].u + a.items[j].u, a.items[i].v + a.items[j].v});
    }
  return r;
}

std::vector<Rational> specialize(const ExponentMultiset& e, const Rational& l1, const Rational& l2) {
  std::vector<Rational> r;
  for (const auto& x : e.items) r.push_back(x.u * l1 + x.v * l2);
  std::sort(r.begin(), r.end());
  return r;
}

namespace {

struct Identity {
  const char* name;
  ExponentMultiset lhs, rhs;
};

std::vector<Identity> identities() {
  const auto spin = satake_multisets(SatakeKind::spin);
  const auto stdr = satake_multisets(SatakeKind::std_rep);
  const auto ad = satake_multisets(SatakeKind::ad);
  return {{"spin x spin = 1 + std + ad", pairwise_sums(spin, PairMode::tensor), zero_exponent() + stdr + ad},
          {"wedge2 spin = 1 + std", pairwise_sums(spin, PairMode::wedge), zero_exponent() + stdr},
          {"sym2 spin = ad", pairwise_sums(spin, PairMode::sym), ad}};
}

}  // namespace

TensorCheck tensor_decomp_check() {
  for (const auto& id : identities())
    if (!(id.lhs == id.rhs)) return {false, std::string(id.name) + ": " + id.lhs.str() + " vs " + id.rhs.str()};
  return {};
}

TensorCheck tensor_decomp_check(const Rational& l1, const Rational& l2) {
  for (const auto& id : identities())
    if (specialize(id.lhs, l1, l2) != specialize(id.rhs, l1, l2))
      return {false, std::string(id.name) + " at l1=" + to_string(l1) + ", l2=" + to_string(l2)};
  return {};
}

cplx euler_product(const FinitePlace& place, const ExponentMultiset& e, cplx l1, cplx l2, cplx s) {
  place.validate();
  const double lq = std::log(static_cast<double>(place.q));
  cplx r = 1.0;
  for (const auto& x : e.items) {
    const cplx expo = to_double(x.u) * l1 + to_double(x.v) * l2 - s;
    const cplx f = 1.0 - std::exp(expo * lq);
    if (std::abs(f) < 1e-14) throw PoleError("Euler factor evaluated at a pole");
    r /= f;
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

long integral_arg(const Rational& x) {
  if (boost::multiprecision::denominator(x) != 1) throw DomainError("exact local zeta needs an integer argument");
  return boost::multiprecision::numerator(x).convert_to<long>();
}

}  // namespace

Rational d_P_exact(long q, const Rational& s) {
  return zeta_q(q, integral_arg(s + Rational(5, 2))) * zeta_q(q, integral_arg(2 * s + 1)) *
         zeta_q(q, integral_arg(2 * s + 3));
}

Rational d_Pcal_exact(long q, const Rational& s) {
  return zeta_q(q, integral_arg(s + 1)) * zeta_q(q, integral_arg(s + 2)) * zeta_q(q, integral_arg(s + 3)) *
         zeta_q(q, integral_arg(2 * s + 2));
}

double d_P_real(double s) {
  return special::zeta_real(s + 2.5) * special::zeta_real(2 * s + 1) * special::zeta_real(2 * s + 3);
}

double d_Pcal_real(double s) {
  return special::zeta_real(s + 1) * special::zeta_real(s + 2) * special::zeta_real(s + 3) *
         special::zeta_real(2 * s + 2);
}

DPValues dP_dPcal_values(const FinitePlace& place) {
  place.validate();
  const long q = place.q;
  const Rational z2 = zeta_q(q, 2), z3 = zeta_q(q, 3), z4 = zeta_q(q, 4);
  return {d_P_exact(q, Rational(1, 2)), z2 * z3 * z4, d_Pcal_exact(q, Rational(1)), z2 * z3 * z4 * z4};
}

DPRealValues dP_dPcal_values_real() {
  using special::zeta_real;
  const double z2 = zeta_real(2.0), z3 = zeta_real(3.0), z4 = zeta_real(4.0);
  return {d_P_real(0.5), z2 * z3 * z4, d_Pcal_real(1.0), z2 * z3 * z4 * z4};
}

UnramValues unram_formula_evaluators(const FinitePlace& place, cplx l1, cplx l2, cplx s, cplx section_value,
                                     double whittaker_abs) {
  place.validate();
  const auto zp = special::LocalZetaPlace::finite(place.q);
  auto z = [&](cplx x) { return special::zeta_local(zp, x); };
  const double q = static_cast<double>(place.q);
  const double c = static_cast<double>(place.c);
  const auto stdr = satake_multisets(SatakeKind::std_rep);
  const auto ad = satake_multisets(SatakeKind::ad);
  const auto tensor = pairwise_sums(satake_multisets(SatakeKind::spin), PairMode::tensor);

  const cplx dP = z(s + 2.5) * z(2.0 * s + 1.0) * z(2.0 * s + 3.0);
  const cplx dPcal = z(s + 1.0) * z(s + 2.0) * z(s + 3.0) * z(2.0 * s + 2.0);
  const cplx z2 = z(2.0), z4 = z(4.0);

  UnramValues r;
  r.psr = section_value * std::pow(q, -5.0 * c) / (z2 * z4 * dP) * euler_product(place, stdr, l1, l2, s + 0.5);
  const cplx half = 0.5 * (s + 1.0);
  r.jiang = section_value * whittaker_abs * whittaker_abs * std::exp((1.5 * s - 13.0) * c * std::log(q)) /
            (z2 * z2 * z4 * z4 * dPcal) * euler_product(place, tensor, l1, l2, half);
  r.rankin = euler_product(place, tensor, l1, l2, s);
  r.factored = z(s) * euler_product(place, stdr, l1, l2, s) * euler_product(place, ad, l1, l2, s);
  return r;
}

}  // namespace gspnorm::padic
