#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gspnorm/numkit.hpp"
#include "gspnorm/rational.hpp"

namespace gspnorm::padic {

using numkit::cplx;

struct FinitePlace {
  long q = 2;
  long c = 0;  // conductor exponent of the additive character

  void validate() const;
};

// Induced representation of type IIa: sign epsilon in {0, 1}, parameter lambda.
struct IIaParams {
  int epsilon = 0;
  cplx lambda = 0.0;

  void validate() const;
  cplx alpha(const FinitePlace& place) const;  // q^lambda
  double sign() const { return epsilon == 0 ? 1.0 : -1.0; }
};

// h_{n,m} (w = false) or h'_{n,m} (w = true).
struct Cell {
  int n = 0;
  int m = 0;
  bool w = false;
};

enum class PlaceType { unram, div_n1, div_n2 };

enum class SingularMode { strict, limit };

// B(sigma(h) W, W) at a double-coset representative. Limit mode accepts
// alpha^2 = 1, where the bracket is read as its finite character sum.
cplx macdonald_iia(const FinitePlace& place, const IIaParams& p, const Cell& cell,
                   SingularMode mode = SingularMode::strict);

Rational weil_phi_finite(PlaceType type, const FinitePlace& place, const Cell& cell);

// |U h U / U|.
Rational coset_card(const FinitePlace& place, const Cell& cell);

// ---------------------------------------------------------------------------
// Euler factors as rational functions of X = q^(-s).

struct ExactLFactor {
  long q = 2;
  std::vector<cplx> numerator{1.0};
  std::vector<cplx> denominator{1.0};

  cplx operator()(cplx s) const;
};

ExactLFactor l_std_gl2pair(const FinitePlace& place, const IIaParams& p);
cplx l_std_gl2pair(const FinitePlace& place, const IIaParams& p, cplx s);

// ---------------------------------------------------------------------------
// IIa Rallis zeta integral

cplx iia_rallis_zeta_series(const FinitePlace& place, const IIaParams& p, int N = 40);
// Bound on the omitted cells from the dominant ratio q^(-1/2 + |Re lambda|).
double iia_tail_bound(const FinitePlace& place, const IIaParams& p, int N);
// 2^-2 q^-3 zeta(2) zeta(4) / zeta(1)^2
Rational iia_rallis_zeta_closed(const FinitePlace& place);

// The four partial sums of the cell expansion, i in {1, 2, 3, 4}.
cplx z_subsum_closed(const FinitePlace& place, const IIaParams& p, int i);
cplx z_subsum_series(const FinitePlace& place, const IIaParams& p, int i, int N = 60);

// ---------------------------------------------------------------------------
// Satake exponents u lambda1 + v lambda2

struct Exponent {
  Rational u;
  Rational v;

  bool operator==(const Exponent& o) const { return u == o.u && v == o.v; }
  bool operator<(const Exponent& o) const { return u < o.u || (u == o.u && v < o.v); }
};

struct ExponentMultiset {
  std::vector<Exponent> items;

  std::size_t size() const { return items.size(); }
  ExponentMultiset sorted() const;
  ExponentMultiset operator+(const ExponentMultiset& other) const;  // disjoint union
  bool operator==(const ExponentMultiset& other) const;
  std::string str() const;
};

enum class SatakeKind { spin, std_rep, ad };

ExponentMultiset satake_multisets(SatakeKind kind);
ExponentMultiset zero_exponent();

enum class PairMode { tensor, wedge, sym };
ExponentMultiset pairwise_sums(const ExponentMultiset& a, PairMode mode);

// Values u l1 + v l2 for rational l1, l2, sorted.
std::vector<Rational> specialize(const ExponentMultiset& e, const Rational& l1, const Rational& l2);

struct TensorCheck {
  bool ok = true;
  std::string witness;  // first mismatching identity with both sides
};
TensorCheck tensor_decomp_check();
// The same identities after substituting (l1, l2).
TensorCheck tensor_decomp_check(const Rational& l1, const Rational& l2);

// prod_e (1 - q^(e - s))^-1.
cplx euler_product(const FinitePlace& place, const ExponentMultiset& e, cplx l1, cplx l2, cplx s);

// ---------------------------------------------------------------------------
// Normalizing factors of the two Eisenstein series

Rational d_P_exact(long q, const Rational& s);
Rational d_Pcal_exact(long q, const Rational& s);
double d_P_real(double s);
double d_Pcal_real(double s);

struct DPValues {
  Rational dP_half, dP_half_expected;
  Rational dPcal_one, dPcal_one_expected;
};
DPValues dP_dPcal_values(const FinitePlace& place);

struct DPRealValues {
  double dP_half, dP_half_expected;
  double dPcal_one, dPcal_one_expected;
};
DPRealValues dP_dPcal_values_real();

struct UnramValues {
  cplx psr;       // Z_v(s)
  cplx jiang;     // doubling-type local integral at s
  cplx rankin;    // L(s, pi x pi^vee) from 16 exponents
  cplx factored;  // zeta(s) L(s, std) L(s, Ad)
};
// F_v(1, s) and the Whittaker value default to 1.
UnramValues unram_formula_evaluators(const FinitePlace& place, cplx l1, cplx l2, cplx s,
                                     cplx section_value = 1.0, double whittaker_abs = 1.0);

}  // namespace gspnorm::padic
