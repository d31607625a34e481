#pragma once

#include <optional>
#include <random>
#include <string>
#include <variant>
#include <vector>

#include "gspnorm/numkit.hpp"
#include "gspnorm/rational.hpp"
#include "gspnorm/report.hpp"

namespace gspnorm::constants {

using numkit::cplx;
using numkit::PrecisionConfig;

// ---------------------------------------------------------------------------
// Local data

struct Unramified {
  long q = 2;
  long c = 0;
  cplx lambda1 = 0.0;
  cplx lambda2 = 0.0;
};

// Ramified place of the paramodular level; always counted in the halving set.
struct IIa {
  long q = 2;
  long c = 0;
  int epsilon = 0;
  cplx lambda = 0.0;
};

struct DS {
  int lambda1 = 2;
  int lambda2 = 0;
  bool in_S = false;
};

struct PS {
  cplx lambda1 = 0.0;
  cplx lambda2 = 0.0;
  int epsilon = 0;

  cplx mu1() const { return 0.5 * (lambda1 + lambda2); }
  cplx mu2() const { return 0.5 * (lambda1 - lambda2); }
};

using PlaceSpec = std::variant<Unramified, IIa, DS, PS>;

void validate(const PlaceSpec& p);
std::string describe(const PlaceSpec& p);
bool is_real_place(const PlaceSpec& p);
// Member of (S(DS) u S(n)) n S.
bool is_halving(const PlaceSpec& p);

// coeff * pi^pi_power.
struct PiRational {
  Rational coeff{1};
  long pi_power = 0;

  double value() const;
  std::string str() const;
  PiRational operator*(const PiRational& o) const { return {coeff * o.coeff, pi_power + o.pi_power}; }
  PiRational operator/(const PiRational& o) const { return {coeff / o.coeff, pi_power - o.pi_power}; }
  bool operator==(const PiRational& o) const { return coeff == o.coeff && pi_power == o.pi_power; }
};

// Table of the main theorem.
PiRational c_constant(const PlaceSpec& p);

// Place factor of the explicit Rallis inner product, without the halvings.
PiRational rallis_place_factor(const PlaceSpec& p);
// Square of the place factor in the theta Whittaker constant, without the halvings.
PiRational whittaker_place_factor_sq(const PlaceSpec& p);
// rallis / whittaker^2 times the conductor share q^(-5c).
PiRational c_prime_constant(const PlaceSpec& p);

// W(1) at a finite place: q^c unramified, q^c / (1 + q) for IIa.
Rational finite_whittaker_value(const PlaceSpec& p);

// ---------------------------------------------------------------------------
// Global data

struct GlobalSpec {
  std::vector<PlaceSpec> places;
  bool endoscopic = true;
  Rational discriminant{1};
  int real_places = 1;
  std::optional<double> zeta2;  // completed global values; computed for Q when absent
  std::optional<double> zeta4;
  std::optional<double> l_ad_at_1;

  void validate() const;
  double zeta2_value() const;
  double zeta4_value() const;
};

// Completed Riemann zeta zeta_R(s) zeta(s), s > 1.
double completed_zeta_q(double s);

// zeta(2) zeta(4).
double delta_pgsp4(const GlobalSpec& g);

double whittaker_theta_constant(const GlobalSpec& g);

// Product of local zeta integrals against the explicit Rallis formula.
CheckReport rallis_assembly_check(const GlobalSpec& g, const PrecisionConfig& cfg = {}, double tol = 1e-8);

// 2^c L(1, Ad) / Delta prod C(pi_v), c = 2 endoscopic, 1 stable.
double petersson_norm(const GlobalSpec& g, double l_ad_at_1);

// Endoscopic spec with 0-2 IIa places of distinct q in {2, 3, 5, 7}, 0-2 unramified places
// and one real place, principal series with probability ps_probability.
GlobalSpec random_endoscopic_spec(std::mt19937_64& rng, double ps_probability = 0.0);

}  // namespace gspnorm::constants
