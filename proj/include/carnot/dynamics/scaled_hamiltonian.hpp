#pragma once

#include <array>
#include <cstddef>
#include <map>
#include <string>

#include "carnot/dynamics/orbit_chart.hpp"
#include "carnot/rational.hpp"

namespace carnot::dynamics {

// Polynomial in four phase variables (index layout of ChartVector) whose
// coefficients are exact symbols q * C^i * w0^(j/3). Used to expand the
// orbit Hamiltonian under the cube-root rescaling without rounding.
class ScaledPolynomial {
 public:
  struct Key {
    std::array<unsigned, 4> exponents{};
    int c_power = 0;
    int w0_thirds = 0;
    friend auto operator<=>(const Key&, const Key&) = default;
  };

  static ScaledPolynomial variable(int i);
  static ScaledPolynomial constant(const Rational& q, int c_power = 0, int w0_thirds = 0);

  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  ScaledPolynomial& operator+=(const ScaledPolynomial& o);
  ScaledPolynomial& operator-=(const ScaledPolynomial& o);
  friend ScaledPolynomial operator+(ScaledPolynomial a, const ScaledPolynomial& b) { return a += b; }
  friend ScaledPolynomial operator-(ScaledPolynomial a, const ScaledPolynomial& b) { return a -= b; }
  friend ScaledPolynomial operator*(const ScaledPolynomial& a, const ScaledPolynomial& b);
  friend ScaledPolynomial operator*(const Rational& s, const ScaledPolynomial& a);
  friend bool operator==(const ScaledPolynomial& a, const ScaledPolynomial& b) { return a.terms_ == b.terms_; }

  ScaledPolynomial derivative(int i) const;
  double evaluate(const ChartVector<double>& point, double w0, double C) const;
  // Terms with a fixed phase-space exponent, summed into one coefficient text.
  std::string to_string(const std::array<std::string, 4>& names) const;

  void add(const Key& key, const Rational& q);

 private:
  std::map<Key, Rational> terms_;
};

// 1/2 (x^2 + z^2 + (C w0^-1 - w0 ut vt)^2) in chart variables.
ScaledPolynomial orbit_hamiltonian_symbolic();

// x = s xh, z = s zh, ut = uh/s, vt = vh/s with s = w0^(1/3): a chart
// monomial x^a z^b ut^c vt^d becomes s^(a+b-c-d) times the hat monomial.
ScaledPolynomial chart_to_hat(const ScaledPolynomial& p);
ScaledPolynomial hat_to_chart(const ScaledPolynomial& p);

// Canonical bracket with pairs (index 1, index 2) and (index 3, index 0),
// i.e. {z, ut} = 1 and {vt, x} = 1; the hat variables use the same layout.
ScaledPolynomial canonical_bracket(const ScaledPolynomial& f, const ScaledPolynomial& g);

struct ScaledHamiltonian {
  ScaledPolynomial transformed;  // H expressed in hat variables
  int prefactor_w0_thirds = 0;   // common factor w0^(k/3) pulled out
  ScaledPolynomial normalized;   // transformed / prefactor
  Rational quartic_coefficient;  // coefficient of uh^2 vh^2 in `normalized`
  bool quartic_only_uv_squared = false;
  std::string text;
};

ScaledHamiltonian derive_scaled_hamiltonian();

struct BracketAudit {
  std::size_t pairs_checked = 0;
  std::size_t mismatches = 0;
};

// For every pair of quadratic hat monomials, compares the hat-coordinate
// bracket with the chart-coordinate bracket pulled through the substitution.
BracketAudit audit_scaling_brackets();

}  // namespace carnot::dynamics
