#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "carnot/lie_algebra.hpp"
#include "carnot/monomial.hpp"
#include "carnot/rational.hpp"

namespace carnot {

// Exact polynomial on the dual of a Lie algebra; the coordinate functions are
// the basis elements viewed as linear forms. A polynomial without an algebra
// is "formal": its variables are placeholders g1, g2, ... used when a result
// is expressed in terms of generators.
class Polynomial {
 public:
  explicit Polynomial(AlgebraPtr algebra);
  explicit Polynomial(std::size_t formal_vars);

  static Polynomial constant(AlgebraPtr algebra, const Rational& c);
  static Polynomial variable(AlgebraPtr algebra, std::size_t i);
  static Polynomial formal_constant(std::size_t nvars, const Rational& c);
  static Polynomial formal_variable(std::size_t nvars, std::size_t i);

  const AlgebraPtr& algebra() const { return algebra_; }
  std::size_t nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  Rational coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const Rational& c);
  Polynomial homogeneous_part(unsigned k) const;
  Polynomial derivative(std::size_t i) const;
  // Same terms, no algebra attached.
  Polynomial as_formal() const;
  Polynomial with_algebra(AlgebraPtr algebra) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Rational& s);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a) { return a *= Rational(-1); }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& s, Polynomial a) { return a *= s; }
  friend bool operator==(const Polynomial& a, const Polynomial& b);

  Polynomial pow(unsigned e) const;

  template <class Scalar, class Point>
  Scalar evaluate(const Point& point) const {
    Scalar total(0);
    for (const auto& [m, c] : terms_) {
      Scalar t = static_cast<Scalar>(to_double(c));
      for (std::size_t i = 0; i < nvars_; ++i)
        for (std::uint32_t e = 0; e < m[i]; ++e) t *= static_cast<Scalar>(point[i]);
      total += t;
    }
    return total;
  }

  Rational evaluate_exact(const std::vector<Rational>& point) const;

 private:
  void require_compatible(const Polynomial& other) const;

  AlgebraPtr algebra_;
  std::size_t nvars_;
  TermMap terms_;
};

// Variable names used for printing/parsing: lowercase basis names for an
// algebra ("x", "u", ...), g1..gn for formal polynomials.
std::vector<std::string> variable_names(const Polynomial& p);
std::vector<std::string> dual_variable_names(const LieAlgebra& algebra);

// Terms in descending graded-lex order, e.g. "3/2*x^2*w - u*v".
std::string format_terms(const TermMap& terms, const std::vector<std::string>& names);
std::string to_string(const Polynomial& p);
std::string to_string(const Polynomial& p, const std::vector<std::string>& names);

// Reads the plain-text grammar; variables are the algebra's basis names in
// lower case (exact basis names are accepted too).
Polynomial parse_polynomial(AlgebraPtr algebra, std::string_view text);
Polynomial parse_formal_polynomial(std::size_t nvars, std::string_view text);

// P(values...) evaluated in any ring that supports +, * and scalar multiples
// by constants built with `constant`.
template <class Ring, class MakeConstant>
Ring substitute(const Polynomial& p, const std::vector<Ring>& values, MakeConstant constant) {
  Ring total = constant(Rational(0));
  for (const auto& [m, c] : p.terms()) {
    Ring t = constant(c);
    for (std::size_t i = 0; i < p.nvars(); ++i)
      for (std::uint32_t e = 0; e < m[i]; ++e) t = t * values.at(i);
    total = total + t;
  }
  return total;
}

}  // namespace carnot
