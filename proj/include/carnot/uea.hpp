#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "carnot/lie_algebra.hpp"
#include "carnot/monomial.hpp"
#include "carnot/polynomial.hpp"

namespace carnot {

// Normal-ordering engine for the universal enveloping algebra of one Lie
// algebra. PBW words are exponent vectors e_1^a_1 ... e_n^a_n over the fixed
// basis order. Right multiplication by a generator is memoized; the cache is
// internally synchronized, so a shared instance may be used from several
// threads.
class PbwRewriter {
 public:
  explicit PbwRewriter(AlgebraPtr algebra);

  const AlgebraPtr& algebra() const { return algebra_; }
  std::size_t dim() const { return algebra_->dim(); }

  // word * e_j rewritten to PBW order. Out-of-order pairs are swapped with
  // e_k e_j = e_j e_k + [e_k, e_j]; every swap either lowers the filtration
  // degree or removes an inversion, so the recursion terminates.
  TermMap times_generator(const Monomial& word, std::size_t j) const;

  // Product of two PBW words in PBW form.
  TermMap multiply_words(const Monomial& a, const Monomial& b) const;

 private:
  AlgebraPtr algebra_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<Monomial, std::size_t>, TermMap> cache_;
};

using PbwPtr = std::shared_ptr<const PbwRewriter>;

PbwPtr make_enveloping(AlgebraPtr algebra);

// Exact element of U(g) in PBW normal form.
class UeaElement {
 public:
  explicit UeaElement(PbwPtr context);

  static UeaElement constant(PbwPtr context, const Rational& c);
  static UeaElement generator(PbwPtr context, std::size_t i);
  // Reads each exponent vector of `p` as a PBW word.
  static UeaElement from_pbw_terms(PbwPtr context, const Polynomial& p);

  const PbwPtr& context() const { return context_; }
  const AlgebraPtr& algebra() const { return context_->algebra(); }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  // Filtration degree; -1 for zero.
  int degree() const;

  void add_term(const Monomial& word, const Rational& c);

  UeaElement& operator+=(const UeaElement& other);
  UeaElement& operator-=(const UeaElement& other);
  UeaElement& operator*=(const Rational& s);

  friend UeaElement operator+(UeaElement a, const UeaElement& b) { return a += b; }
  friend UeaElement operator-(UeaElement a, const UeaElement& b) { return a -= b; }
  friend UeaElement operator-(UeaElement a) { return a *= Rational(-1); }
  friend UeaElement operator*(const Rational& s, UeaElement a) { return a *= s; }
  friend UeaElement operator*(const UeaElement& a, const UeaElement& b);
  friend bool operator==(const UeaElement& a, const UeaElement& b);

  UeaElement pow(unsigned e) const;

 private:
  void require_compatible(const UeaElement& other) const;

  PbwPtr context_;
  TermMap terms_;
};

UeaElement multiply(const UeaElement& a, const UeaElement& b);
// AB - BA.
UeaElement commutator(const UeaElement& a, const UeaElement& b);

// Symmetrization Pol(g*) -> U(g): a degree-k monomial goes to the average of
// all k! orderings of its factors.
UeaElement symmetrize(const PbwPtr& context, const Polynomial& p);

struct PrincipalSymbol {
  unsigned degree;
  Polynomial symbol;  // homogeneous of that degree
};

// Top filtration-degree part read as a polynomial. Throws UsageError on zero.
PrincipalSymbol principal_symbol(const UeaElement& a);

// PBW-ordered text, e.g. "X^2*Y + 1/2*U".
std::string to_string(const UeaElement& a);
UeaElement parse_uea(const PbwPtr& context, std::string_view text);

// Symmetrized sub-Riemannian Hamiltonian, 1/2 (X^2 + Y^2 + Z^2) for n4.
UeaElement quantized_hamiltonian(const PbwPtr& context);
// Symmetrized declared Casimirs (W and UV - YW for n4).
std::vector<UeaElement> declared_central_elements(const PbwPtr& context);

struct CommutantReport {
  unsigned degree_bound = 0;
  std::size_t dimension = 0;
  std::vector<UeaElement> basis;
  std::size_t predicted_dimension = 0;
  bool minimal = false;  // basis spans exactly the products H^a C1^b ...
  std::vector<UeaElement> generators;
};

struct CommutantOptions {
  unsigned max_degree = 4;
  std::vector<UeaElement> invariants;  // empty: declared central elements
};

// Exact nullspace of F -> [F, H] over PBW words of degree <= d. Throws
// LimitError past options.max_degree.
CommutantReport commutant_basis(const UeaElement& h, unsigned d, const CommutantOptions& options = {});

nlohmann::json to_json(const CommutantReport& report);

struct DescentStage {
  unsigned degree;
  Polynomial symbol;
  Polynomial piece;  // formal polynomial in the generators
};

struct DescentResult {
  bool success = false;
  Polynomial expression{std::size_t{0}};  // formal, g1 = H, g2.. = invariants
  std::vector<DescentStage> stages;
  std::string failure;  // names the stage on failure
};

// Writes F as P(H, C1, ..., Cr) by repeatedly matching the principal symbol
// against products of the generators' symbols, lifting with the products
// H^a C1^b ... and subtracting. Throws UsageError if [F, H] != 0 or some
// C_i is not central.
DescentResult degree_descent(const UeaElement& f, const UeaElement& h,
                             const std::vector<UeaElement>& central);

}  // namespace carnot
