#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "carnot/rational.hpp"

namespace carnot {

// Exponent vector over a fixed ordered basis. Used both for commutative
// monomials on the dual space and for PBW-ordered words e_1^a_1 ... e_n^a_n.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : exps_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : exps_(std::move(exps)) {
    degree_ = std::accumulate(exps_.begin(), exps_.end(), 0u);
  }

  static Monomial unit(std::size_t nvars, std::size_t i) {
    Monomial m(nvars);
    m.exps_[i] = 1;
    m.degree_ = 1;
    return m;
  }

  std::size_t size() const { return exps_.size(); }
  std::uint32_t operator[](std::size_t i) const { return exps_[i]; }
  unsigned degree() const { return degree_; }
  const std::vector<std::uint32_t>& exponents() const { return exps_; }

  void increment(std::size_t i, std::uint32_t by = 1) {
    exps_[i] += by;
    degree_ += by;
  }
  void decrement(std::size_t i) {
    --exps_[i];
    --degree_;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r = a;
    for (std::size_t i = 0; i < r.exps_.size(); ++i) r.exps_[i] += b.exps_[i];
    r.degree_ += b.degree_;
    return r;
  }

  friend bool operator==(const Monomial& a, const Monomial& b) {
    return a.exps_ == b.exps_;
  }

  // Graded lexicographic: total degree first, then the exponent of the
  // earliest basis element.
  friend bool operator<(const Monomial& a, const Monomial& b) {
    if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
    return a.exps_ < b.exps_;
  }

 private:
  std::vector<std::uint32_t> exps_;
  unsigned degree_ = 0;
};

// Sparse rational combination of monomials, ascending graded-lex order.
using TermMap = std::map<Monomial, Rational>;

inline void add_term(TermMap& terms, const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
}

// Every exponent vector of length `nvars` with total degree exactly `degree`,
// ascending graded-lex.
std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree);

// Every exponent vector with total degree <= `max_degree`, ascending graded-lex.
std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned max_degree);

}  // namespace carnot
