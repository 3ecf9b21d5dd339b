#include "carnot/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "carnot/errors.hpp"
#include "carnot/expression.hpp"

namespace carnot {

namespace {

void compositions(std::size_t nvars, unsigned degree, std::size_t pos, std::vector<std::uint32_t>& cur,
                  std::vector<Monomial>& out) {
  if (pos + 1 == nvars) {
    cur[pos] = degree;
    out.emplace_back(cur);
    return;
  }
  for (unsigned e = 0; e <= degree; ++e) {
    cur[pos] = e;
    compositions(nvars, degree - e, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<Monomial> monomials_of_degree(std::size_t nvars, unsigned degree) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (degree == 0) out.emplace_back(std::vector<std::uint32_t>{});
    return out;
  }
  std::vector<std::uint32_t> cur(nvars, 0);
  compositions(nvars, degree, 0, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Monomial> monomials_up_to(std::size_t nvars, unsigned max_degree) {
  std::vector<Monomial> out;
  for (unsigned d = 0; d <= max_degree; ++d) {
    auto layer = monomials_of_degree(nvars, d);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

Polynomial::Polynomial(AlgebraPtr algebra) : algebra_(std::move(algebra)) {
  if (!algebra_) throw UsageError("polynomial needs an algebra");
  nvars_ = algebra_->dim();
}

Polynomial::Polynomial(std::size_t formal_vars) : nvars_(formal_vars) {}

Polynomial Polynomial::constant(AlgebraPtr algebra, const Rational& c) {
  Polynomial p(std::move(algebra));
  p.add_term(Monomial(p.nvars_), c);
  return p;
}

Polynomial Polynomial::variable(AlgebraPtr algebra, std::size_t i) {
  Polynomial p(std::move(algebra));
  if (i >= p.nvars_) throw UsageError("variable index out of range");
  p.add_term(Monomial::unit(p.nvars_, i), 1);
  return p;
}

Polynomial Polynomial::formal_constant(std::size_t nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Monomial(nvars), c);
  return p;
}

Polynomial Polynomial::formal_variable(std::size_t nvars, std::size_t i) {
  Polynomial p(nvars);
  if (i >= nvars) throw UsageError("variable index out of range");
  p.add_term(Monomial::unit(nvars, i), 1);
  return p;
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.rbegin()->first.degree());
}

bool Polynomial::is_homogeneous() const {
  if (terms_.empty()) return true;
  return terms_.begin()->first.degree() == terms_.rbegin()->first.degree();
}

Rational Polynomial::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (m.size() != nvars_) throw UsageError("monomial length does not match polynomial");
  carnot::add_term(terms_, m, c);
}

Polynomial Polynomial::homogeneous_part(unsigned k) const {
  Polynomial p = *this;
  p.terms_.clear();
  for (const auto& [m, c] : terms_)
    if (m.degree() == k) p.terms_.emplace_hint(p.terms_.end(), m, c);
  return p;
}

Polynomial Polynomial::derivative(std::size_t i) const {
  Polynomial p = *this;
  p.terms_.clear();
  for (const auto& [m, c] : terms_) {
    if (m[i] == 0) continue;
    Monomial d = m;
    d.decrement(i);
    carnot::add_term(p.terms_, d, c * m[i]);
  }
  return p;
}

Polynomial Polynomial::as_formal() const {
  Polynomial p(nvars_);
  p.terms_ = terms_;
  return p;
}

Polynomial Polynomial::with_algebra(AlgebraPtr algebra) const {
  Polynomial p(std::move(algebra));
  if (p.nvars_ != nvars_) throw UsageError("variable count does not match algebra");
  p.terms_ = terms_;
  return p;
}

void Polynomial::require_compatible(const Polynomial& other) const {
  if (nvars_ != other.nvars_) throw UsageError("polynomials have different variable counts");
  if (algebra_ && other.algebra_ && !same_algebra(algebra_, other.algebra_))
    throw UsageError("polynomials belong to different algebras");
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_compatible(other);
  if (!algebra_) algebra_ = other.algebra_;
  for (const auto& [m, c] : other.terms_) carnot::add_term(terms_, m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_compatible(other);
  if (!algebra_) algebra_ = other.algebra_;
  for (const auto& [m, c] : other.terms_) carnot::add_term(terms_, m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_compatible(b);
  Polynomial p = a.algebra_ ? Polynomial(a.algebra_) : b.algebra_ ? Polynomial(b.algebra_) : Polynomial(a.nvars_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) carnot::add_term(p.terms_, ma * mb, ca * cb);
  return p;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
}

Polynomial Polynomial::pow(unsigned e) const {
  Polynomial r = algebra_ ? constant(algebra_, 1) : formal_constant(nvars_, 1);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

Rational Polynomial::evaluate_exact(const std::vector<Rational>& point) const {
  Rational total = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    for (std::size_t i = 0; i < nvars_; ++i)
      for (std::uint32_t e = 0; e < m[i]; ++e) t *= point.at(i);
    total += t;
  }
  return total;
}

std::vector<std::string> dual_variable_names(const LieAlgebra& algebra) {
  std::vector<std::string> names;
  for (const auto& n : algebra.names()) {
    std::string lower = n;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    names.push_back(lower);
  }
  // Fall back to the exact names if lowering makes two of them collide.
  auto sorted = names;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return algebra.names();
  return names;
}

std::vector<std::string> variable_names(const Polynomial& p) {
  if (p.algebra()) return dual_variable_names(*p.algebra());
  std::vector<std::string> names;
  for (std::size_t i = 0; i < p.nvars(); ++i) names.push_back("g" + std::to_string(i + 1));
  return names;
}

std::string format_terms(const TermMap& terms, const std::vector<std::string>& names) {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms.rbegin(); it != terms.rend(); ++it) {
    const auto& [m, coef] = *it;
    Rational c = coef;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    c = abs(c);
    bool wrote = false;
    if (c != 1 || m.degree() == 0) {
      os << to_string(c);
      wrote = true;
    }
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (wrote) os << "*";
      os << names.at(i);
      if (m[i] > 1) os << "^" << m[i];
      wrote = true;
    }
    first = false;
  }
  return os.str();
}

std::string to_string(const Polynomial& p, const std::vector<std::string>& names) {
  return format_terms(p.terms(), names);
}

std::string to_string(const Polynomial& p) { return to_string(p, variable_names(p)); }

Polynomial parse_polynomial(AlgebraPtr algebra, std::string_view text) {
  const auto lower = dual_variable_names(*algebra);
  ExpressionReader<Polynomial> reader(
      [&](std::string_view name) -> std::optional<Polynomial> {
        for (std::size_t i = 0; i < lower.size(); ++i)
          if (lower[i] == name || algebra->name(i) == name) return Polynomial::variable(algebra, i);
        return std::nullopt;
      },
      [&](const Rational& c) { return Polynomial::constant(algebra, c); });
  return reader.read(text);
}

Polynomial parse_formal_polynomial(std::size_t nvars, std::string_view text) {
  ExpressionReader<Polynomial> reader(
      [&](std::string_view name) -> std::optional<Polynomial> {
        if (name.size() < 2 || name[0] != 'g') return std::nullopt;
        std::size_t idx = 0;
        for (char c : name.substr(1)) {
          if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
          idx = idx * 10 + static_cast<std::size_t>(c - '0');
        }
        if (idx < 1 || idx > nvars) return std::nullopt;
        return Polynomial::formal_variable(nvars, idx - 1);
      },
      [&](const Rational& c) { return Polynomial::formal_constant(nvars, c); });
  return reader.read(text);
}

}  // namespace carnot
