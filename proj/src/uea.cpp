#include "carnot/uea.hpp"

#include <algorithm>

#include "carnot/centralizer.hpp"
#include "carnot/errors.hpp"
#include "carnot/exact_linear.hpp"
#include "carnot/expression.hpp"
#include "carnot/poisson.hpp"

namespace carnot {

namespace {

void add_scaled(TermMap& out, const TermMap& in, const Rational& s) {
  for (const auto& [m, c] : in) add_term(out, m, c * s);
}

}  // namespace

PbwRewriter::PbwRewriter(AlgebraPtr algebra) : algebra_(std::move(algebra)) {
  if (!algebra_) throw UsageError("enveloping algebra needs a Lie algebra");
}

TermMap PbwRewriter::times_generator(const Monomial& word, std::size_t j) const {
  const std::size_t n = dim();
  std::size_t last = n;
  for (std::size_t k = n; k-- > 0;)
    if (word[k] > 0) {
      last = k;
      break;
    }
  if (last == n || last <= j) {
    Monomial m = word;
    m.increment(j);
    return TermMap{{m, Rational(1)}};
  }

  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find({word, j});
    if (it != cache_.end()) return it->second;
  }

  // word = prefix * e_last with last > j:
  // word * e_j = (prefix * e_j) * e_last + prefix * [e_last, e_j].
  Monomial prefix = word;
  prefix.decrement(last);
  TermMap result;
  for (const auto& [m, c] : times_generator(prefix, j)) add_scaled(result, times_generator(m, last), c);
  for (const auto& [k, c] : algebra_->bracket_of_basis(last, j)) add_scaled(result, times_generator(prefix, k), c);

  std::lock_guard lock(mutex_);
  cache_.emplace(std::make_pair(word, j), result);
  return result;
}

TermMap PbwRewriter::multiply_words(const Monomial& a, const Monomial& b) const {
  TermMap cur{{a, Rational(1)}};
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::uint32_t e = 0; e < b[i]; ++e) {
      TermMap next;
      for (const auto& [m, c] : cur) add_scaled(next, times_generator(m, i), c);
      cur = std::move(next);
    }
  return cur;
}

PbwPtr make_enveloping(AlgebraPtr algebra) { return std::make_shared<const PbwRewriter>(std::move(algebra)); }

UeaElement::UeaElement(PbwPtr context) : context_(std::move(context)) {
  if (!context_) throw UsageError("enveloping-algebra element needs a context");
}

UeaElement UeaElement::constant(PbwPtr context, const Rational& c) {
  UeaElement e(std::move(context));
  e.add_term(Monomial(e.context_->dim()), c);
  return e;
}

UeaElement UeaElement::generator(PbwPtr context, std::size_t i) {
  UeaElement e(std::move(context));
  if (i >= e.context_->dim()) throw UsageError("generator index out of range");
  e.add_term(Monomial::unit(e.context_->dim(), i), 1);
  return e;
}

UeaElement UeaElement::from_pbw_terms(PbwPtr context, const Polynomial& p) {
  UeaElement e(std::move(context));
  if (p.nvars() != e.context_->dim()) throw UsageError("polynomial has the wrong number of variables");
  for (const auto& [m, c] : p.terms()) e.add_term(m, c);
  return e;
}

int UeaElement::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.rbegin()->first.degree());
}

void UeaElement::add_term(const Monomial& word, const Rational& c) {
  if (word.size() != context_->dim()) throw UsageError("word length does not match algebra");
  carnot::add_term(terms_, word, c);
}

void UeaElement::require_compatible(const UeaElement& other) const {
  if (context_ != other.context_ && !same_algebra(context_->algebra(), other.context_->algebra()))
    throw UsageError("enveloping-algebra elements belong to different algebras");
}

UeaElement& UeaElement::operator+=(const UeaElement& other) {
  require_compatible(other);
  for (const auto& [m, c] : other.terms_) carnot::add_term(terms_, m, c);
  return *this;
}

UeaElement& UeaElement::operator-=(const UeaElement& other) {
  require_compatible(other);
  for (const auto& [m, c] : other.terms_) carnot::add_term(terms_, m, -c);
  return *this;
}

UeaElement& UeaElement::operator*=(const Rational& s) {
  if (s == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

UeaElement operator*(const UeaElement& a, const UeaElement& b) {
  a.require_compatible(b);
  UeaElement out(a.context_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) add_scaled(out.terms_, a.context_->multiply_words(ma, mb), ca * cb);
  return out;
}

bool operator==(const UeaElement& a, const UeaElement& b) {
  return same_algebra(a.algebra(), b.algebra()) && a.terms_ == b.terms_;
}

UeaElement UeaElement::pow(unsigned e) const {
  UeaElement r = constant(context_, 1);
  for (unsigned i = 0; i < e; ++i) r = r * *this;
  return r;
}

UeaElement multiply(const UeaElement& a, const UeaElement& b) { return a * b; }

UeaElement commutator(const UeaElement& a, const UeaElement& b) { return a * b - b * a; }

UeaElement symmetrize(const PbwPtr& context, const Polynomial& p) {
  if (p.nvars() != context->dim()) throw UsageError("polynomial has the wrong number of variables");
  if (p.algebra() && !same_algebra(p.algebra(), context->algebra()))
    throw UsageError("polynomial belongs to a different algebra");
  UeaElement out(context);
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::size_t> factors;
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::uint32_t e = 0; e < m[i]; ++e) factors.push_back(i);
    // Sum over distinct orderings; each appears prod(a_i!) times among the k!.
    mpz_class k_fact = 1, multiplicity = 1;
    for (std::size_t t = 2; t <= factors.size(); ++t) k_fact *= static_cast<unsigned long>(t);
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::uint32_t t = 2; t <= m[i]; ++t) multiplicity *= t;
    const Rational weight = c * ratio(multiplicity, k_fact);
    UeaElement sum(context);
    do {
      UeaElement prod = UeaElement::constant(context, 1);
      for (auto f : factors) prod = prod * UeaElement::generator(context, f);
      sum += prod;
    } while (std::next_permutation(factors.begin(), factors.end()));
    out += weight * sum;
  }
  return out;
}

PrincipalSymbol principal_symbol(const UeaElement& a) {
  if (a.is_zero()) throw UsageError("the zero element has no principal symbol");
  const unsigned k = static_cast<unsigned>(a.degree());
  Polynomial s(a.algebra());
  for (const auto& [m, c] : a.terms())
    if (m.degree() == k) s.add_term(m, c);
  return {k, s};
}

std::string to_string(const UeaElement& a) { return format_terms(a.terms(), a.algebra()->names()); }

UeaElement parse_uea(const PbwPtr& context, std::string_view text) {
  const auto& alg = *context->algebra();
  ExpressionReader<UeaElement> reader(
      [&](std::string_view name) -> std::optional<UeaElement> {
        if (auto i = alg.index_of(name)) return UeaElement::generator(context, *i);
        return std::nullopt;
      },
      [&](const Rational& c) { return UeaElement::constant(context, c); });
  return reader.read(text);
}

UeaElement quantized_hamiltonian(const PbwPtr& context) {
  return symmetrize(context, subriemannian_hamiltonian(context->algebra()));
}

std::vector<UeaElement> declared_central_elements(const PbwPtr& context) {
  std::vector<UeaElement> out;
  for (const auto& p : declared_casimirs(context->algebra())) out.push_back(symmetrize(context, p));
  return out;
}

namespace {

std::vector<UeaElement> generator_products(const std::vector<UeaElement>& gens, const std::vector<Monomial>& exps) {
  std::vector<std::vector<UeaElement>> powers(gens.size());
  std::vector<UeaElement> out;
  for (const auto& e : exps) {
    UeaElement prod = UeaElement::constant(gens.front().context(), 1);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(UeaElement::constant(gens[i].context(), 1));
      while (pw.size() <= e[i]) pw.push_back(pw.back() * gens[i]);
      if (e[i] > 0) prod = prod * pw[e[i]];
    }
    out.push_back(std::move(prod));
  }
  return out;
}

std::vector<unsigned> degrees_of(const std::vector<UeaElement>& gens) {
  std::vector<unsigned> w;
  for (const auto& g : gens) {
    if (g.degree() <= 0) throw UsageError("generators must have positive degree");
    w.push_back(static_cast<unsigned>(g.degree()));
  }
  return w;
}

}  // namespace

CommutantReport commutant_basis(const UeaElement& h, unsigned d, const CommutantOptions& options) {
  if (d > options.max_degree)
    throw LimitError("degree bound " + std::to_string(d) + " exceeds the configured limit " +
                     std::to_string(options.max_degree));
  const auto& ctx = h.context();
  const std::size_t n = ctx->dim();
  const auto words = monomials_up_to(n, d);
  std::map<Monomial, std::size_t> word_index;
  for (std::size_t i = 0; i < words.size(); ++i) word_index.emplace(words[i], i);

  std::map<Monomial, SparseRow> equations;
  for (std::size_t j = 0; j < words.size(); ++j) {
    UeaElement w(ctx);
    w.add_term(words[j], 1);
    const UeaElement image = commutator(w, h);
    for (const auto& [m, c] : image.terms()) equations[m].emplace(j, c);
  }
  std::vector<SparseRow> rows;
  for (auto& [m, row] : equations) rows.push_back(std::move(row));

  CommutantReport report;
  report.degree_bound = d;
  const auto kernel = nullspace(rows, words.size());
  report.dimension = kernel.size();
  for (const auto& v : kernel) {
    UeaElement e(ctx);
    for (const auto& [i, c] : v) e.add_term(words[i], c);
    report.basis.push_back(std::move(e));
  }

  report.generators.push_back(h);
  const auto invariants = options.invariants.empty() ? declared_central_elements(ctx) : options.invariants;
  report.generators.insert(report.generators.end(), invariants.begin(), invariants.end());
  const auto prods = generator_products(report.generators, weighted_exponents(degrees_of(report.generators), d));

  EchelonBasis predicted, combined;
  for (const auto& v : kernel) combined.insert(v);
  for (const auto& p : prods) {
    SparseRow row;
    for (const auto& [m, c] : p.terms()) row.emplace(word_index.at(m), c);
    predicted.insert(row);
    combined.insert(std::move(row));
  }
  report.predicted_dimension = predicted.rank();
  report.minimal = predicted.rank() == kernel.size() && combined.rank() == kernel.size();
  return report;
}

nlohmann::json to_json(const CommutantReport& report) {
  nlohmann::json j;
  j["degree_bound"] = report.degree_bound;
  j["nullspace_dimension"] = report.dimension;
  j["predicted_dimension"] = report.predicted_dimension;
  j["commutant_is_minimal"] = report.minimal;
  auto basis = nlohmann::json::array();
  for (const auto& e : report.basis) basis.push_back(to_string(e));
  j["nullspace_basis"] = basis;
  auto gens = nlohmann::json::array();
  for (const auto& e : report.generators) gens.push_back(to_string(e));
  j["generators"] = gens;
  return j;
}

DescentResult degree_descent(const UeaElement& f, const UeaElement& h, const std::vector<UeaElement>& central) {
  if (!commutator(f, h).is_zero()) throw UsageError("degree descent requires [F, H] = 0");
  const auto& ctx = h.context();
  for (const auto& c : central)
    for (std::size_t i = 0; i < ctx->dim(); ++i)
      if (!commutator(c, UeaElement::generator(ctx, i)).is_zero())
        throw UsageError("invariant " + to_string(c) + " is not central");

  std::vector<UeaElement> gens{h};
  gens.insert(gens.end(), central.begin(), central.end());
  degrees_of(gens);  // rejects constant generators
  std::vector<Polynomial> symbols;
  for (const auto& g : gens) symbols.push_back(principal_symbol(g).symbol);

  DescentResult result;
  result.expression = Polynomial(gens.size());
  UeaElement rest = f;
  const int start_degree = f.degree();
  while (!rest.is_zero()) {
    auto [k, s] = principal_symbol(rest);
    auto piece = express_in_generators(s, symbols, k);
    if (!piece) {
      result.failure = "principal symbol at degree " + std::to_string(k) + " (" + to_string(s) +
                       ") is not a polynomial in the generator symbols";
      return result;
    }
    // Central invariants make the lift independent of factor order.
    UeaElement lift(ctx);
    std::vector<Monomial> used;
    for (const auto& [m, c] : piece->terms()) used.push_back(m);
    const auto prods = generator_products(gens, used);
    std::size_t idx = 0;
    for (const auto& [m, c] : piece->terms()) lift += c * prods[idx++];

    rest -= lift;
    result.expression += *piece;
    result.stages.push_back({k, s, *piece});
    if (!rest.is_zero() && rest.degree() >= static_cast<int>(k)) {
      result.failure = "remainder did not drop below degree " + std::to_string(k);
      return result;
    }
    if (result.stages.size() > static_cast<std::size_t>(start_degree) + 1) {
      result.failure = "descent did not terminate";
      return result;
    }
  }
  result.success = true;
  return result;
}

}  // namespace carnot
