#include "carnot/centralizer.hpp"

#include <algorithm>
#include <map>

#include "carnot/errors.hpp"
#include "carnot/exact_linear.hpp"
#include "carnot/poisson.hpp"

namespace carnot {

namespace {

void weighted_rec(const std::vector<unsigned>& w, unsigned budget, std::size_t pos,
                  std::vector<std::uint32_t>& cur, std::vector<Monomial>& out) {
  if (pos == w.size()) {
    out.emplace_back(cur);
    return;
  }
  for (unsigned a = 0; a * w[pos] <= budget; ++a) {
    cur[pos] = a;
    weighted_rec(w, budget - a * w[pos], pos + 1, cur, out);
  }
  cur[pos] = 0;
}

// Coefficient vector of p over the given monomial index.
SparseRow coordinates(const Polynomial& p, const std::map<Monomial, std::size_t>& index) {
  SparseRow row;
  for (const auto& [m, c] : p.terms()) row.emplace(index.at(m), c);
  return row;
}

Polynomial from_coordinates(const SparseRow& v, const std::vector<Monomial>& monomials, const AlgebraPtr& alg) {
  Polynomial p(alg);
  for (const auto& [i, c] : v) p.add_term(monomials[i], c);
  return p;
}

std::vector<Polynomial> products(const std::vector<Polynomial>& gens, const std::vector<Monomial>& exps) {
  // Cache powers: powers[i][a] = gens[i]^a.
  std::vector<std::vector<Polynomial>> powers(gens.size());
  std::vector<Polynomial> out;
  out.reserve(exps.size());
  for (const auto& e : exps) {
    Polynomial prod = gens.front().algebra() ? Polynomial::constant(gens.front().algebra(), 1)
                                             : Polynomial::formal_constant(gens.front().nvars(), 1);
    for (std::size_t i = 0; i < gens.size(); ++i) {
      auto& pw = powers[i];
      if (pw.empty()) pw.push_back(gens[i].pow(0));
      while (pw.size() <= e[i]) pw.push_back(pw.back() * gens[i]);
      if (e[i] > 0) prod = prod * pw[e[i]];
    }
    out.push_back(std::move(prod));
  }
  return out;
}

}  // namespace

std::vector<Monomial> weighted_exponents(const std::vector<unsigned>& weights, unsigned bound) {
  for (unsigned w : weights)
    if (w == 0) throw UsageError("generator weights must be positive");
  std::vector<Monomial> out;
  std::vector<std::uint32_t> cur(weights.size(), 0);
  weighted_rec(weights, bound, 0, cur, out);
  std::sort(out.begin(), out.end());
  return out;
}

CentralizerReport centralizer_basis(const Polynomial& h, unsigned d, const CentralizerOptions& options) {
  if (d > options.max_degree)
    throw LimitError("degree bound " + std::to_string(d) + " exceeds the configured limit " +
                     std::to_string(options.max_degree));
  const AlgebraPtr& alg = h.algebra();
  if (!alg) throw UsageError("centralizer needs a polynomial on an algebra");
  const std::size_t n = alg->dim();

  const auto unknowns = monomials_up_to(n, d);
  std::map<Monomial, std::size_t> unknown_index;
  for (std::size_t i = 0; i < unknowns.size(); ++i) unknown_index.emplace(unknowns[i], i);

  // Column j is {m_j, H}; transpose into equation rows keyed by output monomial.
  std::map<Monomial, SparseRow> equations;
  for (std::size_t j = 0; j < unknowns.size(); ++j) {
    Polynomial m(alg);
    m.add_term(unknowns[j], 1);
    const Polynomial b = poisson_bracket(m, h);
    for (const auto& [mono, c] : b.terms()) equations[mono].emplace(j, c);
  }
  std::vector<SparseRow> rows;
  rows.reserve(equations.size());
  for (auto& [mono, row] : equations) rows.push_back(std::move(row));

  CentralizerReport report;
  report.degree_bound = d;
  const auto kernel = nullspace(rows, unknowns.size());
  report.nullspace_dimension = kernel.size();
  for (const auto& v : kernel) report.nullspace_basis.push_back(from_coordinates(v, unknowns, alg));

  report.generators.push_back(h);
  const auto invariants = options.invariants.empty() ? declared_casimirs(alg) : options.invariants;
  for (const auto& c : invariants) report.generators.push_back(c.with_algebra(alg));

  std::vector<unsigned> weights;
  for (const auto& g : report.generators) {
    if (g.degree() <= 0) throw UsageError("generators must be nonconstant");
    weights.push_back(static_cast<unsigned>(g.degree()));
  }
  const auto prods = products(report.generators, weighted_exponents(weights, d));

  EchelonBasis predicted, combined;
  for (const auto& v : kernel) combined.insert(v);
  for (const auto& p : prods) {
    const auto row = coordinates(p, unknown_index);
    predicted.insert(row);
    combined.insert(row);
  }
  report.predicted_dimension = predicted.rank();
  report.minimal = predicted.rank() == kernel.size() && combined.rank() == kernel.size();
  return report;
}

nlohmann::json to_json(const CentralizerReport& report) {
  nlohmann::json j;
  j["degree_bound"] = report.degree_bound;
  j["nullspace_dimension"] = report.nullspace_dimension;
  j["predicted_dimension"] = report.predicted_dimension;
  j["centralizer_is_minimal"] = report.minimal;
  auto basis = nlohmann::json::array();
  for (const auto& p : report.nullspace_basis) basis.push_back(to_string(p));
  j["nullspace_basis"] = basis;
  auto gens = nlohmann::json::array();
  for (const auto& p : report.generators) gens.push_back(to_string(p));
  j["generators"] = gens;
  return j;
}

std::optional<Polynomial> express_in_generators(const Polynomial& f, const std::vector<Polynomial>& generators,
                                                unsigned d) {
  if (generators.empty()) throw UsageError("express_in_generators needs at least one generator");
  std::vector<unsigned> weights;
  for (const auto& g : generators) {
    if (g.nvars() != f.nvars()) throw UsageError("generator lives in a different polynomial ring");
    if (g.degree() <= 0) throw UsageError("generators must be nonconstant");
    weights.push_back(static_cast<unsigned>(g.degree()));
  }
  const std::size_t m = generators.size();
  if (f.is_zero()) return Polynomial(m);

  const auto exps = weighted_exponents(weights, d);
  const auto prods = products(generators, exps);

  std::map<Monomial, std::size_t> row_index;
  auto row_of = [&](const Monomial& mono) {
    auto [it, inserted] = row_index.try_emplace(mono, row_index.size());
    return it->second;
  };
  std::vector<SparseRow> rows;
  for (std::size_t j = 0; j < prods.size(); ++j)
    for (const auto& [mono, c] : prods[j].terms()) {
      const std::size_t r = row_of(mono);
      if (rows.size() <= r) rows.resize(r + 1);
      rows[r].emplace(j, c);
    }
  SparseRow rhs;
  for (const auto& [mono, c] : f.terms()) rhs.emplace(row_of(mono), c);
  if (rows.size() < row_index.size()) rows.resize(row_index.size());

  auto sol = solve(rows, prods.size(), rhs);
  if (!sol) return std::nullopt;
  Polynomial p(m);
  for (const auto& [j, c] : *sol) p.add_term(exps[j], c);
  return p;
}

}  // namespace carnot
