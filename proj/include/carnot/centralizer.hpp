#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include <json.hpp>

#include "carnot/monomial.hpp"
#include "carnot/polynomial.hpp"

namespace carnot {

// Bounded-degree Poisson centralizer of H, compared against the subalgebra
// generated by H and the Casimirs.
struct CentralizerReport {
  unsigned degree_bound = 0;
  std::size_t nullspace_dimension = 0;
  std::vector<Polynomial> nullspace_basis;
  // Rank of the products H^a C1^b C2^c ... of weighted degree <= bound.
  std::size_t predicted_dimension = 0;
  // Nullspace equals the span of those products.
  bool minimal = false;
  std::vector<Polynomial> generators;  // H first, then the invariants
};

struct CentralizerOptions {
  unsigned max_degree = 6;
  // Invariants generating the expected centralizer together with H; empty
  // means the algebra's declared Casimirs.
  std::vector<Polynomial> invariants;
};

// Exact nullspace of F -> {F, H} on polynomials of degree <= d. Throws
// LimitError when d exceeds options.max_degree.
CentralizerReport centralizer_basis(const Polynomial& h, unsigned d,
                                    const CentralizerOptions& options = {});

nlohmann::json to_json(const CentralizerReport& report);

// Exponent tuples (a_1..a_m) with sum a_i * weights[i] <= bound, in
// ascending graded order of the tuple. Weights must be positive.
std::vector<Monomial> weighted_exponents(const std::vector<unsigned>& weights, unsigned bound);

// Finds P with P(generators) = F using only products of weighted degree
// <= d (weight = total degree of each generator). The result is a formal
// polynomial in g1..gm; nullopt means F is not in that span.
std::optional<Polynomial> express_in_generators(const Polynomial& f,
                                                const std::vector<Polynomial>& generators,
                                                unsigned d);

}  // namespace carnot
