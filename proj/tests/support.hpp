#pragma once

// Random inputs for property tests. Everything is seeded explicitly.

#include <random>

#include "carnot/polynomial.hpp"
#include "carnot/uea.hpp"

namespace test_support {

inline carnot::Rational small_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-5, 5), den(1, 4);
  return carnot::ratio(num(rng), den(rng));
}

// Up to `terms` random monomials of degree <= max_degree.
inline carnot::Polynomial random_polynomial(const carnot::AlgebraPtr& alg, std::mt19937_64& rng,
                                            unsigned max_degree, int terms = 4) {
  carnot::Polynomial p(alg);
  std::uniform_int_distribution<unsigned> deg(0, max_degree);
  std::uniform_int_distribution<std::size_t> var(0, alg->dim() - 1);
  for (int t = 0; t < terms; ++t) {
    carnot::Monomial m(alg->dim());
    const unsigned d = deg(rng);
    for (unsigned k = 0; k < d; ++k) m.increment(var(rng));
    p.add_term(m, small_rational(rng));
  }
  return p;
}

inline carnot::Polynomial random_homogeneous(const carnot::AlgebraPtr& alg, std::mt19937_64& rng, unsigned degree,
                                             int terms = 3) {
  carnot::Polynomial p(alg);
  std::uniform_int_distribution<std::size_t> var(0, alg->dim() - 1);
  while (p.is_zero()) {
    for (int t = 0; t < terms; ++t) {
      carnot::Monomial m(alg->dim());
      for (unsigned k = 0; k < degree; ++k) m.increment(var(rng));
      p.add_term(m, small_rational(rng));
    }
  }
  return p;
}

inline carnot::UeaElement random_uea(const carnot::PbwPtr& ctx, std::mt19937_64& rng, unsigned max_degree,
                                     int terms = 3) {
  return carnot::UeaElement::from_pbw_terms(ctx, random_polynomial(ctx->algebra(), rng, max_degree, terms));
}

}  // namespace test_support
