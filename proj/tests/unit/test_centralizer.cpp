#include "doctest.h"

#include "carnot/centralizer.hpp"
#include "carnot/errors.hpp"
#include "carnot/exact_linear.hpp"
#include "carnot/poisson.hpp"
#include "oracles.hpp"

using namespace carnot;

namespace {

Polynomial P(const AlgebraPtr& a, std::string_view s) { return parse_polynomial(a, s); }

}  // namespace

TEST_SUITE("centralizer") {
  TEST_CASE("independent oracles agree on the expected counts") {
    // Frozen from the mod-p rank oracle; the weighted count is pure combinatorics.
    const std::size_t frozen[] = {1, 2, 5, 8, 14};
    for (int d = 0; d <= 4; ++d) {
      CHECK(oracle::weighted_count(d) == frozen[d]);
      CHECK(oracle::n4_generated_dimension(d) == frozen[d]);
      CHECK(oracle::n4_centralizer_dimension(d) == frozen[d]);
    }
  }

  TEST_CASE("exact centralizer of the n4 Hamiltonian for d <= 3") {
    const auto n4 = builtin("n4");
    const auto h = subriemannian_hamiltonian(n4);
    for (unsigned d = 0; d <= 3; ++d) {
      const auto r = centralizer_basis(h, d);
      CHECK(r.nullspace_dimension == oracle::n4_centralizer_dimension(int(d)));
      CHECK(r.predicted_dimension == oracle::weighted_count(int(d)));
      CHECK(r.minimal);
      for (const auto& b : r.nullspace_basis) CHECK(poisson_bracket(b, h).is_zero());
    }
  }

  TEST_CASE("degree one basis is {1, w}") {
    const auto n4 = builtin("n4");
    const auto r = centralizer_basis(subriemannian_hamiltonian(n4), 1);
    REQUIRE(r.nullspace_basis.size() == 2);
    CHECK(r.nullspace_basis[0] == Polynomial::constant(n4, 1));
    CHECK(r.nullspace_basis[1] == P(n4, "w"));
  }

  TEST_CASE("degree two contains H and the quadratic Casimir") {
    const auto n4 = builtin("n4");
    const auto h = subriemannian_hamiltonian(n4);
    const auto r = centralizer_basis(h, 2);
    CHECK(r.nullspace_dimension == 5);
    EchelonBasis span;
    std::vector<Monomial> monos = monomials_up_to(6, 2);
    auto row = [&](const Polynomial& p) {
      SparseRow v;
      for (std::size_t c = 0; c < monos.size(); ++c)
        if (auto q = p.coefficient(monos[c]); q != 0) v[c] = q;
      return v;
    };
    for (const auto& b : r.nullspace_basis) span.insert(row(b));
    for (const char* g : {"1", "w", "w^2", "1/2*x^2 + 1/2*y^2 + 1/2*z^2", "u*v - y*w"})
      CHECK_MESSAGE(span.contains(row(P(n4, g))), g);
  }

  TEST_CASE("heisenberg centralizer contains H and powers of w") {
    const auto h3 = builtin("heisenberg3");
    const auto h = subriemannian_hamiltonian(h3);
    const auto r = centralizer_basis(h, 2);
    CHECK(r.nullspace_dimension >= 4);
    for (const auto& b : r.nullspace_basis) CHECK(poisson_bracket(b, h).is_zero());
  }

  TEST_CASE("degree limit") {
    const auto h = subriemannian_hamiltonian(builtin("n4"));
    CHECK_THROWS_AS(centralizer_basis(h, 7), LimitError);
    CHECK_THROWS_AS(centralizer_basis(h, 3, {.max_degree = 2}), LimitError);
  }

  TEST_CASE("report serialization") {
    const auto r = centralizer_basis(subriemannian_hamiltonian(builtin("n4")), 1);
    const auto j = to_json(r);
    CHECK(j.at("degree_bound") == 1);
    CHECK(j.at("nullspace_dimension") == 2);
    CHECK(j.at("predicted_dimension") == 2);
    CHECK(j.at("centralizer_is_minimal") == true);
    CHECK(j.at("nullspace_basis").size() == 2);
  }

  TEST_CASE("membership in the generated subalgebra") {
    const auto n4 = builtin("n4");
    const std::vector<Polynomial> gens{subriemannian_hamiltonian(n4), P(n4, "w"), P(n4, "u*v - y*w")};
    const auto f = gens[0] * gens[0] + gens[1] * gens[2];
    auto p = express_in_generators(f, gens, 4);
    REQUIRE(p);
    CHECK(*p == parse_formal_polynomial(3, "g1^2 + g2*g3"));
    const auto back = substitute(*p, gens, [&](const Rational& q) { return Polynomial::constant(n4, q); });
    CHECK(back == f);

    CHECK_FALSE(express_in_generators(P(n4, "x"), gens, 4));
    auto zero = express_in_generators(Polynomial(n4), gens, 4);
    REQUIRE(zero);
    CHECK(zero->is_zero());
  }

  TEST_CASE("weighted exponents") {
    const auto e = weighted_exponents({2, 1, 2}, 2);
    CHECK(e.size() == 5);
    CHECK(weighted_exponents({2, 1, 2}, 4).size() == 14);
  }
}
