#include "doctest.h"

#include <random>

#include "carnot/errors.hpp"
#include "carnot/poisson.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace carnot;

namespace {

Polynomial P(const AlgebraPtr& a, std::string_view s) { return parse_polynomial(a, s); }

}  // namespace

TEST_SUITE("poisson") {
  TEST_CASE("bracket table of n4 coordinate functions") {
    const auto n4 = builtin("n4");
    CHECK(poisson_bracket(P(n4, "z"), P(n4, "u")) == P(n4, "w"));
    CHECK(poisson_bracket(P(n4, "y"), P(n4, "x")) == P(n4, "u"));
    CHECK(poisson_bracket(P(n4, "v"), P(n4, "x")) == P(n4, "w"));
    CHECK(poisson_bracket(P(n4, "z"), P(n4, "y")) == P(n4, "v"));
    CHECK(poisson_bracket(P(n4, "x"), P(n4, "u")).is_zero());
  }

  TEST_CASE("linear brackets agree with the matrix commutator") {
    const auto n4 = builtin("n4");
    for (std::size_t i = 0; i < 6; ++i)
      for (std::size_t j = 0; j < 6; ++j) {
        Polynomial expected(n4);
        for (std::size_t k = 0; k < 6; ++k)
          expected.add_term(Monomial::unit(6, k), oracle::n4_structure_constant(int(i), int(j), int(k)));
        CHECK(poisson_bracket(Polynomial::variable(n4, i), Polynomial::variable(n4, j)) == expected);
      }
  }

  TEST_CASE("Casimirs") {
    const auto n4 = builtin("n4");
    CHECK(is_casimir(P(n4, "w")));
    CHECK(is_casimir(P(n4, "u*v - y*w")));
    CHECK(is_casimir(P(n4, "w^3 - 2*(u*v - y*w)^2 + 7")));
    CHECK_FALSE(is_casimir(P(n4, "x")));
    CHECK_FALSE(is_casimir(P(n4, "u*v + y*w")));
    for (const auto& c : declared_casimirs(n4)) CHECK(is_casimir(c));
    CHECK(is_casimir(P(builtin("heisenberg3"), "w")));
  }

  TEST_CASE("Hamiltonian vector fields") {
    const auto n4 = builtin("n4");
    const auto h = subriemannian_hamiltonian(n4);
    CHECK(h == P(n4, "1/2*x^2 + 1/2*y^2 + 1/2*z^2"));
    const auto f = hamiltonian_vector_field(h);
    const char* expected[] = {"-u*y", "u*x - v*z", "v*y", "-w*z", "w*x", "0"};
    for (int i = 0; i < 6; ++i) CHECK(f[i] == P(n4, expected[i]));

    // With [X,Y] = W and the plus-sign bracket: x' = {x, H} = y {x, y} = w y.
    const auto heis = builtin("heisenberg3");
    const auto fh = hamiltonian_vector_field(subriemannian_hamiltonian(heis));
    CHECK(fh[0] == P(heis, "w*y"));
    CHECK(fh[1] == P(heis, "-w*x"));
    CHECK(fh[2].is_zero());

    for (const auto& c : hamiltonian_vector_field(Polynomial::constant(n4, 5))) CHECK(c.is_zero());
  }

  TEST_CASE("constants of motion have zero derivative along the flow") {
    const auto n4 = builtin("n4");
    const auto h = subriemannian_hamiltonian(n4);
    for (const char* q : {"1/2*x^2 + 1/2*y^2 + 1/2*z^2", "w", "u*v - y*w"}) {
      const auto field = hamiltonian_vector_field(h);
      const auto f = P(n4, q);
      Polynomial rate(n4);
      for (std::size_t i = 0; i < 6; ++i) rate += f.derivative(i).with_algebra(n4) * field[i];
      CHECK_MESSAGE(rate.is_zero(), q);
    }
  }

  TEST_CASE("Jacobi, Leibniz and antisymmetry on random polynomials") {
    const auto n4 = builtin("n4");
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 20; ++trial) {
      const auto f = test_support::random_polynomial(n4, rng, 3);
      const auto g = test_support::random_polynomial(n4, rng, 3);
      const auto k = test_support::random_polynomial(n4, rng, 3);
      CHECK(poisson_bracket(f, f).is_zero());
      CHECK(poisson_bracket(f, g) == -poisson_bracket(g, f));
      CHECK((poisson_bracket(f, poisson_bracket(g, k)) + poisson_bracket(g, poisson_bracket(k, f)) +
             poisson_bracket(k, poisson_bracket(f, g)))
                .is_zero());
      CHECK(poisson_bracket(f * g, k) == f * poisson_bracket(g, k) + g * poisson_bracket(f, k));
    }
  }

  TEST_CASE("mismatched algebras") {
    CHECK_THROWS_AS(poisson_bracket(P(builtin("n4"), "x"), P(builtin("heisenberg3"), "x")), UsageError);
  }
}
