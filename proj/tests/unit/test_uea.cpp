#include "doctest.h"

#include <random>

#include "carnot/centralizer.hpp"
#include "carnot/errors.hpp"
#include "carnot/poisson.hpp"
#include "carnot/uea.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace carnot;

namespace {

struct Fixture {
  AlgebraPtr n4 = builtin("n4");
  PbwPtr ctx = make_enveloping(n4);
  UeaElement E(std::string_view s) const { return parse_uea(ctx, s); }
  Polynomial P(std::string_view s) const { return parse_polynomial(n4, s); }
};

// Operator of a PBW element applied to a test polynomial.
oracle::GPoly apply(const UeaElement& a, const oracle::GPoly& f) {
  oracle::GPoly out;
  for (const auto& [word, c] : a.terms()) {
    std::vector<unsigned> w(6);
    for (std::size_t i = 0; i < 6; ++i) w[i] = word[i];
    for (const auto& [e, v] : oracle::apply_word(w, f)) oracle::gpoly_add(out, e, c * v);
  }
  return out;
}

// True when `a` and the composition of `b` after `c` agree on every probe.
bool same_operator_as_product(const UeaElement& a, const UeaElement& b, const UeaElement& c, int order) {
  for (const auto& probe : oracle::probes(order)) {
    oracle::GPoly lhs = apply(a, probe);
    oracle::GPoly rhs;
    for (const auto& [word, coeff] : b.terms()) {
      std::vector<unsigned> w(6);
      for (std::size_t i = 0; i < 6; ++i) w[i] = word[i];
      for (const auto& [e, v] : oracle::apply_word(w, apply(c, probe))) oracle::gpoly_add(rhs, e, coeff * v);
    }
    if (lhs != rhs) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("uea") {
  TEST_CASE("operator oracle reproduces the Lie bracket") {
    // [X_i, X_j] = sum_k c_ij^k X_k as operators, straight from the matrices.
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j)
        for (const auto& probe : oracle::probes(2)) {
          auto ij = oracle::apply_generator(i, oracle::apply_generator(j, probe));
          for (const auto& [e, v] : oracle::apply_generator(j, oracle::apply_generator(i, probe)))
            oracle::gpoly_add(ij, e, -v);
          oracle::GPoly expected;
          for (int k = 0; k < 6; ++k)
            for (const auto& [e, v] : oracle::apply_generator(k, probe))
              oracle::gpoly_add(expected, e, v * oracle::n4_structure_constant(i, j, k));
          CHECK(ij == expected);
        }
  }

  TEST_CASE("normal ordering examples") {
    Fixture f;
    CHECK(to_string(f.E("X") * f.E("Y")) == "X*Y");
    CHECK(f.E("Y") * f.E("X") == f.E("X*Y + U"));
    CHECK(commutator(f.E("X"), f.E("Y")) == f.E("-U"));
    CHECK(to_string(f.E("U*X")) == "X*U");
    CHECK(f.E("V*X") == f.E("X*V + W"));
  }

  TEST_CASE("products agree with the operator representation") {
    Fixture f;
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 12; ++trial) {
      const auto a = test_support::random_uea(f.ctx, rng, 2);
      const auto b = test_support::random_uea(f.ctx, rng, 2);
      CHECK(same_operator_as_product(a * b, a, b, 4));
    }
  }

  TEST_CASE("associativity and PBW consistency") {
    Fixture f;
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 15; ++trial) {
      const auto a = test_support::random_uea(f.ctx, rng, 3);
      const auto b = test_support::random_uea(f.ctx, rng, 3);
      const auto c = test_support::random_uea(f.ctx, rng, 3);
      CHECK((a * b) * c == a * (b * c));
    }
    // A word read in several associations.
    const auto z = f.E("Z"), y = f.E("Y"), x = f.E("X"), w = f.E("W");
    CHECK(((z * y) * x) * w == z * (y * (x * w)));
    CHECK((z * y) * (x * w) == z * ((y * x) * w));
  }

  TEST_CASE("center") {
    Fixture f;
    const auto h = quantized_hamiltonian(f.ctx);
    CHECK(h == f.E("1/2*X^2 + 1/2*Y^2 + 1/2*Z^2"));
    const auto central = declared_central_elements(f.ctx);
    REQUIRE(central.size() == 2);
    CHECK(central[0] == f.E("W"));
    CHECK(commutator(h, central[0]).is_zero());
    CHECK(commutator(h, central[1]).is_zero());
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = test_support::random_uea(f.ctx, rng, 3);
      CHECK(commutator(f.E("W"), a).is_zero());
      CHECK(commutator(f.E("U*V - Y*W"), a).is_zero());
    }
  }

  TEST_CASE("symmetrization and principal symbols") {
    Fixture f;
    CHECK(symmetrize(f.ctx, f.P("x")) == f.E("X"));
    CHECK(symmetrize(f.ctx, f.P("x*y")) == f.E("X*Y + 1/2*U"));
    CHECK(symmetrize(f.ctx, f.P("x*y")) == Rational(1, 2) * (f.E("X*Y") + f.E("Y*X")));
    const auto s = principal_symbol(symmetrize(f.ctx, f.P("x^2 + y*z")));
    CHECK(s.degree == 2);
    CHECK(s.symbol == f.P("x^2 + y*z"));
    const auto hs = principal_symbol(quantized_hamiltonian(f.ctx));
    CHECK(hs.symbol == subriemannian_hamiltonian(f.n4));
    CHECK(principal_symbol(f.E("X*Y + 1/2*U")).symbol == f.P("x*y"));
    CHECK(principal_symbol(f.E("W")).degree == 1);
    CHECK_THROWS_AS(principal_symbol(UeaElement(f.ctx)), UsageError);

    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 20; ++trial) {
      const unsigned k = 1 + trial % 4;
      const auto p = test_support::random_homogeneous(f.n4, rng, k);
      const auto sym = principal_symbol(symmetrize(f.ctx, p));
      CHECK(sym.degree == k);
      CHECK(sym.symbol == p);
    }
  }

  TEST_CASE("symbol of a commutator is the Poisson bracket of symbols") {
    Fixture f;
    std::mt19937_64 rng(7);
    int compared = 0;
    for (int trial = 0; trial < 30; ++trial) {
      const auto a = test_support::random_uea(f.ctx, rng, 3);
      const auto b = test_support::random_uea(f.ctx, rng, 3);
      if (a.is_zero() || b.is_zero()) continue;
      const auto c = commutator(a, b);
      const auto sa = principal_symbol(a), sb = principal_symbol(b);
      const auto pb = poisson_bracket(sa.symbol, sb.symbol);
      if (pb.is_zero()) continue;
      ++compared;
      REQUIRE_FALSE(c.is_zero());
      const auto sc = principal_symbol(c);
      CHECK(int(sc.degree) == int(sa.degree + sb.degree) - 1);
      CHECK(sc.symbol == pb);
    }
    CHECK(compared > 10);
  }

  TEST_CASE("commutant of the quantized Hamiltonian") {
    Fixture f;
    const auto h = quantized_hamiltonian(f.ctx);
    const std::size_t expected[] = {1, 2, 5};
    for (unsigned d = 0; d <= 2; ++d) {
      const auto r = commutant_basis(h, d);
      CHECK(r.dimension == expected[d]);
      CHECK(r.minimal);
      for (const auto& b : r.basis) CHECK(commutator(b, h).is_zero());
    }
    const auto r1 = commutant_basis(h, 1);
    CHECK(r1.basis[0] == UeaElement::constant(f.ctx, 1));
    CHECK(r1.basis[1] == f.E("W"));
    CHECK_THROWS_AS(commutant_basis(h, 5), LimitError);
    CHECK(to_json(r1).at("commutant_is_minimal") == true);
  }

  TEST_CASE("commutant elements commute with H as operators") {
    Fixture f;
    const auto h = quantized_hamiltonian(f.ctx);
    for (const auto& b : commutant_basis(h, 2).basis) {
      CHECK(same_operator_as_product(b * h, b, h, 4));
      CHECK(same_operator_as_product(h * b, h, b, 4));
      CHECK(b * h == h * b);
    }
  }

  TEST_CASE("degree descent") {
    Fixture f;
    const auto h = quantized_hamiltonian(f.ctx);
    const auto central = declared_central_elements(f.ctx);
    auto lift = [&](const Polynomial& p) {
      std::vector<UeaElement> gens{h, central[0], central[1]};
      return substitute(p, gens, [&](const Rational& q) { return UeaElement::constant(f.ctx, q); });
    };

    const auto f1 = h * h + central[0] * central[1];
    const auto r1 = degree_descent(f1, h, central);
    REQUIRE(r1.success);
    CHECK(r1.expression == parse_formal_polynomial(3, "g1^2 + g2*g3"));
    CHECK(lift(r1.expression) == f1);

    const auto r2 = degree_descent(central[0].pow(3), h, central);
    REQUIRE(r2.success);
    CHECK(r2.expression == parse_formal_polynomial(3, "g2^3"));
    CHECK(r2.stages.size() <= 4);

    for (const auto& b : commutant_basis(h, 3).basis) {
      const auto r = degree_descent(b, h, central);
      REQUIRE(r.success);
      CHECK(lift(r.expression) == b);
    }

    CHECK_THROWS_AS(degree_descent(f.E("X"), h, central), UsageError);
    CHECK_THROWS_AS(degree_descent(h, h, {f.E("X")}), UsageError);
  }

  TEST_CASE("text form") {
    Fixture f;
    CHECK(to_string(f.E("X^2*Y + 1/2*U")) == "X^2*Y + 1/2*U");
    CHECK(to_string(UeaElement(f.ctx)) == "0");
  }
}
