#include "doctest.h"

#include <random>

#include "carnot/errors.hpp"
#include "carnot/polynomial.hpp"
#include "support.hpp"

using namespace carnot;

TEST_SUITE("polynomial") {
  TEST_CASE("text grammar round trip") {
    const auto n4 = builtin("n4");
    const auto p = parse_polynomial(n4, "3/2*x^2*w - u*v");
    CHECK(to_string(p) == "3/2*x^2*w - u*v");
    CHECK(p.degree() == 3);
    CHECK_FALSE(p.is_homogeneous());
    CHECK(parse_polynomial(n4, to_string(p)) == p);
    CHECK(to_string(Polynomial(n4)) == "0");
    CHECK(parse_polynomial(n4, "(x + y)^2") == parse_polynomial(n4, "x^2 + 2*x*y + y^2"));
    CHECK(parse_polynomial(n4, "X*Y") == parse_polynomial(n4, "x*y"));
    CHECK(parse_polynomial(n4, "0.5*x") == parse_polynomial(n4, "1/2*x"));
  }

  TEST_CASE("parse errors carry an offset") {
    const auto n4 = builtin("n4");
    try {
      parse_polynomial(n4, "x + q");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.where() == "offset 4");
    }
    CHECK_THROWS_AS(parse_polynomial(n4, "x +"), ParseError);
    CHECK_THROWS_AS(parse_polynomial(n4, "(x"), ParseError);
  }

  TEST_CASE("ring laws on random inputs") {
    const auto n4 = builtin("n4");
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 30; ++trial) {
      const auto a = test_support::random_polynomial(n4, rng, 3);
      const auto b = test_support::random_polynomial(n4, rng, 3);
      const auto c = test_support::random_polynomial(n4, rng, 2);
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a - a).is_zero());
      // Product rule for the formal derivative.
      for (std::size_t i = 0; i < 6; ++i)
        CHECK((a * b).derivative(i) == a.derivative(i) * b + a * b.derivative(i));
    }
  }

  TEST_CASE("evaluation and homogeneous parts") {
    const auto h = builtin("heisenberg3");
    const auto p = parse_polynomial(h, "x^2 + 2*x*y - w + 3");
    CHECK(p.evaluate_exact({1, 2, 3}) == Rational(1 + 4 - 3 + 3));
    CHECK(p.evaluate<double>(std::vector<double>{1, 2, 3}) == doctest::Approx(5.0));
    CHECK(p.homogeneous_part(2) == parse_polynomial(h, "x^2 + 2*x*y"));
    CHECK(p.homogeneous_part(0) == Polynomial::constant(h, 3));
    CHECK(p.pow(0) == Polynomial::constant(h, 1));
  }

  TEST_CASE("formal substitution") {
    const auto n4 = builtin("n4");
    const auto g = parse_formal_polynomial(2, "g1^2 + 1/2*g2");
    CHECK(to_string(g) == "g1^2 + 1/2*g2");
    const std::vector<Polynomial> vals{parse_polynomial(n4, "x + y"), parse_polynomial(n4, "w")};
    const auto r = substitute(g, vals, [&](const Rational& q) { return Polynomial::constant(n4, q); });
    CHECK(r == parse_polynomial(n4, "x^2 + 2*x*y + y^2 + 1/2*w"));
  }

  TEST_CASE("mixing algebras is a usage error") {
    CHECK_THROWS_AS(Polynomial::variable(builtin("n4"), 0) + Polynomial::variable(builtin("heisenberg3"), 0),
                    UsageError);
  }
}
