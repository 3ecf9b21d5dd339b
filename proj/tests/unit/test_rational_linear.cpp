#include "doctest.h"

#include "carnot/errors.hpp"
#include "carnot/exact_linear.hpp"
#include "carnot/rational.hpp"

using namespace carnot;

TEST_SUITE("rational_linear") {
  TEST_CASE("rational parsing accepts integers, fractions and decimals exactly") {
    CHECK(parse_rational("7") == 7);
    CHECK(parse_rational("-3/4") == Rational(-3, 4));
    CHECK(parse_rational("6/8") == Rational(3, 4));
    CHECK(parse_rational("0.125") == Rational(1, 8));
    CHECK(parse_rational("-2.5") == Rational(-5, 2));
    CHECK(to_string(ratio(-6, 4)) == "-3/2");
    CHECK(to_string(Rational(0)) == "0");
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("abc"), ParseError);
    CHECK_THROWS_AS(parse_rational(""), ParseError);
  }

  TEST_CASE("echelon basis tracks rank and membership") {
    EchelonBasis b;
    CHECK(b.insert({{0, 1}, {1, 2}}));
    CHECK(b.insert({{1, 1}, {2, 1}}));
    CHECK_FALSE(b.insert({{0, 2}, {1, 5}, {2, 1}}));  // row1*2 + row2
    CHECK(b.rank() == 2);
    CHECK(b.contains({{0, 1}, {1, 3}, {2, 1}}));
    CHECK_FALSE(b.contains({{2, 1}}));
    const auto rows = b.reduced_rows();
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].count(1) == 0);  // pivot column of the second row cleared
  }

  TEST_CASE("nullspace vectors are annihilated and indexed by free columns") {
    // x + y + z = 0, y - z = 0
    std::vector<SparseRow> a{{{0, 1}, {1, 1}, {2, 1}}, {{1, 1}, {2, -1}}};
    const auto ns = nullspace(a, 3);
    REQUIRE(ns.size() == 1);
    const auto& v = ns[0];
    CHECK(v.at(2) == 1);
    for (const auto& row : a) {
      Rational s = 0;
      for (const auto& [c, val] : row) s += val * (v.count(c) ? v.at(c) : Rational(0));
      CHECK(s == 0);
    }
    CHECK(rank(a) == 2);
    CHECK(nullspace({}, 3).size() == 3);
  }

  TEST_CASE("solve returns a solution or reports inconsistency") {
    std::vector<SparseRow> a{{{0, 1}, {1, 1}}, {{0, 1}, {1, -1}}};
    auto x = solve(a, 2, {{0, 3}, {1, 1}});
    REQUIRE(x);
    CHECK(x->at(0) == 2);
    CHECK(x->at(1) == 1);
    std::vector<SparseRow> b{{{0, 1}}, {{0, 2}}};
    CHECK_FALSE(solve(b, 1, {{0, 1}, {1, 1}}));
  }
}
