#include "doctest.h"

#include <random>

#include "helpers.hpp"
#include "oracles.hpp"
#include "valmono/error.hpp"
#include "valmono/polyalg.hpp"

using namespace valmono;
using testing_util::poly;
using testing_util::random_poly;

namespace {

std::vector<Rational> dense_in_x(const MultiPoly& p) {
  std::vector<Rational> out(static_cast<std::size_t>(std::max<std::int64_t>(p.degree_in(0), 0)) + 1,
                            Rational(0));
  for (const auto& [e, c] : p.terms()) out[e[0]] = c;
  return out;
}

}  // namespace

TEST_CASE("euclid_divide examples") {
  const std::vector<std::string> x{"x"};
  auto f = poly(x, {{{2}, 1}, {{1}, 1}, {{0}, 1}});
  auto g = poly(x, {{{1}, 1}});
  auto [q, r] = euclid_divide(f, g, "x");
  CHECK(q == poly(x, {{{1}, 1}, {{0}, 1}}));
  CHECK(r == poly(x, {{{0}, 1}}));

  auto f3 = poly(x, {{{3}, 1}});
  auto g2 = poly(x, {{{2}, 1}, {{0}, 1}});
  auto [q2, r2] = euclid_divide(f3, g2, "x");
  CHECK(q2 == poly(x, {{{1}, 1}}));
  CHECK(r2 == poly(x, {{{1}, -1}}));
  const auto [oq, orr] = oracle::long_divide({0, 0, 0, 1}, {1, 0, 1});
  CHECK(dense_in_x(q2) == oq);
  CHECK(dense_in_x(r2) == orr);

  auto [q3, r3] = euclid_divide(g, g2, "x");
  CHECK(q3.is_zero());
  CHECK(r3 == g);
}

TEST_CASE("euclid_divide rejects non-monic divisors") {
  const std::vector<std::string> ux{"u", "x"};
  auto f = poly(ux, {{{0, 3}, 1}});
  auto g = poly(ux, {{{0, 2}, 2}});
  CHECK_THROWS_WITH_AS(euclid_divide(f, g, "x"), "non-monic divisor", AlgebraError);
  auto h = poly(ux, {{{1, 2}, 1}});
  CHECK_THROWS_WITH_AS(euclid_divide(f, h, "x"), "non-monic divisor", AlgebraError);
}

TEST_CASE("euclid_divide matches dense long division") {
  std::mt19937_64 rng(21);
  const std::vector<std::string> x{"x"};
  for (int k = 0; k < 100; ++k) {
    auto f = random_poly(x, rng, 6, 7);
    auto g = random_poly(x, rng, 3, 3);
    Exponent lead{g.degree_in(0) + 1};
    g.add_term(lead, Rational(1) - (g.terms().count(lead) ? g.terms().at(lead) : Rational(0)));
    auto [q, r] = euclid_divide(f, g, 0);
    auto [oq, orr] = oracle::long_divide(dense_in_x(f), dense_in_x(g));
    auto dq = dense_in_x(q);
    dq.resize(std::max(dq.size(), oq.size()), Rational(0));
    oq.resize(dq.size(), Rational(0));
    CHECK(dq == oq);
    auto dr = dense_in_x(r);
    dr.resize(std::max(dr.size(), orr.size()), Rational(0));
    orr.resize(dr.size(), Rational(0));
    CHECK(dr == orr);
  }
}

TEST_CASE("euclid_divide reconstruction in several variables") {
  std::mt19937_64 rng(22);
  const std::vector<std::string> v{"u", "w", "x"};
  for (int k = 0; k < 100; ++k) {
    auto f = random_poly(v, rng, 8, 4);
    auto g = random_poly(v, rng, 4, 2);
    g = g - g.coeff_in(2, g.degree_in(2)).shifted({0, 0, g.degree_in(2)});
    g.add_term({0, 0, 3}, 1);
    g = g - g.coeff_in(2, 4).shifted({0, 0, 4});
    REQUIRE(is_monic_in(g, 2));
    auto [q, r] = euclid_divide(f, g, 2);
    CHECK(q * g + r == f);
    CHECK(r.degree_in(2) < g.degree_in(2));
  }
}

TEST_CASE("q_adic_expansion examples") {
  const std::vector<std::string> ux{"u", "x"};
  auto Q = poly(ux, {{{0, 2}, 1}, {{3, 0}, -1}});
  auto e = q_adic_expansion(Q, Q, "x");
  REQUIRE(e.size() == 2);
  CHECK(e[0].is_zero());
  CHECK(e[1] == MultiPoly::constant(ux, 1));

  auto f = poly(ux, {{{0, 3}, 1}});
  e = q_adic_expansion(f, Q, "x");
  REQUIRE(e.size() == 2);
  CHECK(e[0] == poly(ux, {{{3, 1}, 1}}));
  CHECK(e[1] == poly(ux, {{{0, 1}, 1}}));

  auto c = MultiPoly::constant(ux, Rational(7, 3));
  e = q_adic_expansion(c, Q, "x");
  REQUIRE(e.size() == 1);
  CHECK(e[0] == c);
}

TEST_CASE("q_adic_expansion reassembles") {
  std::mt19937_64 rng(23);
  const std::vector<std::string> ux{"u", "x"};
  for (int k = 0; k < 80; ++k) {
    auto f = random_poly(ux, rng, 8, 6);
    auto Q = random_poly(ux, rng, 3, 1);
    Q = Q - Q.coeff_in(1, 2).shifted({0, 2}) - Q.coeff_in(1, 1).shifted({0, 1});
    Q.add_term({0, 2}, 1);
    const auto parts = q_adic_expansion(f, Q, 1);
    MultiPoly acc(ux), pw = MultiPoly::constant(ux, 1);
    for (const auto& a : parts) {
      CHECK(a.degree_in(1) < 2);
      acc += a * pw;
      pw *= Q;
    }
    CHECK(acc == f);
  }
}

TEST_CASE("apply_monomial_map examples") {
  const std::vector<std::string> u{"u1", "u2"};
  LaurentMonomialMap id{identity_matrix(2), {}};
  auto f = poly(u, {{{2, 3}, 1}, {{0, 1}, -2}});
  CHECK(apply_monomial_map(f, id) == f);

  // u1 -> u1', u2 -> u1' u2'.
  LaurentMonomialMap m{{{1, 1}, {0, 1}}, {}};
  CHECK(apply_monomial_map(poly(u, {{{2, 3}, 1}}), m) == poly(u, {{{5, 3}, 1}}));
  CHECK(apply_monomial_map(poly(u, {{{1, 0}, 1}, {{0, 1}, 1}}), m) ==
        poly(u, {{{1, 0}, 1}, {{1, 1}, 1}}));

  LaurentMonomialMap inv{{{1, -1}, {0, 1}}, {}};
  CHECK_THROWS_WITH_AS(apply_monomial_map(poly(u, {{{0, 1}, 1}}), inv), "Laurent escape",
                       AlgebraError);
  CHECK(apply_monomial_map(apply_monomial_map(f, m), inv) == f);
}

TEST_CASE("apply_monomial_map round trip with the inverse matrix") {
  std::mt19937_64 rng(24);
  const std::vector<std::string> u{"a", "b", "c"};
  // Elementary unimodular matrix and its inverse.
  LaurentMonomialMap m{{{1, 0, 2}, {0, 1, 0}, {0, 0, 1}}, {}};
  LaurentMonomialMap mi{{{1, 0, -2}, {0, 1, 0}, {0, 0, 1}}, {}};
  CHECK(determinant(m.matrix) == 1);
  CHECK(matmul(m.matrix, mi.matrix) == identity_matrix(3));
  for (int k = 0; k < 50; ++k) {
    auto f = random_poly(u, rng, 5, 3);
    CHECK(apply_monomial_map(apply_monomial_map(f, m), mi) == f);
  }
}

TEST_CASE("substitute_variable examples") {
  const std::vector<std::string> ux{"u", "x"};
  auto x = MultiPoly::variable(ux, 1, Rational(1));
  auto f = poly(ux, {{{0, 2}, 1}});
  CHECK(substitute_variable(f, "x", x) == f);
  auto x1 = poly(ux, {{{0, 1}, 1}, {{0, 0}, 1}});
  CHECK(substitute_variable(f, "x", x1) == poly(ux, {{{0, 2}, 1}, {{0, 1}, 2}, {{0, 0}, 1}}));

  // x^2 - u^3 with x := u^3 (x + 1), against dense composition.
  auto cusp = poly(ux, {{{0, 2}, 1}, {{3, 0}, -1}});
  auto g = poly(ux, {{{3, 1}, 1}, {{3, 0}, 1}});
  const auto got = substitute_variable(cusp, "x", g);
  oracle::Dense2 gd{{{3, 1}, 1}, {{3, 0}, 1}};
  const auto want = oracle::add(oracle::power(gd, 2), oracle::Dense2{{{3, 0}, -1}});
  MultiPoly w(ux);
  for (const auto& [e, c] : want) w.add_term({e.first, e.second}, c);
  CHECK(got == w);
}

TEST_CASE("determinant") {
  CHECK(determinant(identity_matrix(4)) == 1);
  CHECK(determinant({{0, 1}, {1, 0}}) == -1);
  CHECK(determinant({{2, 3}, {4, 6}}) == 0);
  CHECK(determinant({{1, 2, 3}, {0, 1, 4}, {5, 6, 0}}) == 1);
}

TEST_CASE("field tower arithmetic") {
  // Q(s) with s^2 = 2, then Q(s, c) with c^2 = s.
  FieldTower::Extension e1{"s", poly({"s"}, {{{2}, 1}, {{0}, -2}})};
  FieldTower::Extension e2{"c", poly({"s", "c"}, {{{0, 2}, 1}, {{1, 0}, -1}})};
  auto tower = FieldTower::make({e1, e2});
  auto s = TowerElem::symbol(tower, 0);
  auto c = TowerElem::symbol(tower, 1);
  CHECK(s * s == TowerElem::from_rational(tower, 2));
  CHECK(c * c * c * c == TowerElem::from_rational(tower, 2));
  auto one = TowerElem::from_rational(tower, 1);
  for (const auto& x : {s, c, s + c, c * s + one, one - c}) {
    CHECK(x * x.inverse() == one);
  }
  CHECK_THROWS_WITH_AS(TowerElem::from_rational(tower, 0).inverse(), "division by zero",
                       AlgebraError);
}

TEST_CASE("field tower inversion on random elements") {
  std::mt19937_64 rng(25);
  FieldTower::Extension e1{"a", poly({"a"}, {{{3}, 1}, {{1}, -1}, {{0}, -1}})};
  auto tower = FieldTower::make({e1});
  auto one = TowerElem::from_rational(tower, 1);
  for (int k = 0; k < 50; ++k) {
    auto p = random_poly({"a"}, rng, 3, 2);
    if (p.is_zero()) continue;
    TowerElem x(tower, p);
    CHECK(x * x.inverse() == one);
  }
}

TEST_CASE("field tower reports a reducible definer") {
  // X^2 - 1 = (X - 1)(X + 1).
  FieldTower::Extension e1{"r", poly({"r"}, {{{2}, 1}, {{0}, -1}})};
  auto tower = FieldTower::make({e1});
  auto r = TowerElem::symbol(tower, 0);
  auto x = r - TowerElem::from_rational(tower, 1);
  CHECK_THROWS_WITH_AS(x.inverse(), doctest::Contains("reducible definer"), AlgebraError);
}

TEST_CASE("field tower rejects non-monic definers") {
  FieldTower::Extension e1{"r", poly({"r"}, {{{2}, 2}, {{0}, -1}})};
  CHECK_THROWS_AS(FieldTower::make({e1}), AlgebraError);
}

TEST_CASE("polynomials over a tower") {
  FieldTower::Extension e1{"i", poly({"i"}, {{{2}, 1}, {{0}, 1}})};
  auto tower = FieldTower::make({e1});
  auto i = TowerElem::symbol(tower, 0);
  auto one = TowerElem::from_rational(tower, 1);
  // (x - i)(x + i) = x^2 + 1.
  auto x = TowerPoly::variable({"x"}, 0, one);
  auto a = x - TowerPoly::constant({"x"}, i);
  auto b = x + TowerPoly::constant({"x"}, i);
  auto prod = a * b;
  auto want = x * x + TowerPoly::constant({"x"}, one);
  CHECK(prod == want);
  auto [q, r] = euclid_divide(want, a, 0);
  CHECK(q == b);
  CHECK(r.is_zero());
}
