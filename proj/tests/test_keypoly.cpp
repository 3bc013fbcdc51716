#include "doctest.h"

#include <random>

#include "generators.hpp"
#include "helpers.hpp"
#include "valmono/error.hpp"
#include "valmono/game.hpp"
#include "valmono/keypoly.hpp"

using namespace valmono;
using testing_util::poly;

namespace {

GroupPtr g1() {
  static auto g = ValueGroup::make(1);
  return g;
}

Value v(Rational q) { return Value(g1(), {q}); }

const std::vector<std::string> UX{"u", "x"};

KeyPolyChain cusp(Rational b1 = Rational(3, 2), Rational b2 = Rational(4),
                  MultiPoly q2 = poly(UX, {{{0, 2}, 1}, {{3, 0}, -1}})) {
  return KeyPolyChain({"u"}, {v(1)}, "x",
                      {{poly(UX, {{{0, 1}, 1}}), v(b1)}, {std::move(q2), v(b2)}});
}

bool has_code(const std::vector<ChainDiagnostic>& d, const std::string& code, std::size_t entry) {
  for (const auto& x : d)
    if (x.code == code && x.entry == entry) return true;
  return false;
}

}  // namespace

TEST_CASE("standard_expansion") {
  const auto c = cusp();
  const auto q2 = c.entry(2).Q;
  auto e = standard_expansion(q2, c, 2);
  REQUIRE(e.coeffs.size() == 2);
  CHECK(e.coeffs[0].is_zero());
  CHECK(e.coeffs[1] == MultiPoly::constant(UX, 1));

  e = standard_expansion(poly(UX, {{{0, 3}, 1}}), c, 2);
  REQUIRE(e.coeffs.size() == 2);
  CHECK(e.coeffs[1] == poly(UX, {{{0, 1}, 1}}));
  CHECK(e.coeffs[0] == poly(UX, {{{3, 1}, 1}}));
  REQUIRE(e.sub.size() == 2);
  CHECK(e.sub[0].coeffs.size() == 2);
  CHECK(e.reassemble(c) == poly(UX, {{{0, 3}, 1}}));

  e = standard_expansion(poly(UX, {{{2, 1}, 1}, {{1, 0}, 1}}), c, 2);
  CHECK(e.coeffs.size() == 1);
  CHECK_THROWS_AS(standard_expansion(q2, c, 3), AlgebraError);
}

TEST_CASE("truncated_valuation on the cusp chain") {
  const auto c = cusp();
  const auto q2 = c.entry(2).Q;
  CHECK(truncated_valuation(q2, c, 1) == v(3));
  CHECK(truncated_valuation(q2, c, 2) == v(4));
  CHECK(truncated_valuation(poly(UX, {{{0, 1}, 1}}), c, 1) == v(Rational(3, 2)));
  CHECK_THROWS_AS(truncated_valuation(MultiPoly(UX), c, 1), AlgebraError);
  // x^3 = x Q_2 + u^3 x: min(3/2 + 4, 3 + 3/2).
  CHECK(truncated_valuation(poly(UX, {{{0, 3}, 1}}), c, 2) == v(Rational(9, 2)));
}

TEST_CASE("delta and epsilon") {
  const auto c = cusp();
  const auto q2 = c.entry(2).Q;
  CHECK(delta_invariant(q2, c, 1) == 2);
  CHECK(epsilon_invariant(q2, c, 1) == std::nullopt);
  CHECK(delta_invariant(q2, c, 2) == 1);
  CHECK(epsilon_invariant(q2, c, 2) == std::nullopt);
  CHECK(delta_invariant(poly(UX, {{{0, 1}, 1}, {{5, 0}, 1}}), c, 1) == 1);
  CHECK(delta_invariant(poly(UX, {{{2, 0}, 1}, {{5, 0}, 1}}), c, 1) == 0);

  // x^2 + u x + u^3 at level 1: values 3, 5/2, 3.
  const auto f = poly(UX, {{{0, 2}, 1}, {{1, 1}, 1}, {{3, 0}, 1}});
  const auto vals = expansion_term_values(f, c, 1);
  REQUIRE(vals.size() == 3);
  CHECK(*vals[0] == v(3));
  CHECK(*vals[1] == v(Rational(5, 2)));
  CHECK(*vals[2] == v(3));
  CHECK(delta_invariant(f, c, 1) == 1);
  CHECK(epsilon_invariant(f, c, 1) == 2);

  // Q_i + c with value(c) > beta_i.
  const auto g = q2 + poly(UX, {{{5, 0}, 1}});
  CHECK(delta_invariant(g, c, 2) == 1);
  CHECK(epsilon_invariant(g, c, 2) == std::nullopt);
  CHECK(delta_invariant(poly(UX, {{{1, 0}, 1}}), c, 2) == 0);
}

TEST_CASE("next_key_char0") {
  const KeyPolyChain c({"u"}, {v(1)}, "x", {{poly(UX, {{{0, 1}, 1}}), v(1)}});
  const auto nk = next_key_char0(c, poly(UX, {{{0, 2}, 1}, {{1, 1}, 1}, {{3, 0}, 1}}));
  CHECK(nk.delta == 2);
  CHECK(nk.z == poly(UX, {{{1, 0}, Rational(1, 2)}}));
  CHECK(nk.Q_next == poly(UX, {{{0, 1}, 1}, {{1, 0}, Rational(1, 2)}}));

  CHECK_THROWS_WITH_AS(next_key_char0(c, poly(UX, {{{0, 2}, 2}, {{1, 1}, 1}})),
                       "unnormalized leading coefficient", AlgebraError);
  CHECK_THROWS_AS(next_key_char0(c, poly(UX, {{{1, 0}, 1}})), AlgebraError);

  // Quadratic completion at level 2: Q^2 + 2 u^4 Q + u^10.
  const auto k = cusp();
  const auto Q = k.entry(2).Q;
  const auto u4 = poly(UX, {{{4, 0}, 1}});
  const auto f = Q * Q + u4.scaled(2) * Q + poly(UX, {{{10, 0}, 1}});
  const auto nk2 = next_key_char0(k, f);
  CHECK(nk2.delta == 2);
  CHECK(nk2.z == u4);
  CHECK(nk2.Q_next == Q + u4);
}

TEST_CASE("validate_chain") {
  CHECK(validate_chain(cusp()).empty());
  CHECK(has_code(validate_chain(KeyPolyChain({"u"}, {v(1)}, "x", {})), "empty-chain", 0));
  CHECK(has_code(validate_chain(cusp(Rational(3, 2), Rational(1))), "beta-not-increasing", 2));
  CHECK(has_code(validate_chain(cusp(Rational(3, 2), Rational(4),
                                     poly(UX, {{{0, 2}, 2}, {{3, 0}, -1}}))),
                 "non-monic", 2));
  const auto flat = validate_chain(cusp(Rational(3, 2), Rational(3)));
  CHECK(has_code(flat, "slope-not-increasing", 2));
  CHECK(has_code(flat, "no-value-jump", 2));
  CHECK(has_code(validate_chain(KeyPolyChain({"u"}, {v(1)}, "x",
                                             {{poly(UX, {{{0, 1}, 1}, {{1, 0}, 1}}), v(1)}})),
                 "first-not-x", 1));
  CHECK(has_code(validate_chain(KeyPolyChain({"u"}, {v(-1)}, "x", {{poly(UX, {{{0, 1}, 1}}), v(1)}})),
                 "nonpositive-weight", 0));
  auto three = cusp().entries();
  three.push_back({poly(UX, {{{0, 3}, 1}, {{9, 0}, 1}}), v(20)});
  CHECK(has_code(validate_chain(KeyPolyChain({"u"}, {v(1)}, "x", three)), "degree-not-multiple", 3));
}

TEST_CASE("level one is the monomial valuation with x weighted by beta_1") {
  std::mt19937_64 rng(5);
  auto g = ValueGroup::make(2);
  for (int run = 0; run < 40; ++run) {
    const auto chain = testing_util::random_chain(g, {2, 1, 2, true}, rng);
    auto w = chain.ground_weights();
    w.push_back(chain.entry(1).beta);
    const MonomialValuationSpec spec{chain.vars(), w};
    for (int t = 0; t < 5; ++t) {
      const auto f = testing_util::random_chain_poly(chain, rng, 5, 4);
      CHECK(truncated_valuation(f, chain, 1) == monomial_valuation(f, spec));
    }
  }
}

TEST_CASE("random chains: expansion, monotonicity, multiplicativity, delta descent") {
  std::mt19937_64 rng(17);
  auto g = ValueGroup::make(2);
  for (int run = 0; run < 30; ++run) {
    const std::size_t len = 2 + run % 2;
    const auto chain = testing_util::random_chain(g, {std::size_t(1 + run % 2), len, 2, run % 3 == 0}, rng);
    REQUIRE(validate_chain(chain).empty());
    const auto xi = chain.x_index();
    for (int t = 0; t < 4; ++t) {
      const auto f = testing_util::random_chain_poly(chain, rng, 4, 5, 2);
      const auto h = testing_util::random_chain_poly(chain, rng, 3, 3, 2);
      for (std::size_t i = 1; i <= len; ++i) {
        const auto e = standard_expansion(f, chain, i);
        CHECK(e.reassemble(chain) == f);
        for (const auto& c : e.coeffs) CHECK(c.degree_in(xi) < chain.degree(i));
        CHECK(truncated_valuation(f * h, chain, i) ==
              truncated_valuation(f, chain, i) + truncated_valuation(h, chain, i));
        if (!(f + h).is_zero())
          CHECK(std::min(truncated_valuation(f, chain, i), truncated_valuation(h, chain, i)) <=
                truncated_valuation(f + h, chain, i));
        if (i < len) {
          CHECK(truncated_valuation(f, chain, i) <= truncated_valuation(f, chain, i + 1));
          CHECK(chain.alpha(i + 1) * static_cast<std::int64_t>(delta_invariant(f, chain, i + 1)) <=
                static_cast<std::int64_t>(delta_invariant(f, chain, i)));
        }
      }
    }
  }
}
