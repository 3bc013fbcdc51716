#include "doctest.h"

#include <random>

#include "oracles.hpp"
#include "valmono/error.hpp"
#include "valmono/values.hpp"

using namespace valmono;

namespace {

Value val(const GroupPtr& g, std::vector<Rational> c) { return Value(g, std::move(c)); }

Value random_value(const GroupPtr& g, std::mt19937_64& rng, int span = 6) {
  std::uniform_int_distribution<int> num(-span, span), den(1, 4);
  std::vector<Rational> c;
  for (int i = 0; i < g->rank(); ++i) {
    Rational q(num(rng), den(rng));
    q.canonicalize();
    c.push_back(q);
  }
  return Value(g, c);
}

int as_int(Cmp c) { return c == Cmp::Less ? -1 : (c == Cmp::Equal ? 0 : 1); }

}  // namespace

TEST_CASE("compare: unit against sqrt2 and friends") {
  auto g = ValueGroup::make(2);
  CHECK(compare(val(g, {1, 0}), val(g, {0, 1})) == Cmp::Less);
  CHECK(compare(val(g, {0, 0}), val(g, {0, 0})) == Cmp::Equal);
  CHECK(compare(val(g, {2, 0}), val(g, {0, 1})) == Cmp::Greater);
  CHECK(oracle::sqrt_combination_sign({1, -1}) < 0);
  CHECK(oracle::sqrt_combination_sign({2, -1}) > 0);
}

TEST_CASE("compare: mismatched groups") {
  auto g = ValueGroup::make(2);
  auto h = ValueGroup::make(3);
  CHECK_THROWS_WITH_AS(compare(Value::zero(g), Value::zero(h)), "group mismatch", AlgebraError);
}

TEST_CASE("compare: close values need refinement") {
  auto g = ValueGroup::make(3);
  // 99 sqrt2 vs 70 sqrt3 + ... close pairs: 1393/985 ~ sqrt2.
  CHECK(compare(val(g, {1393, -985, 0}), Value::zero(g)) ==
        (oracle::sqrt_combination_sign({1393, -985, 0}) > 0 ? Cmp::Greater : Cmp::Less));
  Rational tiny(1, 1000000007);
  CHECK(compare(val(g, {tiny, 0, 0}), Value::zero(g)) == Cmp::Greater);
}

TEST_CASE("compare agrees with the floating oracle") {
  std::mt19937_64 rng(11);
  for (int rank = 1; rank <= 5; ++rank) {
    auto g = ValueGroup::make(rank);
    for (int k = 0; k < 200; ++k) {
      const Value a = random_value(g, rng), b = random_value(g, rng);
      const int expect = oracle::sqrt_combination_sign((a - b).coords());
      CHECK(as_int(compare(a, b)) == expect);
    }
  }
}

TEST_CASE("compare is a translation-invariant total order") {
  std::mt19937_64 rng(12);
  auto g = ValueGroup::make(3);
  for (int k = 0; k < 300; ++k) {
    const Value a = random_value(g, rng), b = random_value(g, rng), c = random_value(g, rng);
    CHECK(as_int(compare(a, b)) == -as_int(compare(b, a)));
    CHECK(compare(a + c, b + c) == compare(a, b));
    if (a <= b && b <= c) CHECK(a <= c);
    CHECK((compare(a, b) == Cmp::Equal) == (a.coords() == b.coords()));
  }
}

TEST_CASE("lex ordering compares the first differing coordinate") {
  auto g = ValueGroup::make(2, GroupOrdering::Lex);
  CHECK(compare(val(g, {1, -100}), val(g, {0, 100})) == Cmp::Greater);
  CHECK(compare(val(g, {0, 1}), val(g, {0, 2})) == Cmp::Less);
  CHECK(compare(val(g, {3, 3}), val(g, {3, 3})) == Cmp::Equal);
}

TEST_CASE("value group validation") {
  CHECK_THROWS_AS(ValueGroup(0, GroupOrdering::SqrtPrimes, {}), AlgebraError);
  CHECK_THROWS_AS(ValueGroup(2, GroupOrdering::SqrtPrimes, {"a", "a"}), AlgebraError);
  CHECK_THROWS_AS(ValueGroup(2, GroupOrdering::SqrtPrimes, {"a"}), AlgebraError);
}

TEST_CASE("value_of_exponent") {
  auto g = ValueGroup::make(2);
  std::vector<Value> w{val(g, {1, 0}), val(g, {0, 1})};
  std::vector<std::int64_t> zero{0, 0}, a{2, 3};
  CHECK(value_of_exponent(zero, w).is_zero());
  CHECK(value_of_exponent(a, w) == val(g, {2, 3}));
  std::vector<Value> halves{val(g, {Rational(1, 2), 0}), val(g, {Rational(1, 2), 0})};
  std::vector<std::int64_t> ones{1, 1};
  CHECK(value_of_exponent(ones, halves) == val(g, {1, 0}));
  std::vector<std::int64_t> three{1, 1, 1};
  CHECK_THROWS_WITH_AS(value_of_exponent(three, w), "length mismatch", AlgebraError);
}

TEST_CASE("min_integer_multiple_in_lattice examples") {
  auto g1 = ValueGroup::make(1);
  std::vector<Value> b1{val(g1, {1})};
  auto r = min_integer_multiple_in_lattice(val(g1, {Rational(3, 2)}), b1);
  CHECK(r.m_bar == 2);
  REQUIRE(r.coeffs.size() == 1);
  CHECK(r.coeffs[0] == 3);
  CHECK(oracle::brute_min_multiple({Rational(3, 2)}, {{1}}, 64, 10) == 2);

  auto g2 = ValueGroup::make(2);
  std::vector<Value> b2{val(g2, {1, 0}), val(g2, {0, 1})};
  r = min_integer_multiple_in_lattice(val(g2, {Rational(1, 2), Rational(1, 3)}), b2);
  CHECK(r.m_bar == 6);
  CHECK(r.coeffs[0] == 3);
  CHECK(r.coeffs[1] == 2);
  CHECK(oracle::brute_min_multiple({Rational(1, 2), Rational(1, 3)}, {{1, 0}, {0, 1}}, 6, 4) == 6);

  r = min_integer_multiple_in_lattice(b2[0], b2);
  CHECK(r.m_bar == 1);
  CHECK(r.coeffs[0] == 1);
  CHECK(r.coeffs[1] == 0);
}

TEST_CASE("min_integer_multiple_in_lattice errors") {
  auto g2 = ValueGroup::make(2);
  std::vector<Value> one{val(g2, {1, 0})};
  CHECK_THROWS_WITH_AS(min_integer_multiple_in_lattice(val(g2, {0, 1}), one),
                       "not in divisible hull", AlgebraError);
  std::vector<Value> dep{val(g2, {1, 0}), val(g2, {2, 0})};
  CHECK_THROWS_WITH_AS(min_integer_multiple_in_lattice(val(g2, {1, 0}), dep), "degenerate basis",
                       AlgebraError);
}

TEST_CASE("min_integer_multiple_in_lattice is minimal (brute force)") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<int> num(-7, 7), den(1, 8);
  auto g = ValueGroup::make(2);
  for (int k = 0; k < 60; ++k) {
    // Skewed basis so the lattice is not the coordinate lattice.
    std::vector<std::vector<Rational>> basis{{1, 1}, {0, 2}};
    Rational q1(num(rng), den(rng)), q2(num(rng), den(rng));
    q1.canonicalize();
    q2.canonicalize();
    std::vector<Rational> t{q1, q1 + 2 * q2};
    std::vector<Value> bv{val(g, basis[0]), val(g, basis[1])};
    const auto r = min_integer_multiple_in_lattice(val(g, t), bv);
    const auto expect = oracle::brute_min_multiple(t, basis, 64, 60);
    CHECK(r.m_bar == expect);
    Value recon = bv[0].scaled(Rational(r.coeffs[0])) + bv[1].scaled(Rational(r.coeffs[1]));
    CHECK(recon == val(g, t).scaled(Rational(static_cast<long>(r.m_bar))));
  }
}

TEST_CASE("lattice_basis and rational_rank") {
  auto g = ValueGroup::make(2);
  std::vector<Value> gens{val(g, {2, 0}), val(g, {3, 0}), val(g, {0, Rational(1, 2)})};
  const auto basis = lattice_basis(gens);
  CHECK(basis.size() == 2);
  CHECK(rational_rank(gens) == 2);
  // The lattice contains (1,0) = 3 - 2.
  const auto r = min_integer_multiple_in_lattice(val(g, {1, 0}), basis);
  CHECK(r.m_bar == 1);
  const auto r2 = min_integer_multiple_in_lattice(val(g, {Rational(1, 2), 0}), basis);
  CHECK(r2.m_bar == 2);
}

TEST_CASE("parse_rational is strict") {
  CHECK(parse_rational("3/6") == Rational(1, 2));
  CHECK(parse_rational("-4") == -4);
  CHECK(format_rational(Rational(-3, 2)) == "-3/2");
  for (const char* bad : {"", "1.5", "1/", "/2", "1/0", "+3", "1e3", " 1", "1/-2"})
    CHECK_THROWS_AS(parse_rational(bad), SchemaError);
}
