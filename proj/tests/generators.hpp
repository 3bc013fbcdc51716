#pragma once

// Random valid key-polynomial chains: Q_{i+1} = Q_i^e - c*M with M a
// standard monomial whose value is e*beta_i.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "valmono/keypoly.hpp"

namespace testing_util {

using valmono::ChainEntry;
using valmono::KeyPolyChain;
using valmono::Value;
using valmono::Exponent;
using valmono::MultiPoly;
using valmono::Rational;

struct ChainShape {
  std::size_t ground = 2;
  std::size_t length = 3;
  int max_e = 2;
  bool irrational = false;  // allow sqrt(2) components
};

inline Value random_positive(const valmono::GroupPtr& g, std::mt19937_64& rng, bool irrational) {
  std::uniform_int_distribution<int> num(1, 4), den(1, 2), coin(0, 1);
  std::vector<Rational> c(g->rank(), Rational(0));
  c[0] = Rational(num(rng), den(rng));
  c[0].canonicalize();
  if (irrational && g->rank() > 1 && coin(rng)) {
    c[1] = Rational(coin(rng) ? 1 : -1, 2 + den(rng));
    c[1].canonicalize();
  }
  Value v(g, c);
  if (valmono::sign(v) != valmono::Cmp::Greater) return Value::generator(g, 0);
  return v;
}

inline std::optional<KeyPolyChain> try_random_chain(const valmono::GroupPtr& g, const ChainShape& shape,
                                                    std::mt19937_64& rng) {
  std::vector<std::string> ground;
  std::vector<Value> w;
  for (std::size_t k = 0; k < shape.ground; ++k) {
    ground.push_back("u" + std::to_string(k + 1));
    w.push_back(random_positive(g, rng, shape.irrational));
  }
  std::vector<std::string> vars = ground;
  vars.push_back("x");
  const std::size_t xi = ground.size();
  std::vector<ChainEntry> entries{{MultiPoly::variable(vars, xi, Rational(1)), Value::zero(g)}};
  std::uniform_int_distribution<int> edist(1, shape.max_e), gdist(0, 2), cdist(1, 3), sgn(0, 1);

  for (std::size_t i = 1; i < shape.length; ++i) {
    bool ok = false;
    for (int attempt = 0; attempt < 40 && !ok; ++attempt) {
      const int e = edist(rng);
      Exponent gamma(vars.size(), 0);
      for (std::size_t k = 0; k < xi; ++k) gamma[k] = gdist(rng);
      MultiPoly M = MultiPoly::monomial(vars, gamma, Rational(1));
      Value vm = valmono::value_of_exponent(std::span<const std::int64_t>(gamma.data(), xi), w, g);
      for (std::size_t k = 1; k < i; ++k) {
        const KeyPolyChain partial(ground, w, "x", entries);
        const auto a = partial.alpha(k + 1);
        const auto ak = std::uniform_int_distribution<std::int64_t>(0, a - 1)(rng);
        M = M * entries[k - 1].Q.pow(ak);
        vm += entries[k - 1].beta.scaled(Rational(static_cast<long>(ak)));
      }
      if (valmono::sign(vm) != valmono::Cmp::Greater) continue;
      const Value beta = vm.scaled(Rational(1, e));
      std::vector<Value> gens = w;
      for (std::size_t k = 1; k < i; ++k) gens.push_back(entries[k - 1].beta);
      const auto basis = valmono::lattice_basis(gens);
      if (valmono::min_integer_multiple_in_lattice(beta, basis).m_bar != e) continue;
      entries[i - 1].beta = beta;
      const KeyPolyChain partial(ground, w, "x", entries);
      if (!valmono::validate_chain(partial).empty()) continue;
      Rational c(cdist(rng) * (sgn(rng) ? 1 : -1), cdist(rng));
      c.canonicalize();
      entries.push_back({entries[i - 1].Q.pow(e) - M.scaled(c), Value::zero(g)});
      ok = true;
    }
    if (!ok) return std::nullopt;
  }
  // The top value is free above the jump.
  const std::size_t n = entries.size();
  Value top = random_positive(g, rng, shape.irrational);
  if (n > 1) {
    entries[n - 1].beta = Value::zero(g);
    const KeyPolyChain partial(ground, w, "x", entries);
    top += valmono::truncated_valuation(entries[n - 1].Q, partial, n - 1);
  }
  entries[n - 1].beta = top;
  KeyPolyChain chain(ground, w, "x", entries);
  if (!valmono::validate_chain(chain).empty()) return std::nullopt;
  return chain;
}

inline KeyPolyChain random_chain(const valmono::GroupPtr& g, const ChainShape& shape,
                                 std::mt19937_64& rng) {
  for (;;)
    if (auto c = try_random_chain(g, shape, rng)) return *c;
}

/// Random polynomial in the chain's ring of x-degree at most max_x_deg.
inline MultiPoly random_chain_poly(const KeyPolyChain& chain, std::mt19937_64& rng, int max_terms,
                                   int max_x_deg, int max_ground_deg = 3) {
  std::uniform_int_distribution<int> nterms(1, max_terms), xd(0, max_x_deg),
      gd(0, max_ground_deg), num(-4, 4), den(1, 3);
  MultiPoly p(chain.vars());
  while (p.is_zero()) {
    const int k = nterms(rng);
    for (int t = 0; t < k; ++t) {
      Exponent e(chain.vars().size());
      for (std::size_t v = 0; v < chain.x_index(); ++v) e[v] = gd(rng);
      e[chain.x_index()] = xd(rng);
      Rational c(num(rng), den(rng));
      c.canonicalize();
      p.add_term(e, c);
    }
  }
  return p;
}

}  // namespace testing_util
