#pragma once

#include <initializer_list>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "valmono/polyalg.hpp"

namespace testing_util {

using valmono::Exponent;
using valmono::MultiPoly;
using valmono::Rational;

inline MultiPoly poly(std::vector<std::string> vars,
                      std::initializer_list<std::pair<Exponent, Rational>> terms) {
  MultiPoly p(std::move(vars));
  for (const auto& [e, c] : terms) p.add_term(e, c);
  return p;
}

inline MultiPoly random_poly(const std::vector<std::string>& vars, std::mt19937_64& rng,
                             int max_terms, int max_deg, int coeff_span = 5) {
  std::uniform_int_distribution<int> nterms(1, max_terms), deg(0, max_deg),
      num(-coeff_span, coeff_span), den(1, 3);
  MultiPoly p(vars);
  const int k = nterms(rng);
  for (int t = 0; t < k; ++t) {
    Exponent e(vars.size());
    for (auto& x : e) x = deg(rng);
    Rational c(num(rng), den(rng));
    c.canonicalize();
    p.add_term(e, c);
  }
  return p;
}

}  // namespace testing_util
