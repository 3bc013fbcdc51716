#pragma once

// Problem documents and trace mutation shared by the CLI tests and the
// acceptance runner.

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "valmono/json_io.hpp"

namespace testing_util {

using valmono::Json;

inline Json weights_json(const std::vector<valmono::Value>& w) {
  Json out = Json::array();
  for (const auto& v : w) out.push_back(valmono::value_to_json(v));
  return out;
}

inline Json pair_problem(const valmono::MonomialValuationSpec& spec, const valmono::Exponent& a,
                         const valmono::Exponent& g) {
  return Json{{"algorithm", "pair"}, {"spec", valmono::spec_to_json(spec)}, {"alpha", a}, {"gamma", g}};
}

inline Json principalize_problem(const valmono::MonomialValuationSpec& spec,
                                 const std::vector<valmono::Exponent>& gens) {
  Json gj = Json::array();
  for (const auto& e : gens) gj.push_back(e);
  return Json{{"algorithm", "principalize"}, {"spec", valmono::spec_to_json(spec)}, {"generators", gj}};
}

inline Json nondegenerate_problem(const valmono::MonomialValuationSpec& spec, const valmono::MultiPoly& f) {
  return Json{{"algorithm", "nondegenerate"}, {"spec", valmono::spec_to_json(spec)}, {"f", valmono::poly_to_json(f)}};
}

inline Json chain_problem(const std::string& alg, const valmono::KeyPolyChain& chain) {
  return Json{{"algorithm", alg}, {"chain", valmono::chain_to_json(chain)}};
}

/// Q = w2^2 - w1^3 with weights 2 and 3.
inline Json cusp_problem() {
  return Json::parse(R"({"algorithm":"uniformize",
    "ground":{"vars":["w1"],"weights":[{"coords":["2"]}]},
    "wn":"w2","beta_n":{"coords":["3"]},
    "Q":{"vars":["w1","w2"],"terms":[{"e":[0,2],"c":"1"},{"e":[3,0],"c":"-1"}]}})");
}

namespace detail {

inline void collect_exponents(Json& j, const std::string& key, std::vector<Json*>& out) {
  static const std::vector<std::string> keys{"e", "alpha", "gamma", "M", "N", "generators",
                                             "images", "exponent", "unit_exponent", "numerator",
                                             "denominator", "ground", "powers"};
  const bool exponent_key = std::find(keys.begin(), keys.end(), key) != keys.end();
  if (j.is_number_integer()) {
    if (exponent_key) out.push_back(&j);
  } else if (j.is_array()) {
    for (auto& x : j) collect_exponents(x, key, out);
  } else if (j.is_object()) {
    for (auto& [k, v] : j.items()) collect_exponents(v, k, out);
  }
}

}  // namespace detail

/// Adds one to a randomly chosen exponent entry; false if the trace has none.
inline bool mutate_exponent(Json& trace, std::mt19937_64& rng) {
  std::vector<Json*> slots;
  detail::collect_exponents(trace, "", slots);
  if (slots.empty()) return false;
  Json& x = *slots[std::uniform_int_distribution<std::size_t>(0, slots.size() - 1)(rng)];
  x = x.get<std::int64_t>() + 1;
  return true;
}

}  // namespace testing_util
