#pragma once

// Elementary uniformizing sequences and the drivers that monomialize key
// polynomials and chain-measured polynomials.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "valmono/framing.hpp"
#include "valmono/game.hpp"
#include "valmono/keypoly.hpp"
#include "valmono/values.hpp"

namespace valmono {

/// Q = sum b_i y_+^{d-i} (w_n^abar y_-)^i + h, where y = y_+/y_- is the
/// ground monomial of value abar * beta_n.
struct UniformizingProblem {
  std::vector<std::string> ground;
  std::vector<Value> ground_weights;
  std::vector<std::string> passive;
  std::vector<std::optional<Value>> passive_weights;
  std::string wn;
  Value beta_n;
  bool transcendental = false;  // P = 0: no translation, one dimension less
  std::vector<Rational> b;      // b_0..b_d, b_d = 1
  MultiPoly h;                  // perturbation over ground ++ passive ++ [wn]
  std::optional<Value> q_value;  // value of Q + h, if known
  std::string t_label = "t";

  /// ground ++ passive ++ [wn].
  Frame frame() const;
};

/// Reads the b_i (and the perturbation) off a polynomial in the problem's
/// variables. Throws "d not integral" and "polynomial is not of elementary
/// form".
UniformizingProblem problem_from_polynomial(const MultiPoly& Q, std::vector<std::string> ground,
                                            std::vector<Value> ground_weights,
                                            std::vector<std::string> passive,
                                            std::vector<std::optional<Value>> passive_weights,
                                            std::string wn, Value beta_n,
                                            std::optional<Value> q_value = std::nullopt);

struct UniformizingResult {
  FramedSequence sequence;
  std::size_t first_step = 0;  // earlier steps were already in the sequence
  std::int64_t alpha_bar = 1;
  std::vector<std::int64_t> alpha;  // per ground variable
  std::int64_t d = 0;
  std::string wn;
  std::vector<std::string> ground;
  std::vector<std::string> passive;
  Exponent numerator;    // w_n^abar y_- over the parameters at first_step
  Exponent denominator;  // y_+
  MultiPoly q;           // Q + h over the ambient ring at first_step
  bool transcendental = false;
  std::vector<Rational> residue_poly;  // b_0..b_d; empty when transcendental
  std::string z_label;                 // unit tag standing for z
  std::optional<std::string> t_label;  // new parameter when P != 0
  MultiPoly perturbation;              // (image of h) / y_+^d; zero without h
  MultiPoly q_image;
  MultiPoly y_image;
  std::vector<std::pair<std::string, MonomialFactorization>> variable_images;
  std::vector<std::pair<std::string, std::vector<std::int64_t>>> parameter_monomials;
  std::vector<PairStepRecord> log;
};

/// Builds and verifies the sequence; throws if a conclusion fails.
UniformizingResult elementary_uniformizing_sequence(const UniformizingProblem& problem,
                                                    const GameOptions& opts = {});

/// Exact re-check of the six conclusions; returns the names of failed ones.
std::vector<std::string> check_uniformizing_result(const UniformizingResult& r);

struct KeyPolyWitness {
  std::size_t entry = 0;  // 1-based
  MultiPoly image;
  MonomialFactorization factorization;
};

struct KeyPolyMonomialization {
  FramedSequence sequence;
  std::vector<std::string> key_params;  // parameter standing for Q_q after stage q
  std::vector<std::size_t> stage_starts;
  std::vector<KeyPolyWitness> witnesses;
  std::int64_t last_order = 0;  // order of the last key parameter in the image of Q_l
  std::vector<PairStepRecord> log;
};

KeyPolyMonomialization monomialize_key_polys(const KeyPolyChain& chain,
                                             const GameOptions& opts = {});

struct StandardMonomial {
  Rational coeff;
  Exponent ground;
  std::vector<std::int64_t> powers;  // exponent of Q_1..Q_l
};

/// Flattened standard expansion of f at the top level.
std::vector<StandardMonomial> standard_monomials(const MultiPoly& f, const KeyPolyChain& chain);

struct PolynomialMonomialization {
  FramedSequence sequence;
  std::size_t key_steps = 0;
  std::vector<StandardMonomial> terms;
  std::size_t survivor = 0;
  Exponent exponent;
  Exponent unit_exponent;
  MultiPoly unit;
  MultiPoly image;
  std::vector<IdealStepRecord> log;
};

PolynomialMonomialization monomialize_polynomial(const MultiPoly& f, const KeyPolyChain& chain,
                                                 const GameOptions& opts = {});

}  // namespace valmono
