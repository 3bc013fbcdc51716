#pragma once

// Framed local blow-ups.
//
// A Frame is the bookkeeping state of a local ring reached by a sequence of
// framed blow-ups: regular parameters (with their values, when known), unit
// tags (former parameters whose value dropped to 0) and the relations that
// tie translation parameters to unit tags. Elements are polynomials over
// params ++ units, compared through their normal form modulo the relations.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "valmono/polyalg.hpp"
#include "valmono/values.hpp"

namespace valmono {

enum class StepKind { Monomial, Translation };

std::string to_string(StepKind kind);

/// Residue data for one variable of J^x: either transcendental (the variable
/// is dropped from the parameters) or algebraic with P(z) = sum coeffs[i] z^i,
/// monic, in which case t = P(z) becomes a new parameter at the same slot.
struct ResidueGenerator {
  bool transcendental = true;
  std::vector<MultiPoly> coeffs;  // b_0..b_d, each free of parameters
  std::string param_label;
  std::optional<Value> weight;  // value of the new parameter, if known
};

/// The new parameter is t = P(z) + perturbation; the perturbation lives over
/// the ambient ring after the step and must not mention t.
struct Translation {
  std::size_t source = 0;    // index of the J^x variable before the step
  std::size_t position = 0;  // index of the new parameter after the step
  std::string param_label;
  std::vector<MultiPoly> coeffs;
  std::optional<Value> weight;
  MultiPoly perturbation;
};

struct FramedStep {
  std::size_t n_before = 0;
  std::size_t n_after = 0;
  std::vector<std::size_t> J;
  std::size_t j = 0;
  StepKind kind = StepKind::Monomial;
  LaurentMonomialMap forward;  // u in terms of u'
  LaurentMonomialMap inverse;  // u' in terms of u
  std::vector<std::size_t> J_times;
  std::vector<std::optional<std::size_t>> D1;  // per new parameter: old index, or none
  std::vector<Translation> translations;
};

/// u'_i = u_i/u_j for i in J minus j; other variables fixed.
FramedStep make_monomial_blowup(std::size_t n, const std::vector<std::size_t>& J, std::size_t j);

/// Index in J of minimal weight, ties to the smallest index.
std::size_t choose_vertex(const std::vector<std::size_t>& J, const std::vector<Value>& weights);

/// Weights after the monomial part of `step` (J^x entries become zero).
std::vector<Value> pushforward_weights(const std::vector<Value>& weights, const FramedStep& step);

/// Blow-up along (u_J) with vertex j; variables whose pushed weight is zero
/// form J^x and are resolved by `residue_spec`, one entry each in order.
FramedStep build_constructed_blowup(std::size_t n, const std::vector<std::size_t>& J,
                                    std::size_t j, const std::vector<Value>& weights,
                                    const std::vector<ResidueGenerator>& residue_spec);
/// Same, for frames where parameters outside J may have unknown weight.
FramedStep build_constructed_blowup(std::size_t n, const std::vector<std::size_t>& J,
                                    std::size_t j,
                                    const std::vector<std::optional<Value>>& weights,
                                    const std::vector<ResidueGenerator>& residue_spec);

class Frame {
 public:
  Frame() = default;
  Frame(std::vector<std::string> params, std::vector<std::optional<Value>> weights);

  const std::vector<std::string>& params() const { return params_; }
  const std::vector<std::optional<Value>>& weights() const { return weights_; }
  const std::vector<std::string>& units() const { return units_; }
  const std::vector<MultiPoly>& relations() const { return relations_; }
  const std::vector<std::string>& relation_units() const { return relation_units_; }
  std::size_t nparams() const { return params_.size(); }

  /// params ++ units.
  std::vector<std::string> ambient() const;
  std::size_t param_index(const std::string& label) const;

  /// Known weights; throws if some parameter has none.
  std::vector<Value> known_weights() const;

  /// Rewrites f (over any subset of the ambient labels) over the ambient ring.
  MultiPoly lift(const MultiPoly& f) const;
  /// Canonical form modulo the relations.
  MultiPoly normal_form(const MultiPoly& f) const;

  /// A normal-form element is a unit iff its parameter-free part is nonzero.
  bool is_unit(const MultiPoly& f) const;
  /// f / u^e when u^e divides f, over the ambient ring.
  std::optional<MultiPoly> divide_by_monomial(const MultiPoly& f, const Exponent& e) const;
  /// Largest k with u_i^k dividing f (f nonzero).
  std::int64_t order_in_param(const MultiPoly& f, std::size_t i) const;

  /// Frame after the step; `image` pushes an element along the same step.
  Frame apply(const FramedStep& step) const;
  MultiPoly image(const FramedStep& step, const MultiPoly& f) const;
  /// Same with the frame after the step already computed.
  MultiPoly image(const FramedStep& step, const MultiPoly& f, const Frame& after) const;

  /// Exponent of u^e as a polynomial over the ambient ring.
  MultiPoly param_monomial(const Exponent& e, const Rational& c = 1) const;

  /// Relations are kept in creation order; later ones may mention earlier units.
  void add_relation(std::string unit, MultiPoly relation);

 private:
  std::vector<std::string> params_;
  std::vector<std::optional<Value>> weights_;
  std::vector<std::string> units_;
  std::vector<MultiPoly> relations_;
  std::vector<std::string> relation_units_;
};

/// f = u^exponent * u_tags^unit_exponent * unit, unit with nonzero
/// parameter-free part.
struct MonomialFactorization {
  Exponent exponent;       // over the parameters
  Exponent unit_exponent;  // over the unit tags
  MultiPoly unit;
};

std::optional<MonomialFactorization> monomial_factorization(const Frame& frame,
                                                            const MultiPoly& f);

class FramedSequence {
 public:
  FramedSequence() = default;
  explicit FramedSequence(Frame initial) : initial_(std::move(initial)) {}

  const Frame& initial() const { return initial_; }
  const std::vector<FramedStep>& steps() const { return steps_; }
  const std::vector<std::string>& independence() const { return independence_; }
  bool has_independence() const { return has_independence_; }

  void declare_independence(std::vector<std::string> labels);
  /// Appends a step; checks counts and independence. Returns the new frame.
  const Frame& push_back(FramedStep step);
  void append(const FramedSequence& tail);

  const Frame& final_frame() const { return frames_.empty() ? initial_ : frames_.back(); }
  const std::vector<Frame>& frames() const { return frames_; }
  Frame frame_before(std::size_t step) const { return step == 0 ? initial_ : frames_[step - 1]; }

  /// Image in the final frame of f given over the initial labels.
  MultiPoly push(const MultiPoly& f) const;
  MultiPoly push_from(std::size_t first_step, const MultiPoly& f) const;

 private:
  Frame initial_;
  std::vector<FramedStep> steps_;
  std::vector<Frame> frames_;
  std::vector<std::string> independence_;
  bool has_independence_ = false;
};

/// Product of the forward matrices (u in terms of the final frame).
/// Throws "not purely monomial" if a step has J^x or a translation.
LaurentMonomialMap compose_sequence(const FramedSequence& seq);

/// Checks det = 1 and forward * inverse = identity.
bool step_is_unimodular(const FramedStep& step);

}  // namespace valmono
