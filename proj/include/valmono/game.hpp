#pragma once

// The valuation-guided monomialization game: tau, descent centers, pair and
// ideal games, monomial valuations and non-degenerate elements.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "valmono/framing.hpp"
#include "valmono/polyalg.hpp"
#include "valmono/values.hpp"

namespace valmono {

struct TauValue {
  std::int64_t s = 0;
  std::int64_t t = 0;
  auto operator<=>(const TauValue&) const = default;
};

TauValue tau(const Exponent& alpha, const Exponent& gamma);

struct MonomialValuationSpec {
  std::vector<std::string> variables;
  std::vector<Value> weights;

  /// Throws "weights must be positive" / "length mismatch".
  void validate() const;
  Frame frame() const;
};

struct GameOptions {
  std::int64_t budget = 100000;
  bool auto_independence = true;
  std::vector<std::string> independence;  // labels never used in a center
};

struct DescentCenter {
  std::vector<std::size_t> J;
  std::size_t j = 0;
};

/// Greedy inclusion-minimal center for the pair, vertex by minimal weight.
DescentCenter descent_center(const Exponent& alpha, const Exponent& gamma,
                             const std::vector<Value>& weights);
DescentCenter descent_center(const Exponent& alpha, const Exponent& gamma,
                             const MonomialValuationSpec& spec);
/// Same on a frame whose parameters may have unknown weights outside J.
DescentCenter descent_center(const Exponent& alpha, const Exponent& gamma, const Frame& frame);

/// Exponent (over parameters) of the image of u^e; J^x coordinates are
/// dropped since they became units.
Exponent push_exponent(const FramedStep& step, const Exponent& e);

bool divides(const Exponent& a, const Exponent& b);

struct PairStepRecord {
  std::int64_t step = 0;
  TauValue tau;
  std::vector<std::size_t> J;
  std::size_t j = 0;
  Exponent alpha;
  Exponent gamma;
};

struct PairResult {
  FramedSequence sequence;
  Exponent alpha;
  Exponent gamma;
  std::vector<PairStepRecord> log;
};

PairResult monomialize_pair(const Exponent& alpha, const Exponent& gamma,
                            const MonomialValuationSpec& spec, const GameOptions& opts = {});

/// Runs the pair game on the final frame of `seq`, appending steps.
/// Returns the exponents in the new final frame.
std::pair<Exponent, Exponent> run_pair_game(FramedSequence& seq, Exponent alpha, Exponent gamma,
                                            const GameOptions& opts,
                                            std::vector<PairStepRecord>* log = nullptr);

struct IdealStepRecord {
  std::int64_t step = 0;
  std::int64_t b = 0;
  TauValue pair_tau;
  std::size_t first = 0;
  std::size_t second = 0;
  std::vector<std::size_t> J;
  std::size_t j = 0;
  std::vector<Exponent> generators;
};

struct PrincipalizeResult {
  FramedSequence sequence;
  std::size_t survivor = 0;
  std::vector<Exponent> images;
  std::vector<IdealStepRecord> log;
};

PrincipalizeResult principalize_monomial_ideal(const std::vector<Exponent>& generators,
                                               const MonomialValuationSpec& spec,
                                               const GameOptions& opts = {});

/// Ideal game on the final frame of `seq`. The generators need not be
/// minimal. Returns the index of the survivor and the final images.
std::pair<std::size_t, std::vector<Exponent>> run_ideal_game(
    FramedSequence& seq, std::vector<Exponent> generators, const GameOptions& opts,
    std::vector<IdealStepRecord>* log = nullptr);

/// Indices of a minimal generating subset; among equal exponents the
/// preferred index (then the smallest) is kept.
std::vector<std::size_t> minimal_generators(const std::vector<Exponent>& generators,
                                            std::size_t preferred = 0);

/// (b, s, t): b + 1 minimal generators, (s, t) the least pair tau; (0, 0, 1)
/// when b = 0.
std::vector<std::int64_t> ideal_tau(const std::vector<Exponent>& generators);

Value monomial_valuation(const MultiPoly& f, const MonomialValuationSpec& spec);
MultiPoly initial_form(const MultiPoly& f, const MonomialValuationSpec& spec);

struct NondegenerateResult {
  FramedSequence sequence;
  std::size_t survivor = 0;
  Exponent exponent;
  Exponent unit_exponent;
  MultiPoly unit;
  MultiPoly image;
  std::vector<IdealStepRecord> log;
};

NondegenerateResult monomialize_nondegenerate(const MultiPoly& f,
                                              const MonomialValuationSpec& spec,
                                              const GameOptions& opts = {});

}  // namespace valmono
