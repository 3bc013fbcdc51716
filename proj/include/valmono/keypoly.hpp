#pragma once

// Key-polynomial chains on K[x], K = Q(u_1, ..., u_m) with a monomial
// valuation on the u's. The chain's top truncation is the valuation.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "valmono/game.hpp"
#include "valmono/polyalg.hpp"
#include "valmono/values.hpp"

namespace valmono {

struct ChainEntry {
  MultiPoly Q;
  Value beta;
};

class KeyPolyChain {
 public:
  KeyPolyChain() = default;
  /// Polynomials are rewritten over ground_vars ++ [x].
  KeyPolyChain(std::vector<std::string> ground_vars, std::vector<Value> ground_weights,
               std::string x, std::vector<ChainEntry> entries);

  const std::vector<std::string>& ground_vars() const { return ground_vars_; }
  const std::vector<Value>& ground_weights() const { return ground_weights_; }
  const std::string& x() const { return x_; }
  std::size_t x_index() const { return ground_vars_.size(); }
  const std::vector<ChainEntry>& entries() const { return entries_; }
  std::size_t length() const { return entries_.size(); }
  const std::vector<std::string>& vars() const { return vars_; }

  /// Entry i, 1-based.
  const ChainEntry& entry(std::size_t i) const { return entries_.at(i - 1); }
  std::int64_t degree(std::size_t i) const { return entry(i).Q.degree_in(x_index()); }
  /// alpha_i = deg Q_i / deg Q_{i-1} (alpha_1 = deg Q_1); 0 if not integral.
  std::int64_t alpha(std::size_t i) const;

  MonomialValuationSpec ground_spec() const;
  MultiPoly lift(const MultiPoly& f) const;
  GroupPtr group() const;

 private:
  std::vector<std::string> ground_vars_;
  std::vector<Value> ground_weights_;
  std::string x_;
  std::vector<ChainEntry> entries_;
  std::vector<std::string> vars_;
};

struct StandardExpansion {
  std::size_t level = 0;
  std::vector<MultiPoly> coeffs;        // c_0 .. c_s
  std::vector<StandardExpansion> sub;   // expansions of the c_j one level down
  MultiPoly reassemble(const KeyPolyChain& chain) const;
};

StandardExpansion standard_expansion(const MultiPoly& f, const KeyPolyChain& chain, std::size_t i);

/// mu'_i(f).
Value truncated_valuation(const MultiPoly& f, const KeyPolyChain& chain, std::size_t i);

/// Per-term values j*beta_i + mu'_{i-1}(c_j); none for zero coefficients.
std::vector<std::optional<Value>> expansion_term_values(const MultiPoly& f,
                                                        const KeyPolyChain& chain, std::size_t i);

std::size_t delta_invariant(const MultiPoly& f, const KeyPolyChain& chain, std::size_t i);
std::optional<std::size_t> epsilon_invariant(const MultiPoly& f, const KeyPolyChain& chain,
                                             std::size_t i);

struct NextKey {
  std::size_t delta = 0;
  MultiPoly z;
  MultiPoly Q_next;
};

/// Translation step at the top level of the chain.
NextKey next_key_char0(const KeyPolyChain& chain, const MultiPoly& f);

struct ChainDiagnostic {
  std::string code;
  std::size_t entry = 0;  // 1-based; 0 for the whole chain
};

std::vector<ChainDiagnostic> validate_chain(const KeyPolyChain& chain);

}  // namespace valmono
