#include "valmono/keypoly.hpp"

#include <algorithm>

namespace valmono {

KeyPolyChain::KeyPolyChain(std::vector<std::string> ground_vars, std::vector<Value> ground_weights,
                           std::string x, std::vector<ChainEntry> entries)
    : ground_vars_(std::move(ground_vars)),
      ground_weights_(std::move(ground_weights)),
      x_(std::move(x)),
      entries_(std::move(entries)) {
  if (ground_vars_.size() != ground_weights_.size()) throw AlgebraError("length mismatch");
  if (std::find(ground_vars_.begin(), ground_vars_.end(), x_) != ground_vars_.end())
    throw AlgebraError("distinguished variable is also a ground variable");
  vars_ = ground_vars_;
  vars_.push_back(x_);
  for (auto& e : entries_) e.Q = lift(e.Q);
}

std::int64_t KeyPolyChain::alpha(std::size_t i) const {
  if (i == 1) return degree(1);
  const auto a = degree(i), b = degree(i - 1);
  if (b <= 0 || a % b != 0) return 0;
  return a / b;
}

MonomialValuationSpec KeyPolyChain::ground_spec() const {
  return MonomialValuationSpec{ground_vars_, ground_weights_};
}

MultiPoly KeyPolyChain::lift(const MultiPoly& f) const {
  if (f.vars() == vars_) return f;
  return f.with_vars(vars_);
}

GroupPtr KeyPolyChain::group() const {
  if (!ground_weights_.empty()) return ground_weights_.front().group();
  if (!entries_.empty()) return entries_.front().beta.group();
  throw AlgebraError("chain has no values");
}

namespace {

void check_level(const KeyPolyChain& chain, std::size_t i) {
  if (i < 1 || i > chain.length()) throw AlgebraError("level out of range");
}

Value ground_value(const MultiPoly& c, const KeyPolyChain& chain) {
  if (c.is_zero()) throw AlgebraError("zero polynomial has no value");
  const auto xi = chain.x_index();
  if (c.degree_in(xi) > 0) throw AlgebraError("chain must start with Q_1 = x");
  std::optional<Value> best;
  const auto& w = chain.ground_weights();
  for (const auto& [e, coef] : c.terms()) {
    Value v = value_of_exponent(std::span<const std::int64_t>(e.data(), xi), w, chain.group());
    if (!best || v < *best) best = std::move(v);
  }
  return *best;
}

Value mu(const MultiPoly& f, const KeyPolyChain& chain, std::size_t i) {
  if (i == 0) return ground_value(f, chain);
  const auto parts = q_adic_expansion(f, chain.entry(i).Q, chain.x_index());
  std::optional<Value> best;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (parts[j].is_zero()) continue;
    Value v = chain.entry(i).beta.scaled(Rational(static_cast<long>(j))) + mu(parts[j], chain, i - 1);
    if (!best || v < *best) best = std::move(v);
  }
  if (!best) throw AlgebraError("zero polynomial has no value");
  return *best;
}

}  // namespace

StandardExpansion standard_expansion(const MultiPoly& f_in, const KeyPolyChain& chain,
                                     std::size_t i) {
  check_level(chain, i);
  const auto f = chain.lift(f_in);
  StandardExpansion out;
  out.level = i;
  out.coeffs = q_adic_expansion(f, chain.entry(i).Q, chain.x_index());
  if (i > 1)
    for (const auto& c : out.coeffs) out.sub.push_back(standard_expansion(c, chain, i - 1));
  return out;
}

MultiPoly StandardExpansion::reassemble(const KeyPolyChain& chain) const {
  const auto& Q = chain.entry(level).Q;
  MultiPoly acc(chain.vars());
  for (std::size_t j = coeffs.size(); j-- > 0;) {
    acc = acc * Q;
    acc += sub.empty() ? coeffs[j] : sub[j].reassemble(chain);
  }
  return acc;
}

Value truncated_valuation(const MultiPoly& f, const KeyPolyChain& chain, std::size_t i) {
  check_level(chain, i);
  return mu(chain.lift(f), chain, i);
}

std::vector<std::optional<Value>> expansion_term_values(const MultiPoly& f_in,
                                                        const KeyPolyChain& chain, std::size_t i) {
  check_level(chain, i);
  const auto f = chain.lift(f_in);
  if (f.is_zero()) throw AlgebraError("zero polynomial has no value");
  const auto parts = q_adic_expansion(f, chain.entry(i).Q, chain.x_index());
  std::vector<std::optional<Value>> out;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (parts[j].is_zero()) {
      out.emplace_back();
      continue;
    }
    out.emplace_back(chain.entry(i).beta.scaled(Rational(static_cast<long>(j))) +
                     mu(parts[j], chain, i - 1));
  }
  return out;
}

namespace {

std::optional<Value> min_of(const std::vector<std::optional<Value>>& vals, std::size_t from) {
  std::optional<Value> best;
  for (std::size_t j = from; j < vals.size(); ++j)
    if (vals[j] && (!best || *vals[j] < *best)) best = vals[j];
  return best;
}

}  // namespace

std::size_t delta_invariant(const MultiPoly& f, const KeyPolyChain& chain, std::size_t i) {
  const auto vals = expansion_term_values(f, chain, i);
  const auto m = min_of(vals, 0);
  std::size_t d = 0;
  for (std::size_t j = 0; j < vals.size(); ++j)
    if (vals[j] && compare(*vals[j], *m) == Cmp::Equal) d = j;
  return d;
}

std::optional<std::size_t> epsilon_invariant(const MultiPoly& f, const KeyPolyChain& chain,
                                             std::size_t i) {
  const auto vals = expansion_term_values(f, chain, i);
  const auto m = min_of(vals, 0);
  std::size_t d = 0;
  for (std::size_t j = 0; j < vals.size(); ++j)
    if (vals[j] && compare(*vals[j], *m) == Cmp::Equal) d = j;
  const auto second = min_of(vals, d + 1);
  if (!second) return std::nullopt;
  for (std::size_t j = d + 1; j < vals.size(); ++j)
    if (vals[j] && compare(*vals[j], *second) == Cmp::Equal) return j;
  return std::nullopt;
}

NextKey next_key_char0(const KeyPolyChain& chain, const MultiPoly& f_in) {
  const std::size_t i = chain.length();
  check_level(chain, i);
  const auto f = chain.lift(f_in);
  NextKey out;
  out.delta = delta_invariant(f, chain, i);
  if (out.delta == 0) throw AlgebraError("delta is zero");
  const auto parts = q_adic_expansion(f, chain.entry(i).Q, chain.x_index());
  const auto& lead = parts[out.delta];
  if (!lead.is_constant() || lead.constant_term() != 1)
    throw AlgebraError("unnormalized leading coefficient");
  out.z = parts[out.delta - 1].scaled(Rational(1, static_cast<long>(out.delta)));
  out.Q_next = chain.entry(i).Q + out.z;
  if (compare(truncated_valuation(out.Q_next, chain, i), chain.entry(i).beta) != Cmp::Equal)
    throw AlgebraError("value jump assertion failed");
  return out;
}

std::vector<ChainDiagnostic> validate_chain(const KeyPolyChain& chain) {
  std::vector<ChainDiagnostic> out;
  if (chain.length() == 0) {
    out.push_back({"empty-chain", 0});
    return out;
  }
  for (const auto& w : chain.ground_weights())
    if (sign(w) != Cmp::Greater) out.push_back({"nonpositive-weight", 0});
  const auto xi = chain.x_index();
  bool expandable = true;
  for (std::size_t i = 1; i <= chain.length(); ++i) {
    const auto& e = chain.entry(i);
    const bool monic = e.Q.degree_in(xi) >= 1 && is_monic_in(e.Q, xi);
    if (!monic) out.push_back({"non-monic", i});
    if (i == 1) {
      if (!(e.Q == MultiPoly::variable(chain.vars(), xi, Rational(1))))
        out.push_back({"first-not-x", 1});
      if (sign(e.beta) != Cmp::Greater) out.push_back({"nonpositive-weight", 1});
      expandable = expandable && monic;
      continue;
    }
    const auto& prev = chain.entry(i - 1);
    if (chain.alpha(i) == 0) out.push_back({"degree-not-multiple", i});
    if (!(prev.beta < e.beta)) out.push_back({"beta-not-increasing", i});
    const Value lhs = e.beta.scaled(Rational(static_cast<long>(prev.Q.degree_in(xi))));
    const Value rhs = prev.beta.scaled(Rational(static_cast<long>(e.Q.degree_in(xi))));
    if (!(rhs < lhs)) out.push_back({"slope-not-increasing", i});
    if (expandable && monic) {
      try {
        if (!(truncated_valuation(e.Q, chain, i - 1) < e.beta)) out.push_back({"no-value-jump", i});
      } catch (const AlgebraError&) {
        out.push_back({"expansion-failed", i});
      }
    }
    expandable = expandable && monic;
  }
  return out;
}

}  // namespace valmono
