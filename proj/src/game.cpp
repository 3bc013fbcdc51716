#include "valmono/game.hpp"

#include <algorithm>
#include <numeric>

namespace valmono {

TauValue tau(const Exponent& alpha, const Exponent& gamma) {
  if (alpha.size() != gamma.size()) throw AlgebraError("length mismatch");
  std::int64_t a = 0, g = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    const auto d = std::min(alpha[i], gamma[i]);
    a += alpha[i] - d;
    g += gamma[i] - d;
  }
  if (a > g) std::swap(a, g);
  return {a, g};
}

bool divides(const Exponent& a, const Exponent& b) {
  if (a.size() != b.size()) throw AlgebraError("length mismatch");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

void MonomialValuationSpec::validate() const {
  if (variables.size() != weights.size()) throw AlgebraError("length mismatch");
  for (const auto& w : weights)
    if (sign(w) != Cmp::Greater) throw AlgebraError("weights must be positive");
  for (std::size_t i = 1; i < weights.size(); ++i)
    if (!(*weights[i].group() == *weights[0].group())) throw AlgebraError("group mismatch");
}

Frame MonomialValuationSpec::frame() const {
  validate();
  return Frame(variables, std::vector<std::optional<Value>>(weights.begin(), weights.end()));
}

namespace {

DescentCenter center_with(const Exponent& alpha, const Exponent& gamma,
                          const std::vector<std::optional<Value>>& weights) {
  if (alpha.size() != gamma.size() || alpha.size() != weights.size())
    throw AlgebraError("length mismatch");
  const std::size_t n = alpha.size();
  Exponent a(n), g(n);
  std::int64_t sa = 0, sg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto d = std::min(alpha[i], gamma[i]);
    a[i] = alpha[i] - d;
    g[i] = gamma[i] - d;
    sa += a[i];
    sg += g[i];
  }
  if (sa > sg) {
    std::swap(a, g);
    std::swap(sa, sg);
  }
  if (sa == 0) throw AlgebraError("nothing to do");

  DescentCenter c;
  for (std::size_t i = 0; i < n; ++i)
    if (a[i] > 0) c.J.push_back(i);
  std::vector<std::size_t> cand;
  for (std::size_t i = 0; i < n; ++i)
    if (g[i] > 0) cand.push_back(i);
  std::stable_sort(cand.begin(), cand.end(),
                   [&](std::size_t x, std::size_t y) { return g[x] > g[y]; });
  std::int64_t acc = 0;
  for (auto i : cand) {
    if (acc >= sa) break;
    c.J.push_back(i);
    acc += g[i];
  }
  std::sort(c.J.begin(), c.J.end());

  for (auto i : c.J)
    if (!weights[i]) throw AlgebraError("unknown weight in center");
  c.j = c.J.front();
  for (auto i : c.J) {
    const auto cmp = compare(*weights[i], *weights[c.j]);
    if (cmp == Cmp::Less) c.j = i;
  }
  return c;
}

std::vector<ResidueGenerator> transcendental_spec(const std::vector<std::optional<Value>>& weights,
                                                  const DescentCenter& c) {
  std::size_t zeros = 0;
  for (auto q : c.J)
    if (q != c.j && compare(*weights[q], *weights[c.j]) == Cmp::Equal) ++zeros;
  return std::vector<ResidueGenerator>(zeros);
}

std::vector<std::string> constant_coordinates(const Frame& frame,
                                              const std::vector<Exponent>& gens) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < frame.nparams(); ++i) {
    bool same = true;
    for (const auto& g : gens) same = same && g[i] == gens.front()[i];
    if (same) out.push_back(frame.params()[i]);
  }
  return out;
}

void check_independence(const Frame& frame, const DescentCenter& c, const GameOptions& opts) {
  for (auto q : c.J)
    if (std::find(opts.independence.begin(), opts.independence.end(), frame.params()[q]) !=
        opts.independence.end())
      throw AlgebraError("independence violated");
}

Value value_with(const Exponent& e, const std::vector<std::optional<Value>>& weights) {
  Value acc;
  bool first = true;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (e[i] == 0) continue;
    if (!weights[i]) throw AlgebraError("unknown weight in center");
    Value term = weights[i]->scaled(Rational(static_cast<long>(e[i])));
    acc = first ? term : acc + term;
    first = false;
  }
  if (first) {
    for (const auto& w : weights)
      if (w) return Value::zero(w->group());
    throw AlgebraError("no weights known");
  }
  return acc;
}

}  // namespace

DescentCenter descent_center(const Exponent& alpha, const Exponent& gamma,
                             const std::vector<Value>& weights) {
  return center_with(alpha, gamma,
                     std::vector<std::optional<Value>>(weights.begin(), weights.end()));
}

DescentCenter descent_center(const Exponent& alpha, const Exponent& gamma,
                             const MonomialValuationSpec& spec) {
  return descent_center(alpha, gamma, spec.weights);
}

DescentCenter descent_center(const Exponent& alpha, const Exponent& gamma, const Frame& frame) {
  return center_with(alpha, gamma, frame.weights());
}

Exponent push_exponent(const FramedStep& step, const Exponent& e) {
  if (e.size() != step.n_before) throw AlgebraError("length mismatch");
  const Exponent img = matvec(step.forward.matrix, e);
  Exponent out(step.D1.size(), 0);
  for (std::size_t p = 0; p < step.D1.size(); ++p)
    if (step.D1[p]) out[p] = img[*step.D1[p]];
  return out;
}

std::pair<Exponent, Exponent> run_pair_game(FramedSequence& seq, Exponent alpha, Exponent gamma,
                                            const GameOptions& opts,
                                            std::vector<PairStepRecord>* log) {
  std::int64_t steps = 0;
  for (TauValue t = tau(alpha, gamma); t.s != 0;) {
    if (steps >= opts.budget) throw AlgebraError("step budget exceeded");
    const Frame& frame = seq.final_frame();
    const auto c = descent_center(alpha, gamma, frame);
    check_independence(frame, c, opts);
    auto step = build_constructed_blowup(frame.nparams(), c.J, c.j, frame.weights(),
                                         transcendental_spec(frame.weights(), c));
    if (log) log->push_back({steps, t, c.J, c.j, alpha, gamma});
    alpha = push_exponent(step, alpha);
    gamma = push_exponent(step, gamma);
    seq.push_back(std::move(step));
    ++steps;
    const TauValue next = tau(alpha, gamma);
    if (!(next < t)) throw AlgebraError("tau did not decrease");
    t = next;
  }
  return {std::move(alpha), std::move(gamma)};
}

PairResult monomialize_pair(const Exponent& alpha, const Exponent& gamma,
                            const MonomialValuationSpec& spec, const GameOptions& opts) {
  if (alpha.size() != gamma.size() || alpha.size() != spec.variables.size())
    throw AlgebraError("length mismatch");
  for (auto x : alpha)
    if (x < 0) throw AlgebraError("negative exponent");
  for (auto x : gamma)
    if (x < 0) throw AlgebraError("negative exponent");
  PairResult out{FramedSequence(spec.frame()), {}, {}, {}};
  auto indep = opts.independence;
  if (opts.auto_independence)
    for (auto& l : constant_coordinates(out.sequence.initial(), {alpha, gamma}))
      if (std::find(indep.begin(), indep.end(), l) == indep.end()) indep.push_back(l);
  if (opts.auto_independence || !opts.independence.empty())
    out.sequence.declare_independence(indep);
  auto [a, g] = run_pair_game(out.sequence, alpha, gamma, opts, &out.log);
  out.alpha = std::move(a);
  out.gamma = std::move(g);
  return out;
}

std::vector<std::size_t> minimal_generators(const std::vector<Exponent>& gens,
                                            std::size_t preferred) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    bool redundant = false;
    for (std::size_t k = 0; k < gens.size() && !redundant; ++k) {
      if (k == i || !divides(gens[k], gens[i])) continue;
      if (gens[k] != gens[i]) {
        redundant = true;
      } else if (i != preferred && (k == preferred || k < i)) {
        redundant = true;
      }
    }
    if (!redundant) out.push_back(i);
  }
  return out;
}

namespace {

struct IdealState {
  std::int64_t b = 0;
  TauValue pair_tau{0, 1};
  std::size_t first = 0, second = 0;
};

IdealState ideal_state(const std::vector<Exponent>& gens, std::size_t preferred) {
  const auto minimal = minimal_generators(gens, preferred);
  IdealState st;
  st.b = static_cast<std::int64_t>(minimal.size()) - 1;
  if (st.b <= 0) return st;
  bool have = false;
  for (std::size_t x = 0; x < minimal.size(); ++x)
    for (std::size_t y = x + 1; y < minimal.size(); ++y) {
      const auto t = tau(gens[minimal[x]], gens[minimal[y]]);
      if (!have || t < st.pair_tau) {
        st.pair_tau = t;
        st.first = minimal[x];
        st.second = minimal[y];
        have = true;
      }
    }
  return st;
}

bool state_less(const IdealState& a, const IdealState& b) {
  if (a.b != b.b) return a.b < b.b;
  return a.pair_tau < b.pair_tau;
}

}  // namespace

std::vector<std::int64_t> ideal_tau(const std::vector<Exponent>& generators) {
  const auto st = ideal_state(generators, 0);
  return {std::max<std::int64_t>(st.b, 0), st.pair_tau.s, st.pair_tau.t};
}

std::pair<std::size_t, std::vector<Exponent>> run_ideal_game(FramedSequence& seq,
                                                             std::vector<Exponent> gens,
                                                             const GameOptions& opts,
                                                             std::vector<IdealStepRecord>* log) {
  if (gens.empty()) throw AlgebraError("empty generator list");
  std::size_t survivor = 0;
  {
    const auto& w = seq.final_frame().weights();
    Value best = value_with(gens[0], w);
    for (std::size_t i = 1; i < gens.size(); ++i) {
      Value v = value_with(gens[i], w);
      if (v < best) {
        best = std::move(v);
        survivor = i;
      }
    }
  }
  std::int64_t steps = 0;
  for (IdealState st = ideal_state(gens, survivor); st.b > 0;) {
    if (steps >= opts.budget) throw AlgebraError("step budget exceeded");
    const Frame& frame = seq.final_frame();
    const auto c = descent_center(gens[st.first], gens[st.second], frame);
    check_independence(frame, c, opts);
    auto step = build_constructed_blowup(frame.nparams(), c.J, c.j, frame.weights(),
                                         transcendental_spec(frame.weights(), c));
    if (log) log->push_back({steps, st.b, st.pair_tau, st.first, st.second, c.J, c.j, gens});
    for (auto& g : gens) g = push_exponent(step, g);
    seq.push_back(std::move(step));
    ++steps;
    const IdealState next = ideal_state(gens, survivor);
    if (!state_less(next, st)) throw AlgebraError("tau did not decrease");
    st = next;
  }
  for (const auto& g : gens)
    if (!divides(gens[survivor], g)) throw AlgebraError("survivor does not divide a generator");
  return {survivor, std::move(gens)};
}

PrincipalizeResult principalize_monomial_ideal(const std::vector<Exponent>& generators,
                                               const MonomialValuationSpec& spec,
                                               const GameOptions& opts) {
  if (generators.empty()) throw AlgebraError("empty generator list");
  for (const auto& g : generators) {
    if (g.size() != spec.variables.size()) throw AlgebraError("length mismatch");
    for (auto x : g)
      if (x < 0) throw AlgebraError("negative exponent");
  }
  if (minimal_generators(generators).size() != generators.size())
    throw AlgebraError("generator list not minimal");
  PrincipalizeResult out;
  out.sequence = FramedSequence(spec.frame());
  auto indep = opts.independence;
  if (opts.auto_independence)
    for (auto& l : constant_coordinates(out.sequence.initial(), generators))
      if (std::find(indep.begin(), indep.end(), l) == indep.end()) indep.push_back(l);
  if (opts.auto_independence || !opts.independence.empty())
    out.sequence.declare_independence(indep);
  auto [s, images] = run_ideal_game(out.sequence, generators, opts, &out.log);
  out.survivor = s;
  out.images = std::move(images);
  return out;
}

namespace {

MultiPoly over_spec(const MultiPoly& f, const MonomialValuationSpec& spec) {
  if (f.vars() == spec.variables) return f;
  return f.with_vars(spec.variables);
}

}  // namespace

Value monomial_valuation(const MultiPoly& f_in, const MonomialValuationSpec& spec) {
  const auto f = over_spec(f_in, spec);
  if (f.is_zero()) throw AlgebraError("zero polynomial has no value");
  std::optional<Value> best;
  for (const auto& [e, c] : f.terms()) {
    Value v = value_of_exponent(e, spec.weights, spec.weights.at(0).group());
    if (!best || v < *best) best = std::move(v);
  }
  return *best;
}

MultiPoly initial_form(const MultiPoly& f_in, const MonomialValuationSpec& spec) {
  const auto f = over_spec(f_in, spec);
  const Value v = monomial_valuation(f, spec);
  MultiPoly out(f.vars());
  for (const auto& [e, c] : f.terms())
    if (compare(value_of_exponent(e, spec.weights, spec.weights.at(0).group()), v) == Cmp::Equal)
      out.add_term(e, c);
  return out;
}

NondegenerateResult monomialize_nondegenerate(const MultiPoly& f_in,
                                              const MonomialValuationSpec& spec,
                                              const GameOptions& opts) {
  const auto f = over_spec(f_in, spec);
  if (f.is_zero()) throw AlgebraError("zero polynomial has no value");
  std::vector<Exponent> all;
  for (const auto& [e, c] : f.terms()) all.push_back(e);
  std::vector<Exponent> gens;
  for (auto i : minimal_generators(all)) gens.push_back(all[i]);

  NondegenerateResult out;
  out.sequence = FramedSequence(spec.frame());
  auto indep = opts.independence;
  if (opts.auto_independence)
    for (auto& l : constant_coordinates(out.sequence.initial(), gens))
      if (std::find(indep.begin(), indep.end(), l) == indep.end()) indep.push_back(l);
  if (opts.auto_independence || !opts.independence.empty())
    out.sequence.declare_independence(indep);
  auto [s, images] = run_ideal_game(out.sequence, gens, opts, &out.log);
  out.survivor = s;

  out.image = out.sequence.push(f);
  const Frame& fin = out.sequence.final_frame();
  const auto fac = monomial_factorization(fin, out.image);
  if (!fac) throw AlgebraError("unit witness check failed");
  if (fac->exponent != images[s]) throw AlgebraError("unit witness check failed");
  out.exponent = fac->exponent;
  out.unit_exponent = fac->unit_exponent;
  out.unit = fac->unit;
  return out;
}

}  // namespace valmono
