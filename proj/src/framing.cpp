#include "valmono/framing.hpp"

#include <algorithm>
#include <set>

namespace valmono {

std::string to_string(StepKind kind) {
  return kind == StepKind::Monomial ? "monomial" : "translation";
}

FramedStep make_monomial_blowup(std::size_t n, const std::vector<std::size_t>& J_in,
                                std::size_t j) {
  std::vector<std::size_t> J = J_in;
  std::sort(J.begin(), J.end());
  if (std::adjacent_find(J.begin(), J.end()) != J.end())
    throw AlgebraError("duplicate index in center");
  if (J.size() < 2) throw AlgebraError("center too small");
  if (J.back() >= n) throw AlgebraError("center index out of range");
  if (!std::binary_search(J.begin(), J.end(), j)) throw AlgebraError("vertex not in center");

  FramedStep s;
  s.n_before = s.n_after = n;
  s.J = J;
  s.j = j;
  s.kind = StepKind::Monomial;
  s.forward.matrix = identity_matrix(n);
  s.inverse.matrix = identity_matrix(n);
  for (auto q : J) {
    if (q == j) continue;
    s.forward.matrix[j][q] = 1;
    s.inverse.matrix[j][q] = -1;
  }
  for (std::size_t i = 0; i < n; ++i) s.D1.push_back(i);
  return s;
}

std::size_t choose_vertex(const std::vector<std::size_t>& J, const std::vector<Value>& weights) {
  if (J.empty()) throw AlgebraError("empty center");
  std::size_t best = J.front();
  for (auto i : J) {
    const auto c = compare(weights.at(i), weights.at(best));
    if (c == Cmp::Less || (c == Cmp::Equal && i < best)) best = i;
  }
  return best;
}

namespace {

std::vector<std::optional<Value>> pushforward_optional(
    const std::vector<std::optional<Value>>& weights, const std::vector<std::size_t>& J,
    std::size_t j) {
  auto out = weights;
  if (!weights.at(j)) throw AlgebraError("unknown weight in center");
  for (auto q : J) {
    if (q == j) continue;
    if (!weights.at(q)) throw AlgebraError("unknown weight in center");
    Value w = *weights[q] - *weights[j];
    if (sign(w) == Cmp::Less) throw AlgebraError("negative weight after blow-up");
    out[q] = std::move(w);
  }
  return out;
}

}  // namespace

std::vector<Value> pushforward_weights(const std::vector<Value>& weights, const FramedStep& step) {
  if (weights.size() != step.n_before) throw AlgebraError("length mismatch");
  std::vector<std::optional<Value>> opt(weights.begin(), weights.end());
  auto pushed = pushforward_optional(opt, step.J, step.j);
  std::vector<Value> out;
  for (auto& w : pushed) out.push_back(*w);
  return out;
}

FramedStep build_constructed_blowup(std::size_t n, const std::vector<std::size_t>& J,
                                    std::size_t j, const std::vector<Value>& weights,
                                    const std::vector<ResidueGenerator>& residue_spec) {
  std::vector<std::optional<Value>> opt(weights.begin(), weights.end());
  return build_constructed_blowup(n, J, j, opt, residue_spec);
}

FramedStep build_constructed_blowup(std::size_t n, const std::vector<std::size_t>& J,
                                    std::size_t j,
                                    const std::vector<std::optional<Value>>& weights,
                                    const std::vector<ResidueGenerator>& residue_spec) {
  if (weights.size() != n) throw AlgebraError("length mismatch");
  FramedStep s = make_monomial_blowup(n, J, j);
  const auto pushed = pushforward_optional(weights, s.J, s.j);
  for (auto q : s.J)
    if (q != s.j && pushed[q]->is_zero()) s.J_times.push_back(q);
  if (residue_spec.size() != s.J_times.size())
    throw AlgebraError("inconsistent residue_spec arity");
  if (s.J_times.empty()) return s;

  s.kind = StepKind::Translation;
  s.D1.clear();
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!std::binary_search(s.J_times.begin(), s.J_times.end(), i)) {
      s.D1.push_back(i);
      continue;
    }
    const auto& gen = residue_spec[k++];
    if (gen.transcendental) continue;
    if (gen.coeffs.size() < 2 || !gen.coeffs.back().is_constant() ||
        gen.coeffs.back().constant_term() != 1)
      throw AlgebraError("residue polynomial must be monic of degree >= 1");
    if (gen.param_label.empty()) throw AlgebraError("translation parameter needs a label");
    s.translations.push_back({i, s.D1.size(), gen.param_label, gen.coeffs, gen.weight, MultiPoly{}});
    s.D1.push_back(std::nullopt);
  }
  s.n_after = s.D1.size();
  return s;
}

// ---------------------------------------------------------------------------

Frame::Frame(std::vector<std::string> params, std::vector<std::optional<Value>> weights)
    : params_(std::move(params)), weights_(std::move(weights)) {
  if (params_.size() != weights_.size()) throw AlgebraError("length mismatch");
  std::set<std::string> seen(params_.begin(), params_.end());
  if (seen.size() != params_.size()) throw AlgebraError("duplicate variable label");
}

std::vector<std::string> Frame::ambient() const {
  auto v = params_;
  v.insert(v.end(), units_.begin(), units_.end());
  return v;
}

std::size_t Frame::param_index(const std::string& label) const {
  for (std::size_t i = 0; i < params_.size(); ++i)
    if (params_[i] == label) return i;
  throw AlgebraError("unknown parameter '" + label + "'");
}

std::vector<Value> Frame::known_weights() const {
  std::vector<Value> out;
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (!weights_[i]) throw AlgebraError("unknown weight for '" + params_[i] + "'");
    out.push_back(*weights_[i]);
  }
  return out;
}

MultiPoly Frame::lift(const MultiPoly& f) const {
  const auto amb = ambient();
  if (f.vars() == amb) return f;
  return f.with_vars(amb);
}

MultiPoly Frame::normal_form(const MultiPoly& f_in) const {
  MultiPoly f = lift(f_in);
  if (relations_.empty()) return f;
  const auto amb = ambient();
  std::vector<std::size_t> zvar;
  for (const auto& z : relation_units_)
    zvar.push_back(static_cast<std::size_t>(std::find(amb.begin(), amb.end(), z) - amb.begin()));
  for (int pass = 0; pass < 64; ++pass) {
    bool changed = false;
    for (std::size_t k = relations_.size(); k-- > 0;) {
      const auto& rel = relations_[k];
      if (f.degree_in(zvar[k]) >= rel.degree_in(zvar[k])) {
        f = euclid_divide(f, rel, zvar[k]).remainder;
        changed = true;
      }
    }
    if (!changed) return f;
  }
  throw AlgebraError("normal form did not stabilize");
}

bool Frame::is_unit(const MultiPoly& f) const {
  const auto nf = normal_form(f);
  for (const auto& [e, c] : nf.terms()) {
    bool param_free = true;
    for (std::size_t i = 0; i < params_.size(); ++i)
      if (e[i] != 0) param_free = false;
    if (param_free) return true;
  }
  return false;
}

std::optional<MultiPoly> Frame::divide_by_monomial(const MultiPoly& f, const Exponent& e) const {
  if (e.size() != params_.size()) throw AlgebraError("length mismatch");
  const auto nf = normal_form(f);
  Exponent shift(nf.nvars(), 0);
  for (std::size_t i = 0; i < e.size(); ++i) shift[i] = -e[i];
  for (const auto& [x, c] : nf.terms())
    for (std::size_t i = 0; i < e.size(); ++i)
      if (x[i] < e[i]) return std::nullopt;
  return nf.shifted(shift);
}

std::int64_t Frame::order_in_param(const MultiPoly& f, std::size_t i) const {
  const auto nf = normal_form(f);
  if (nf.is_zero()) throw AlgebraError("zero polynomial has no order");
  std::int64_t k = -1;
  for (const auto& [e, c] : nf.terms()) k = (k < 0) ? e[i] : std::min(k, e[i]);
  return k;
}

MultiPoly Frame::param_monomial(const Exponent& e, const Rational& c) const {
  Exponent full(params_.size() + units_.size(), 0);
  std::copy(e.begin(), e.end(), full.begin());
  return MultiPoly::monomial(ambient(), full, c);
}

void Frame::add_relation(std::string unit, MultiPoly relation) {
  relation = lift(relation);
  const auto idx = relation.var_index(unit);
  if (!is_monic_in(relation, idx)) throw AlgebraError("relation must be monic in its unit");
  relations_.push_back(std::move(relation));
  relation_units_.push_back(std::move(unit));
}

namespace {

// Monomial part of a step: exponents over (old params ++ old units) are sent
// to (new params ++ new units); no normal form is taken.
MultiPoly raw_image(const Frame& before, const Frame& after, const FramedStep& step,
                    const MultiPoly& f_ambient) {
  const std::size_t n = before.nparams();
  const std::size_t old_units = before.units().size();
  std::vector<std::size_t> dest(n, 0);
  for (std::size_t p = 0; p < step.D1.size(); ++p)
    if (step.D1[p]) dest[*step.D1[p]] = p;
  for (std::size_t k = 0; k < step.J_times.size(); ++k)
    dest[step.J_times[k]] = after.nparams() + old_units + k;

  MultiPoly out(after.ambient());
  Exponent params(n);
  for (const auto& [e, c] : f_ambient.terms()) {
    std::copy(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(n), params.begin());
    const Exponent img = matvec(step.forward.matrix, params);
    Exponent x(out.nvars(), 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (img[i] < 0) throw AlgebraError("Laurent escape");
      x[dest[i]] += img[i];
    }
    for (std::size_t k = 0; k < old_units; ++k) x[after.nparams() + k] = e[n + k];
    out.add_term(x, c);
  }
  return out;
}

}  // namespace

Frame Frame::apply(const FramedStep& step) const {
  if (step.n_before != params_.size()) throw AlgebraError("step arity mismatch");
  std::vector<std::optional<Value>> pushed = weights_;
  if (!step.J.empty()) pushed = pushforward_optional(weights_, step.J, step.j);

  Frame out;
  for (std::size_t p = 0; p < step.D1.size(); ++p) {
    if (step.D1[p]) {
      out.params_.push_back(params_[*step.D1[p]]);
      out.weights_.push_back(pushed[*step.D1[p]]);
      continue;
    }
    const auto it = std::find_if(step.translations.begin(), step.translations.end(),
                                 [&](const Translation& t) { return t.position == p; });
    if (it == step.translations.end()) throw AlgebraError("step has an unfilled slot");
    out.params_.push_back(it->param_label);
    out.weights_.push_back(it->weight);
  }
  out.units_ = units_;
  for (auto q : step.J_times) out.units_.push_back(params_[q]);
  {
    const auto amb = out.ambient();
    std::set<std::string> seen(amb.begin(), amb.end());
    if (seen.size() != amb.size()) throw AlgebraError("duplicate variable label");
  }

  out.relation_units_ = relation_units_;
  for (const auto& rel : relations_) out.relations_.push_back(raw_image(*this, out, step, rel));
  for (const auto& t : step.translations) {
    const std::string& z = params_[t.source];
    const auto amb = out.ambient();
    MultiPoly rel = -MultiPoly::variable(amb, t.position, Rational(1));
    const auto zi = rel.var_index(z);
    for (std::size_t i = 0; i < t.coeffs.size(); ++i) {
      MultiPoly b = t.coeffs[i].with_vars(amb);
      for (std::size_t k = 0; k < out.nparams(); ++k)
        if (b.degree_in(k) > 0) throw AlgebraError("residue coefficient involves a parameter");
      Exponent shift(amb.size(), 0);
      shift[zi] = static_cast<std::int64_t>(i);
      rel += b.shifted(shift);
    }
    if (!t.perturbation.is_zero()) {
      const MultiPoly g = t.perturbation.with_vars(amb);
      if (g.degree_in(t.position) > 0) throw AlgebraError("perturbation involves the new parameter");
      if (g.degree_in(zi) >= static_cast<std::int64_t>(t.coeffs.size()) - 1)
        throw AlgebraError("perturbation breaks monicity");
      rel += g;
    }
    out.relations_.push_back(std::move(rel));
    out.relation_units_.push_back(z);
  }
  return out;
}

MultiPoly Frame::image(const FramedStep& step, const MultiPoly& f) const {
  return image(step, f, apply(step));
}

MultiPoly Frame::image(const FramedStep& step, const MultiPoly& f, const Frame& after) const {
  return after.normal_form(raw_image(*this, after, step, lift(f)));
}

std::optional<MonomialFactorization> monomial_factorization(const Frame& frame,
                                                            const MultiPoly& f) {
  const auto nf = frame.normal_form(f);
  if (nf.is_zero()) return std::nullopt;
  const std::size_t n = frame.nparams();
  Exponent low;
  for (const auto& [e, c] : nf.terms()) {
    if (low.empty()) {
      low = e;
      continue;
    }
    for (std::size_t i = 0; i < e.size(); ++i) low[i] = std::min(low[i], e[i]);
  }
  Exponent shift(low.size());
  for (std::size_t i = 0; i < low.size(); ++i) shift[i] = -low[i];
  MonomialFactorization out;
  out.exponent.assign(low.begin(), low.begin() + static_cast<std::ptrdiff_t>(n));
  out.unit_exponent.assign(low.begin() + static_cast<std::ptrdiff_t>(n), low.end());
  out.unit = nf.shifted(shift);
  if (!frame.is_unit(out.unit)) return std::nullopt;
  return out;
}

// ---------------------------------------------------------------------------

void FramedSequence::declare_independence(std::vector<std::string> labels) {
  for (std::size_t s = 0; s < steps_.size(); ++s) {
    const Frame before = frame_before(s);
    for (auto q : steps_[s].J)
      if (std::find(labels.begin(), labels.end(), before.params()[q]) != labels.end())
        throw AlgebraError("independence violated");
  }
  independence_ = std::move(labels);
  has_independence_ = true;
}

const Frame& FramedSequence::push_back(FramedStep step) {
  const Frame& before = final_frame();
  if (step.n_before != before.nparams()) throw AlgebraError("step arity mismatch");
  if (has_independence_)
    for (auto q : step.J)
      if (std::find(independence_.begin(), independence_.end(), before.params()[q]) !=
          independence_.end())
        throw AlgebraError("independence violated");
  Frame after = before.apply(step);
  steps_.push_back(std::move(step));
  frames_.push_back(std::move(after));
  return frames_.back();
}

void FramedSequence::append(const FramedSequence& tail) {
  if (tail.initial().params() != final_frame().params())
    throw AlgebraError("sequence frames do not match");
  for (const auto& s : tail.steps()) push_back(s);
}

MultiPoly FramedSequence::push(const MultiPoly& f) const { return push_from(0, f); }

MultiPoly FramedSequence::push_from(std::size_t first_step, const MultiPoly& f) const {
  Frame cur = frame_before(first_step);
  MultiPoly g = cur.normal_form(f);
  for (std::size_t s = first_step; s < steps_.size(); ++s) {
    g = cur.image(steps_[s], g, frames_[s]);
    cur = frames_[s];
  }
  return g;
}

LaurentMonomialMap compose_sequence(const FramedSequence& seq) {
  LaurentMonomialMap out;
  out.matrix = identity_matrix(seq.initial().nparams());
  for (const auto& s : seq.steps()) {
    if (!s.J_times.empty() || !s.translations.empty() || s.kind != StepKind::Monomial)
      throw AlgebraError("not purely monomial");
    out.matrix = matmul(s.forward.matrix, out.matrix);
  }
  out.target_vars = seq.final_frame().params();
  return out;
}

bool step_is_unimodular(const FramedStep& step) {
  if (determinant(step.forward.matrix) != 1) return false;
  return matmul(step.forward.matrix, step.inverse.matrix) == identity_matrix(step.n_before);
}

}  // namespace valmono
