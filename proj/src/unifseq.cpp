#include "valmono/unifseq.hpp"

#include <algorithm>

namespace valmono {

namespace {

std::int64_t to_i64(const Integer& z) {
  if (!z.fits_slong_p()) throw AlgebraError("exponent overflow");
  return z.get_si();
}

bool contains(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

Value exponent_value(const Frame& F, const Exponent& e, const GroupPtr& g) {
  Value acc = Value::zero(g);
  for (std::size_t i = 0; i < F.nparams(); ++i) {
    if (e[i] == 0) continue;
    if (!F.weights()[i]) throw AlgebraError("unknown weight for '" + F.params()[i] + "'");
    acc += F.weights()[i]->scaled(Rational(static_cast<long>(e[i])));
  }
  return acc;
}

Exponent scaled(const Exponent& e, std::int64_t k) {
  Exponent out(e.size());
  for (std::size_t i = 0; i < e.size(); ++i) out[i] = k * e[i];
  return out;
}

Exponent sum(const Exponent& a, const Exponent& b) {
  Exponent out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

struct GroundLattice {
  std::size_t wi = 0;
  std::vector<std::size_t> gidx;
  std::int64_t abar = 1;
  std::vector<std::int64_t> alpha;
  Exponent numerator, denominator;
  GroupPtr group;
};

GroundLattice ground_lattice(const Frame& F, const std::string& wn,
                             const std::vector<std::string>& ground) {
  GroundLattice L;
  L.wi = F.param_index(wn);
  if (!F.weights()[L.wi]) throw AlgebraError("unknown weight for '" + wn + "'");
  const Value& bn = *F.weights()[L.wi];
  L.group = bn.group();
  std::vector<Value> gw;
  for (const auto& l : ground) {
    const auto i = F.param_index(l);
    if (i == L.wi) throw AlgebraError("distinguished variable listed as ground");
    if (!F.weights()[i]) throw AlgebraError("unknown weight for '" + l + "'");
    L.gidx.push_back(i);
    gw.push_back(*F.weights()[i]);
  }
  if (gw.empty()) throw AlgebraError("beta_n not in span");
  if (rational_rank(gw) != static_cast<int>(gw.size()))
    throw AlgebraError("ground weights must be rationally independent");
  LatticeMultiple lm;
  try {
    lm = min_integer_multiple_in_lattice(bn, gw);
  } catch (const AlgebraError&) {
    throw AlgebraError("beta_n not in span");
  }
  L.abar = lm.m_bar;
  L.numerator.assign(F.nparams(), 0);
  L.denominator.assign(F.nparams(), 0);
  L.numerator[L.wi] = L.abar;
  for (std::size_t k = 0; k < gw.size(); ++k) {
    const auto a = to_i64(lm.coeffs[k]);
    L.alpha.push_back(a);
    if (a > 0) L.denominator[L.gidx[k]] = a;
    if (a < 0) L.numerator[L.gidx[k]] = -a;
  }
  return L;
}

struct ElementaryForm {
  Exponent m0;
  Rational lead;
  std::vector<Rational> b;
  MultiPoly h;
};

// I = u^m0 * lead * (sum b_i y_+^{d-i} (w_n^abar y_-)^i + h), h of larger value.
ElementaryForm read_form(const Frame& F, const MultiPoly& I_in, const GroundLattice& L) {
  const MultiPoly I = F.normal_form(I_in);
  if (I.is_zero()) throw AlgebraError("zero polynomial has no value");
  const std::size_t n = F.nparams();
  std::vector<std::pair<Exponent, Rational>> terms(I.terms().begin(), I.terms().end());
  std::vector<Value> vals;
  for (const auto& [e, c] : terms) vals.push_back(exponent_value(F, e, L.group));
  Value v0 = vals.front();
  for (const auto& v : vals)
    if (v < v0) v0 = v;

  ElementaryForm out;
  out.m0.assign(n, 0);
  bool first = true;
  for (std::size_t t = 0; t < terms.size(); ++t) {
    if (compare(vals[t], v0) != Cmp::Equal) continue;
    for (std::size_t i = 0; i < n; ++i)
      out.m0[i] = first ? terms[t].first[i] : std::min(out.m0[i], terms[t].first[i]);
    first = false;
  }
  for (const auto& [e, c] : terms)
    for (std::size_t i = 0; i < n; ++i)
      if (e[i] < out.m0[i]) throw AlgebraError("requires completion");

  struct Piece {
    std::int64_t i;
    Exponent e;
    Rational c;
  };
  std::vector<Piece> pieces;
  std::int64_t d = 0;
  const auto amb = F.ambient();
  MultiPoly rest(amb);
  for (std::size_t t = 0; t < terms.size(); ++t) {
    Exponent e = terms[t].first;
    for (std::size_t i = 0; i < n; ++i) e[i] -= out.m0[i];
    if (compare(vals[t], v0) != Cmp::Equal) {
      rest.add_term(e, terms[t].second);
      continue;
    }
    for (std::size_t i = n; i < e.size(); ++i)
      if (e[i] != 0) throw AlgebraError("requires completion");
    for (std::size_t i = 0; i < n; ++i)
      if (i != L.wi && e[i] != 0 &&
          std::find(L.gidx.begin(), L.gidx.end(), i) == L.gidx.end())
        throw AlgebraError("polynomial is not of elementary form");
    if (e[L.wi] % L.abar != 0) throw AlgebraError("d not integral");
    const std::int64_t i = e[L.wi] / L.abar;
    d = std::max(d, i);
    pieces.push_back({i, e, terms[t].second});
  }
  if (d == 0) throw AlgebraError("polynomial is not of elementary form");
  out.b.assign(static_cast<std::size_t>(d + 1), Rational(0));
  for (const auto& p : pieces) {
    const Exponent want = sum(scaled(L.denominator, d - p.i), scaled(L.numerator, p.i));
    for (std::size_t i = 0; i < n; ++i)
      if (p.e[i] != want[i]) throw AlgebraError("polynomial is not of elementary form");
    out.b[static_cast<std::size_t>(p.i)] = p.c;
  }
  if (sgn(out.b.front()) == 0) throw AlgebraError("polynomial is not of elementary form");
  out.lead = out.b.back();
  for (auto& x : out.b) x /= out.lead;
  out.h = rest.scaled(Rational(1) / out.lead);
  return out;
}

// Image of u^e under the monomial part of `step`, with e allowed to be
// negative on the parameters; none if the image is not a polynomial.
std::optional<Exponent> laurent_image(const FramedStep& step, const Frame& before,
                                      const Frame& after, const Exponent& e) {
  const std::size_t n = before.nparams();
  const std::size_t old_units = before.units().size();
  std::vector<std::size_t> dest(n, 0);
  for (std::size_t p = 0; p < step.D1.size(); ++p)
    if (step.D1[p]) dest[*step.D1[p]] = p;
  for (std::size_t k = 0; k < step.J_times.size(); ++k)
    dest[step.J_times[k]] = after.nparams() + old_units + k;
  const Exponent params(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(n));
  const Exponent img = matvec(step.forward.matrix, params);
  Exponent x(after.ambient().size(), 0);
  for (std::size_t i = 0; i < n; ++i) x[dest[i]] += img[i];
  for (std::size_t k = 0; k < old_units; ++k) x[after.nparams() + k] = e[n + k];
  for (auto v : x)
    if (v < 0) return std::nullopt;
  return x;
}

struct ElementaryInput {
  std::string wn;
  std::vector<std::string> ground;
  std::vector<std::string> passive;
  bool transcendental = false;
  std::vector<Rational> b;
  MultiPoly h;
  std::optional<Value> q_value;
  std::string t_label;
};

UniformizingResult run_elementary(FramedSequence seq, const ElementaryInput& in,
                                  const GameOptions& opts) {
  UniformizingResult r;
  r.first_step = seq.steps().size();
  const Frame start = seq.final_frame();
  const GroundLattice L = ground_lattice(start, in.wn, in.ground);
  r.alpha_bar = L.abar;
  r.alpha = L.alpha;
  r.wn = in.wn;
  r.ground = in.ground;
  r.passive = in.passive;
  r.numerator = L.numerator;
  r.denominator = L.denominator;
  r.transcendental = in.transcendental;

  const auto amb = start.ambient();
  MultiPoly h = in.h.is_zero() ? MultiPoly(amb) : start.lift(in.h);
  r.q = MultiPoly(amb);
  if (!in.transcendental) {
    if (in.b.size() < 2 || in.b.back() != 1 || sgn(in.b.front()) == 0)
      throw AlgebraError("residue polynomial must be monic with nonzero constant term");
    r.d = static_cast<std::int64_t>(in.b.size()) - 1;
    r.residue_poly = in.b;
    for (std::int64_t i = 0; i <= r.d; ++i)
      r.q += start.param_monomial(sum(scaled(L.denominator, r.d - i), scaled(L.numerator, i)),
                                  in.b[static_cast<std::size_t>(i)]);
  } else if (!h.is_zero()) {
    throw AlgebraError("perturbation needs a residue polynomial");
  }
  const Value y_value = exponent_value(start, L.denominator, L.group);
  if (!h.is_zero()) {
    const Value floor = y_value.scaled(Rational(static_cast<long>(r.d)));
    for (const auto& [e, c] : h.terms())
      if (!(floor < exponent_value(start, e, L.group)))
        throw AlgebraError("perturbation too large");
    r.q += h;
  }

  Exponent a = L.numerator, bb = L.denominator;
  for (std::int64_t steps = 0;; ++steps) {
    if (steps >= opts.budget) throw AlgebraError("step budget exceeded");
    const Frame fr = seq.final_frame();
    const auto c = descent_center(a, bb, fr);
    for (auto q : c.J)
      if (contains(in.passive, fr.params()[q])) throw AlgebraError("independence violated");
    const auto& w = fr.weights();
    std::vector<std::size_t> zeros;
    for (auto q : c.J)
      if (q != c.j && compare(*w[q], *w[c.j]) == Cmp::Equal) zeros.push_back(q);
    const TauValue t0 = tau(a, bb);
    r.log.push_back({steps, t0, c.J, c.j, a, bb});
    if (zeros.empty()) {
      auto step = build_constructed_blowup(fr.nparams(), c.J, c.j, w, {});
      a = push_exponent(step, a);
      bb = push_exponent(step, bb);
      seq.push_back(std::move(step));
      if (!(tau(a, bb) < t0)) throw AlgebraError("tau did not decrease");
      continue;
    }

    if (zeros.size() != 1) throw AlgebraError("unexpected residue structure");
    const std::size_t q = zeros.front();
    auto is_ratio = [&](std::size_t up, std::size_t down) {
      for (std::size_t k = 0; k < a.size(); ++k)
        if (a[k] - bb[k] != (k == up ? 1 : 0) - (k == down ? 1 : 0)) return false;
      return true;
    };
    std::size_t vertex = c.j, unit_var = q;
    if (!is_ratio(q, c.j)) {
      if (!is_ratio(c.j, q)) throw AlgebraError("unexpected residue structure");
      vertex = q;
      unit_var = c.j;
    }
    ResidueGenerator gen;
    if (!in.transcendental) {
      gen.transcendental = false;
      for (const auto& bi : in.b) gen.coeffs.push_back(MultiPoly::constant({}, bi));
      gen.param_label = in.t_label;
      if (in.q_value) {
        Value tw = *in.q_value - y_value.scaled(Rational(static_cast<long>(r.d)));
        if (sign(tw) != Cmp::Greater) throw AlgebraError("new parameter has nonpositive value");
        gen.weight = std::move(tw);
      }
    }
    auto step = build_constructed_blowup(fr.nparams(), c.J, vertex, w, {gen});
    r.z_label = fr.params()[unit_var];
    if (!in.transcendental) r.t_label = in.t_label;
    if (!h.is_zero()) {
      const Frame after = fr.apply(step);
      const MultiPoly h_fr = seq.push_from(r.first_step, h);
      const Exponent yd = scaled(bb, r.d);
      MultiPoly g(after.ambient());
      for (const auto& [e, coef] : h_fr.terms()) {
        Exponent e2 = e;
        for (std::size_t k = 0; k < fr.nparams(); ++k) e2[k] -= yd[k];
        const auto img = laurent_image(step, fr, after, e2);
        if (!img) throw AlgebraError("requires completion");
        g.add_term(*img, coef);
      }
      step.translations.at(0).perturbation = g;
      r.perturbation = g;
    }
    try {
      seq.push_back(std::move(step));
    } catch (const AlgebraError&) {
      if (r.perturbation.is_zero()) throw;
      throw AlgebraError("requires completion");
    }
    break;
  }

  r.sequence = std::move(seq);
  const auto& S = r.sequence;
  const Frame& fin = S.final_frame();
  if (!in.transcendental) r.q_image = S.push_from(r.first_step, r.q);
  r.y_image = S.push_from(r.first_step, start.param_monomial(L.denominator));
  std::vector<std::string> labels = in.ground;
  labels.push_back(in.wn);
  for (const auto& l : labels) {
    Exponent e(start.nparams(), 0);
    e[start.param_index(l)] = 1;
    if (auto f = monomial_factorization(fin, S.push_from(r.first_step, start.param_monomial(e))))
      r.variable_images.emplace_back(l, std::move(*f));
  }
  IntMatrix Lm = identity_matrix(start.nparams());
  for (std::size_t s = r.first_step; s < S.steps().size(); ++s)
    Lm = matmul(Lm, S.steps()[s].inverse.matrix);
  const auto& last = S.steps().back();
  for (std::size_t p = 0; p < last.D1.size(); ++p) {
    if (!last.D1[p]) continue;
    std::vector<std::int64_t> col;
    for (const auto& row : Lm) col.push_back(row[*last.D1[p]]);
    r.parameter_monomials.emplace_back(fin.params()[p], std::move(col));
  }

  const auto failures = check_uniformizing_result(r);
  if (!failures.empty()) throw AlgebraError("conclusion check failed: " + failures.front());
  return r;
}

std::string fresh_label(const std::string& base, const std::vector<std::string>& taken) {
  std::string l = base;
  while (contains(taken, l)) l += "'";
  return l;
}

}  // namespace

Frame UniformizingProblem::frame() const {
  if (ground.size() != ground_weights.size() || passive.size() != passive_weights.size())
    throw AlgebraError("length mismatch");
  std::vector<std::string> params = ground;
  params.insert(params.end(), passive.begin(), passive.end());
  params.push_back(wn);
  std::vector<std::optional<Value>> w(ground_weights.begin(), ground_weights.end());
  w.insert(w.end(), passive_weights.begin(), passive_weights.end());
  w.emplace_back(beta_n);
  return Frame(params, w);
}

UniformizingProblem problem_from_polynomial(const MultiPoly& Q, std::vector<std::string> ground,
                                            std::vector<Value> ground_weights,
                                            std::vector<std::string> passive,
                                            std::vector<std::optional<Value>> passive_weights,
                                            std::string wn, Value beta_n,
                                            std::optional<Value> q_value) {
  UniformizingProblem p;
  p.ground = std::move(ground);
  p.ground_weights = std::move(ground_weights);
  p.passive = std::move(passive);
  p.passive_weights = std::move(passive_weights);
  p.wn = std::move(wn);
  p.beta_n = std::move(beta_n);
  p.q_value = std::move(q_value);
  const Frame F = p.frame();
  const auto L = ground_lattice(F, p.wn, p.ground);
  const MultiPoly lifted = F.lift(Q);
  if (lifted.degree_in(L.wi) % L.abar != 0) throw AlgebraError("d not integral");
  ElementaryForm form;
  try {
    form = read_form(F, lifted, L);
  } catch (const AlgebraError& e) {
    if (std::string(e.what()) != "requires completion") throw;
    throw AlgebraError("polynomial is not of elementary form");
  }
  for (auto x : form.m0)
    if (x != 0) throw AlgebraError("polynomial is not of elementary form");
  if (form.lead != 1) throw AlgebraError("polynomial is not of elementary form");
  p.b = form.b;
  p.h = form.h;
  p.t_label = fresh_label("t", F.ambient());
  return p;
}

UniformizingResult elementary_uniformizing_sequence(const UniformizingProblem& problem,
                                                    const GameOptions& opts) {
  FramedSequence seq(problem.frame());
  std::vector<std::string> indep = problem.passive;
  for (const auto& l : opts.independence)
    if (!contains(indep, l)) indep.push_back(l);
  if (!indep.empty()) seq.declare_independence(indep);
  ElementaryInput in;
  in.wn = problem.wn;
  in.ground = problem.ground;
  in.passive = indep;
  in.transcendental = problem.transcendental;
  in.b = problem.b;
  in.h = problem.h;
  in.q_value = problem.q_value;
  in.t_label = problem.t_label;
  return run_elementary(std::move(seq), in, opts);
}

std::vector<std::string> check_uniformizing_result(const UniformizingResult& r) {
  std::vector<std::string> fails;
  const auto& S = r.sequence;
  const auto& steps = S.steps();
  if (steps.size() <= r.first_step) return {"monomial-prefix"};
  const Frame start = S.frame_before(r.first_step);
  const Frame& fin = S.final_frame();
  const auto fa = fin.ambient();
  auto fin_var = [&](const std::string& l) {
    const auto it = std::find(fa.begin(), fa.end(), l);
    if (it == fa.end()) throw AlgebraError("unknown variable '" + l + "'");
    return MultiPoly::variable(fa, static_cast<std::size_t>(it - fa.begin()), Rational(1));
  };
  auto push = [&](const Exponent& e) { return S.push_from(r.first_step, start.param_monomial(e)); };

  for (std::size_t s = r.first_step; s + 1 < steps.size(); ++s)
    if (steps[s].kind != StepKind::Monomial || !steps[s].J_times.empty()) {
      fails.push_back("monomial-prefix");
      break;
    }
  for (std::size_t s = r.first_step; s < steps.size(); ++s) {
    const Frame before = S.frame_before(s);
    for (auto q : steps[s].J)
      if (contains(r.passive, before.params()[q])) {
        fails.push_back("independence");
        s = steps.size() - 1;
        break;
      }
  }

  if (fin.nparams() != start.nparams() - (r.transcendental ? 1 : 0)) fails.push_back("dimension");

  {
    bool ok = r.variable_images.size() == r.ground.size() + 1;
    std::vector<std::string> labels = r.ground;
    labels.push_back(r.wn);
    for (const auto& l : labels) {
      Exponent e(start.nparams(), 0);
      e[start.param_index(l)] = 1;
      if (!monomial_factorization(fin, push(e))) ok = false;
    }
    if (!ok) fails.push_back("variable-images");
  }

  {
    bool ok = true;
    std::size_t covered = 0;
    for (const auto& [label, row] : r.parameter_monomials) {
      Exponent num(row.size(), 0), den(row.size(), 0);
      for (std::size_t k = 0; k < row.size(); ++k) (row[k] > 0 ? num : den)[k] = std::abs(row[k]);
      const MultiPoly lhs = push(num);
      const MultiPoly rhs = fin.normal_form(fin_var(label) * push(den));
      if (!(lhs == rhs)) ok = false;
      ++covered;
    }
    if (covered + (r.t_label ? 1 : 0) != fin.nparams()) ok = false;
    if (!ok) fails.push_back("laurent-parameters");
  }

  if (!r.transcendental) {
    if (!r.t_label) {
      fails.push_back("q-identity");
    } else {
      const MultiPoly lhs = S.push_from(r.first_step, r.q);
      const MultiPoly rhs = fin.normal_form(push(r.denominator).pow(r.d) * fin_var(*r.t_label));
      if (!(lhs == rhs) || !(lhs == r.q_image)) fails.push_back("q-identity");
    }
  } else {
    const MultiPoly lhs = push(r.numerator);
    const MultiPoly rhs = fin.normal_form(push(r.denominator) * fin_var(r.z_label));
    if (!(lhs == rhs)) fails.push_back("q-identity");
  }

  if (!r.transcendental) {
    bool ok = r.t_label.has_value();
    if (ok) {
      const auto zi = static_cast<std::size_t>(
          std::find(fa.begin(), fa.end(), r.z_label) - fa.begin());
      if (zi >= fa.size() || zi < fin.nparams()) {
        ok = false;
      } else {
        MultiPoly P(fa);
        for (std::size_t i = 0; i < r.residue_poly.size(); ++i) {
          Exponent e(fa.size(), 0);
          e[zi] = static_cast<std::int64_t>(i);
          P.add_term(e, r.residue_poly[i]);
        }
        if (!r.perturbation.is_zero()) P += r.perturbation.with_vars(fa);
        ok = fin.normal_form(P) == fin_var(*r.t_label);
      }
    }
    if (!ok) fails.push_back("residue");
  } else if (!contains(fin.units(), r.z_label) || contains(fin.relation_units(), r.z_label)) {
    fails.push_back("residue");
  }
  return fails;
}

KeyPolyMonomialization monomialize_key_polys(const KeyPolyChain& chain, const GameOptions& opts) {
  const auto diags = validate_chain(chain);
  if (!diags.empty()) throw AlgebraError("invalid chain: " + diags.front().code);
  KeyPolyMonomialization out;
  std::vector<std::optional<Value>> w(chain.ground_weights().begin(), chain.ground_weights().end());
  w.emplace_back(chain.entry(1).beta);
  FramedSequence seq(Frame(chain.vars(), w));
  out.key_params.push_back(chain.x());
  out.stage_starts.push_back(0);

  for (std::size_t q = 2; q <= chain.length(); ++q) {
    const Frame F = seq.final_frame();
    const std::string wn = out.key_params.back();
    std::vector<std::string> ground;
    for (const auto& l : F.params())
      if (l != wn) ground.push_back(l);
    const auto L = ground_lattice(F, wn, ground);
    const auto form = read_form(F, seq.push(chain.entry(q).Q), L);

    ElementaryInput in;
    in.wn = wn;
    in.ground = ground;
    in.b = form.b;
    in.h = form.h;
    in.q_value = chain.entry(q).beta - exponent_value(F, form.m0, L.group);
    std::vector<std::string> taken = F.ambient();
    taken.insert(taken.end(), chain.vars().begin(), chain.vars().end());
    taken.insert(taken.end(), out.key_params.begin(), out.key_params.end());
    in.t_label = fresh_label("t" + std::to_string(q), taken);

    out.stage_starts.push_back(seq.steps().size());
    auto r = run_elementary(std::move(seq), in, opts);
    seq = std::move(r.sequence);
    out.log.insert(out.log.end(), r.log.begin(), r.log.end());
    out.key_params.push_back(*r.t_label);
  }

  const Frame& fin = seq.final_frame();
  MultiPoly last_image;
  for (std::size_t q = 1; q <= chain.length(); ++q) {
    KeyPolyWitness wit;
    wit.entry = q;
    wit.image = seq.push(chain.entry(q).Q);
    auto f = monomial_factorization(fin, wit.image);
    if (!f) throw AlgebraError("key polynomial image is not monomial");
    wit.factorization = std::move(*f);
    last_image = wit.image;
    out.witnesses.push_back(std::move(wit));
  }
  out.last_order = fin.order_in_param(last_image, fin.param_index(out.key_params.back()));
  if (out.last_order != 1) throw AlgebraError("last key polynomial is not a regular parameter");
  out.sequence = std::move(seq);
  return out;
}

std::vector<StandardMonomial> standard_monomials(const MultiPoly& f, const KeyPolyChain& chain) {
  const std::size_t l = chain.length();
  if (l == 0) throw AlgebraError("empty chain");
  const auto top = standard_expansion(f, chain, l);
  const std::size_t xi = chain.x_index();
  std::vector<StandardMonomial> out;
  std::vector<std::int64_t> powers(l, 0);
  auto walk = [&](auto&& self, const StandardExpansion& e) -> void {
    for (std::size_t j = 0; j < e.coeffs.size(); ++j) {
      powers[e.level - 1] = static_cast<std::int64_t>(j);
      if (e.sub.empty()) {
        for (const auto& [ex, c] : e.coeffs[j].terms())
          out.push_back({c, Exponent(ex.begin(), ex.begin() + static_cast<std::ptrdiff_t>(xi)),
                         powers});
      } else {
        self(self, e.sub[j]);
      }
    }
    powers[e.level - 1] = 0;
  };
  walk(walk, top);
  return out;
}

PolynomialMonomialization monomialize_polynomial(const MultiPoly& f_in, const KeyPolyChain& chain,
                                                 const GameOptions& opts) {
  const MultiPoly f = chain.lift(f_in);
  if (f.is_zero()) throw AlgebraError("zero polynomial has no value");
  auto kp = monomialize_key_polys(chain, opts);
  PolynomialMonomialization out;
  out.key_steps = kp.sequence.steps().size();
  FramedSequence seq = std::move(kp.sequence);
  out.terms = standard_monomials(f, chain);

  const Frame F = seq.final_frame();
  std::vector<Exponent> ground_exps;
  for (std::size_t k = 0; k < chain.x_index(); ++k) {
    const auto img = seq.push(MultiPoly::variable(chain.vars(), k, Rational(1)));
    const auto fac = monomial_factorization(F, img);
    if (!fac) throw AlgebraError("requires completion");
    ground_exps.push_back(fac->exponent);
  }
  std::vector<Exponent> gens;
  for (const auto& t : out.terms) {
    Exponent e(F.nparams(), 0);
    for (std::size_t k = 0; k < t.ground.size(); ++k)
      e = sum(e, scaled(ground_exps[k], t.ground[k]));
    for (std::size_t q = 0; q < t.powers.size(); ++q)
      e = sum(e, scaled(kp.witnesses[q].factorization.exponent, t.powers[q]));
    gens.push_back(std::move(e));
  }
  auto [survivor, images] = run_ideal_game(seq, gens, opts, &out.log);
  out.survivor = survivor;
  out.image = seq.push(f);
  auto fac = monomial_factorization(seq.final_frame(), out.image);
  if (!fac) throw AlgebraError("requires completion");
  out.exponent = std::move(fac->exponent);
  out.unit_exponent = std::move(fac->unit_exponent);
  out.unit = std::move(fac->unit);
  out.sequence = std::move(seq);
  return out;
}

}  // namespace valmono
