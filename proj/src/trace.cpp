#include "valmono/trace.hpp"

#include <cstdio>
#include <functional>
#include <map>

#include "valmono/error.hpp"
#include "valmono/unifseq.hpp"

namespace valmono {

namespace {

const Json& F(const Json& j, const char* key) { return require_field(j, key); }

struct Payload {
  Json sequence = nullptr;
  Json steps = Json::array();
  Json result = Json::object();
};

GameOptions game_options(const Json& problem, const RunOptions& opts) {
  GameOptions g;
  g.budget = opts.budget;
  g.auto_independence = opts.auto_independence;
  if (problem.contains("independence")) g.independence = labels_from_json(problem["independence"]);
  return g;
}

std::string cmp_name(Cmp c) {
  switch (c) {
    case Cmp::Less: return "less";
    case Cmp::Equal: return "equal";
    default: return "greater";
  }
}

Json exponents_to_json(const std::vector<Exponent>& es) {
  Json out = Json::array();
  for (const auto& e : es) out.push_back(e);
  return out;
}

std::vector<Exponent> exponents_from_json(const Json& j) {
  if (!j.is_array()) throw SchemaError("generators must be an array");
  std::vector<Exponent> out;
  for (const auto& e : j) out.push_back(exponent_from_json(e));
  return out;
}

Json expansion_to_json(const StandardExpansion& e) {
  Json coeffs = Json::array();
  for (const auto& c : e.coeffs) coeffs.push_back(poly_to_json(c));
  Json sub = Json::array();
  for (const auto& s : e.sub) sub.push_back(expansion_to_json(s));
  return Json{{"level", e.level}, {"coeffs", coeffs}, {"sub", sub}};
}

MonomialValuationSpec read_spec(const Json& p) {
  const auto& sj = F(p, "spec");
  return spec_from_json(sj, problem_group(p, F(sj, "weights")));
}

KeyPolyChain read_chain(const Json& p) {
  const auto& cj = F(p, "chain");
  return chain_from_json(cj, problem_group(p, F(F(cj, "ground"), "weights")));
}

void run_pair(const Json& p, const GameOptions& go, Payload& out) {
  const auto spec = read_spec(p);
  const auto a = exponent_from_json(F(p, "alpha"));
  const auto c = exponent_from_json(F(p, "gamma"));
  const auto r = monomialize_pair(a, c, spec, go);
  out.sequence = sequence_to_json(r.sequence);
  for (const auto& rec : r.log) out.steps.push_back(pair_record_to_json(rec));
  const bool ad = divides(r.alpha, r.gamma);
  out.result = Json{{"alpha", r.alpha},
                    {"gamma", r.gamma},
                    {"divides", ad || divides(r.gamma, r.alpha)},
                    {"direction", ad ? "alpha" : "gamma"},
                    {"value_order", cmp_name(compare(value_of_exponent(a, spec.weights),
                                                     value_of_exponent(c, spec.weights)))}};
}

void run_principalize(const Json& p, const GameOptions& go, Payload& out) {
  const auto spec = read_spec(p);
  const auto r = principalize_monomial_ideal(exponents_from_json(F(p, "generators")), spec, go);
  out.sequence = sequence_to_json(r.sequence);
  for (const auto& rec : r.log) out.steps.push_back(ideal_record_to_json(rec));
  out.result = Json{{"survivor", r.survivor}, {"images", exponents_to_json(r.images)}};
}

void run_nondegenerate(const Json& p, const GameOptions& go, Payload& out) {
  const auto spec = read_spec(p);
  const auto r = monomialize_nondegenerate(poly_from_json(F(p, "f")), spec, go);
  out.sequence = sequence_to_json(r.sequence);
  for (const auto& rec : r.log) out.steps.push_back(ideal_record_to_json(rec));
  out.result = Json{{"survivor", r.survivor},
                    {"exponent", r.exponent},
                    {"unit_exponent", r.unit_exponent},
                    {"unit", poly_to_json(r.unit)},
                    {"image", poly_to_json(r.image)}};
}

void require_valid(const KeyPolyChain& chain) {
  const auto diag = validate_chain(chain);
  if (!diag.empty()) throw AlgebraError("invalid chain: " + diag.front().code);
}

void run_keypoly_expand(const Json& p, const GameOptions&, Payload& out) {
  const auto chain = read_chain(p);
  require_valid(chain);
  const auto f = chain.lift(poly_from_json(F(p, "f")));
  std::size_t level = chain.length();
  if (p.contains("level")) {
    const auto& l = p["level"];
    if (!l.is_number_unsigned()) throw SchemaError("level must be a positive integer");
    level = l.get<std::size_t>();
    if (level < 1 || level > chain.length()) throw SchemaError("level out of range");
  }
  Json values = Json::array(), deltas = Json::array(), eps = Json::array();
  for (std::size_t i = 1; i <= chain.length(); ++i) {
    values.push_back(value_to_json(truncated_valuation(f, chain, i)));
    deltas.push_back(delta_invariant(f, chain, i));
    const auto e = epsilon_invariant(f, chain, i);
    eps.push_back(e ? Json(*e) : Json(nullptr));
  }
  out.result = Json{{"level", level},
                    {"expansion", expansion_to_json(standard_expansion(f, chain, level))},
                    {"values", values},
                    {"delta", deltas},
                    {"epsilon", eps}};
}

void run_keypoly_monomialize(const Json& p, const GameOptions& go, Payload& out) {
  const auto chain = read_chain(p);
  const auto r = monomialize_key_polys(chain, go);
  out.sequence = sequence_to_json(r.sequence);
  for (const auto& rec : r.log) out.steps.push_back(pair_record_to_json(rec));
  Json wit = Json::array();
  for (const auto& w : r.witnesses)
    wit.push_back(Json{{"entry", w.entry},
                       {"image", poly_to_json(w.image)},
                       {"factorization", factorization_to_json(w.factorization)}});
  out.result = Json{{"key_params", r.key_params},
                    {"stage_starts", r.stage_starts},
                    {"witnesses", wit},
                    {"last_order", r.last_order}};
}

UniformizingProblem read_uniformizing(const Json& p) {
  const auto& ground = F(p, "ground");
  const auto g = problem_group(p, F(ground, "weights"));
  auto gv = labels_from_json(F(ground, "vars"));
  auto gw = values_from_json(F(ground, "weights"), g);
  if (gv.size() != gw.size()) throw SchemaError("ground vars and weights differ in length");
  std::vector<std::string> pv;
  std::vector<std::optional<Value>> pw;
  if (p.contains("passive")) {
    const auto& ps = p["passive"];
    pv = labels_from_json(F(ps, "vars"));
    for (const auto& w : F(ps, "weights"))
      pw.push_back(w.is_null() ? std::nullopt : std::optional<Value>(value_from_json(w, g)));
    if (pv.size() != pw.size()) throw SchemaError("passive vars and weights differ in length");
  }
  const auto& wn_json = F(p, "wn");
  if (!wn_json.is_string()) throw SchemaError("wn must be a string");
  const auto wn = wn_json.get<std::string>();
  const auto beta = value_from_json(F(p, "beta_n"), g);
  std::optional<Value> qv;
  if (p.contains("q_value") && !p["q_value"].is_null()) qv = value_from_json(p["q_value"], g);
  if (p.contains("Q"))
    return problem_from_polynomial(poly_from_json(p["Q"]), gv, gw, pv, pw, wn, beta, qv);
  UniformizingProblem u;
  u.ground = std::move(gv);
  u.ground_weights = std::move(gw);
  u.passive = std::move(pv);
  u.passive_weights = std::move(pw);
  u.wn = wn;
  u.beta_n = beta;
  u.q_value = qv;
  if (p.contains("transcendental")) {
    if (!p["transcendental"].is_boolean()) throw SchemaError("transcendental must be a boolean");
    u.transcendental = p["transcendental"].get<bool>();
  }
  if (!u.transcendental) {
    for (const auto& b : F(p, "b")) u.b.push_back(rational_from_json(b));
  }
  if (p.contains("h")) u.h = poly_from_json(p["h"]);
  if (p.contains("t_label")) {
    if (!p["t_label"].is_string()) throw SchemaError("t_label must be a string");
    u.t_label = p["t_label"].get<std::string>();
  }
  return u;
}

void run_uniformize(const Json& p, const GameOptions& go, Payload& out) {
  const auto r = elementary_uniformizing_sequence(read_uniformizing(p), go);
  out.sequence = sequence_to_json(r.sequence);
  for (const auto& rec : r.log) out.steps.push_back(pair_record_to_json(rec));
  Json residue = Json::array();
  for (const auto& b : r.residue_poly) residue.push_back(format_rational(b));
  Json images = Json::object();
  for (const auto& [name, f] : r.variable_images) images[name] = factorization_to_json(f);
  Json monos = Json::object();
  for (const auto& [name, e] : r.parameter_monomials) monos[name] = e;
  out.result = Json{{"first_step", r.first_step},
                    {"alpha_bar", r.alpha_bar},
                    {"alpha", r.alpha},
                    {"d", r.d},
                    {"numerator", r.numerator},
                    {"denominator", r.denominator},
                    {"transcendental", r.transcendental},
                    {"residue_poly", residue},
                    {"z", r.z_label},
                    {"t", r.t_label ? Json(*r.t_label) : Json(nullptr)},
                    {"q", poly_to_json(r.q)},
                    {"perturbation", poly_to_json(r.perturbation)},
                    {"q_image", poly_to_json(r.q_image)},
                    {"y_image", poly_to_json(r.y_image)},
                    {"variable_images", images},
                    {"parameter_monomials", monos},
                    {"failed_conclusions", check_uniformizing_result(r)}};
}

void run_polynomial(const Json& p, const GameOptions& go, Payload& out) {
  const auto chain = read_chain(p);
  const auto r = monomialize_polynomial(poly_from_json(F(p, "f")), chain, go);
  out.sequence = sequence_to_json(r.sequence);
  for (const auto& rec : r.log) out.steps.push_back(ideal_record_to_json(rec));
  Json terms = Json::array();
  for (const auto& t : r.terms)
    terms.push_back(Json{{"c", format_rational(t.coeff)}, {"ground", t.ground}, {"powers", t.powers}});
  out.result = Json{{"key_steps", r.key_steps},
                    {"terms", terms},
                    {"survivor", r.survivor},
                    {"exponent", r.exponent},
                    {"unit_exponent", r.unit_exponent},
                    {"unit", poly_to_json(r.unit)},
                    {"image", poly_to_json(r.image)}};
}

using Runner = std::function<void(const Json&, const GameOptions&, Payload&)>;

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> m{
      {"pair", run_pair},
      {"principalize", run_principalize},
      {"nondegenerate", run_nondegenerate},
      {"keypoly-expand", run_keypoly_expand},
      {"keypoly-monomialize", run_keypoly_monomialize},
      {"uniformize", run_uniformize},
      {"polynomial", run_polynomial}};
  return m;
}

Json verdict(int code, const std::string& error) {
  if (code == kExitOk) return Json{{"ok", true}};
  return Json{{"ok", false}, {"code", code}, {"error", error}};
}

// ---------------------------------------------------------------------------
// Verification.

struct Mismatch {
  std::size_t step;
  std::string detail;
};

[[noreturn]] void mismatch(std::size_t step, std::string detail) { throw Mismatch{step, std::move(detail)}; }

GroupPtr sequence_group(const Json& input, const Json& seq) {
  if (input.is_object() && input.contains("group")) return group_from_json(input["group"]);
  for (const auto& w : F(seq, "weights"))
    if (!w.is_null()) return problem_group(Json::object(), w);
  return nullptr;
}

FramedSequence replay_sequence(const Json& input, const Json& seq_json) {
  const auto group = sequence_group(input, seq_json);
  Json head = seq_json;
  head["steps"] = Json::array();
  FramedSequence seq = sequence_from_json(head, group);
  const auto& steps = F(seq_json, "steps");
  if (!steps.is_array()) mismatch(0, "steps is not an array");
  for (std::size_t k = 0; k < steps.size(); ++k) {
    FramedStep step;
    try {
      step = step_from_json(steps[k]);
      for (auto& t : step.translations)
        if (t.weight && group) t.weight = Value(group, t.weight->coords());
    } catch (const std::exception& e) {
      mismatch(k, e.what());
    }
    if (step.n_before != seq.final_frame().nparams()) mismatch(k, "parameter count");
    if (!step_is_unimodular(step)) mismatch(k, "step is not unimodular");
    try {
      seq.push_back(std::move(step));
    } catch (const std::exception& e) {
      mismatch(k, e.what());
    }
  }
  bool monomial = true;
  for (const auto& s : seq.steps()) monomial = monomial && s.J_times.empty() && s.translations.empty();
  if (monomial && determinant(compose_sequence(seq).matrix) != 1)
    mismatch(seq.steps().size(), "composed sequence is not unimodular");
  return seq;
}

void check_pair_log(const Json& steps, const FramedSequence& seq, std::size_t offset,
                    const Json& final_alpha, const Json& final_gamma) {
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const auto& rec = steps[k];
    const std::size_t s = offset + k;
    if (s >= seq.steps().size()) mismatch(s, "log longer than sequence");
    const auto a = exponent_from_json(F(rec, "alpha"));
    const auto g = exponent_from_json(F(rec, "gamma"));
    const auto t = tau(a, g);
    if (F(rec, "tau") != tau_to_json(t)) mismatch(s, "recorded tau");
    const auto& step = seq.steps()[s];
    if (indices_from_json(F(rec, "J")) != step.J || F(rec, "j") != Json(step.j)) mismatch(s, "center");
    const Json na = push_exponent(step, a), ng = push_exponent(step, g);
    const bool last = k + 1 == steps.size();
    const Json& ea = last ? final_alpha : steps[k + 1]["alpha"];
    const Json& eg = last ? final_gamma : steps[k + 1]["gamma"];
    if (na != ea || ng != eg) mismatch(s, "pushed exponents");
    if (!(tau(push_exponent(step, a), push_exponent(step, g)) < t)) mismatch(s, "tau did not decrease");
  }
}

void check_ideal_log(const Json& steps, const FramedSequence& seq, std::size_t offset,
                     const Json& final_images) {
  for (std::size_t k = 0; k < steps.size(); ++k) {
    const auto& rec = steps[k];
    const std::size_t s = offset + k;
    if (s >= seq.steps().size()) mismatch(s, "log longer than sequence");
    const auto gens = exponents_from_json(F(rec, "generators"));
    const auto& step = seq.steps()[s];
    if (indices_from_json(F(rec, "J")) != step.J || F(rec, "j") != Json(step.j)) mismatch(s, "center");
    Json pushed = Json::array();
    for (const auto& g : gens) pushed.push_back(push_exponent(step, g));
    const bool last = k + 1 == steps.size();
    if (pushed != (last ? final_images : steps[k + 1]["generators"])) mismatch(s, "pushed generators");
    const auto key = [](const Json& r) {
      return std::vector<std::int64_t>{r["b"].get<std::int64_t>(), r["tau"][0].get<std::int64_t>(),
                                       r["tau"][1].get<std::int64_t>()};
    };
    if (!last && !(key(steps[k + 1]) < key(rec))) mismatch(s + 1, "ideal tau did not decrease");
  }
}

void check_factorization(const Frame& frame, const Json& image_json, const Json& fac, std::size_t at) {
  const auto image = frame.normal_form(frame.lift(poly_from_json(image_json)));
  const auto e = exponent_from_json(F(fac, "exponent"));
  const auto ue = exponent_from_json(F(fac, "unit_exponent"));
  if (e.size() != frame.nparams() || ue.size() != frame.units().size()) mismatch(at, "factorization shape");
  Exponent full = e;
  full.insert(full.end(), ue.begin(), ue.end());
  for (auto x : full)
    if (x < 0) mismatch(at, "negative exponent in factorization");
  const auto unit = frame.normal_form(frame.lift(poly_from_json(F(fac, "unit"))));
  if (!frame.is_unit(unit)) mismatch(at, "unit witness is not a unit");
  const auto mono = MultiPoly::monomial(frame.ambient(), full, 1);
  if (frame.normal_form(mono * unit) != image) mismatch(at, "factorization does not reproduce the image");
}

void check_witnesses(const std::string& alg, const Json& result, const Json& steps,
                     const FramedSequence& seq) {
  const std::size_t n = seq.steps().size();
  const Frame& fin = seq.final_frame();
  if (alg == "pair") {
    check_pair_log(steps, seq, 0, F(result, "alpha"), F(result, "gamma"));
    const auto a = exponent_from_json(F(result, "alpha"));
    const auto g = exponent_from_json(F(result, "gamma"));
    const bool ad = divides(a, g);
    if (!(ad || divides(g, a)) || F(result, "divides") != Json(true)) mismatch(n, "final divisibility");
    if (F(result, "direction") != Json(ad ? "alpha" : "gamma")) mismatch(n, "divisibility direction");
  } else if (alg == "principalize" || alg == "nondegenerate" || alg == "polynomial") {
    const std::size_t offset = alg == "polynomial" ? F(result, "key_steps").get<std::size_t>() : 0;
    if (alg == "principalize") {
      check_ideal_log(steps, seq, offset, F(result, "images"));
      const auto images = exponents_from_json(F(result, "images"));
      const auto sv = F(result, "survivor").get<std::size_t>();
      if (sv >= images.size()) mismatch(n, "survivor index");
      for (const auto& g : images)
        if (!divides(images[sv], g)) mismatch(n, "survivor does not divide a generator");
    } else {
      check_factorization(fin, F(result, "image"), result, n);
    }
  } else if (alg == "keypoly-monomialize") {
    for (const auto& w : F(result, "witnesses")) check_factorization(fin, F(w, "image"), F(w, "factorization"), n);
    if (F(result, "last_order") != Json(1)) mismatch(n, "last key parameter order");
  } else if (alg == "uniformize") {
    if (!F(result, "failed_conclusions").empty()) mismatch(n, "failed conclusions");
  }
}

VerifyReport verify_impl(const Json& trace) {
  if (!trace.is_object() || !trace.contains("schema") || trace["schema"] != kSchemaVersion)
    mismatch(0, "schema version");
  const auto& input = F(trace, "input");
  const auto& header = F(trace, "header");
  if (F(header, "input_digest") != Json(input_digest(input))) mismatch(0, "input digest");
  RunOptions opts;
  const auto& o = F(trace, "options");
  opts.budget = F(o, "budget").get<std::int64_t>();
  opts.auto_independence = F(o, "auto_independence").get<bool>();

  const auto& seq_json = F(trace, "sequence");
  const auto& steps = F(trace, "steps");
  const auto& verdict_json = F(trace, "verdict");
  std::size_t nsteps = 0;
  if (!seq_json.is_null()) {
    const auto seq = replay_sequence(input, seq_json);
    nsteps = seq.steps().size();
    if (verdict_json == verdict(kExitOk, ""))
      check_witnesses(F(header, "algorithm").get<std::string>(), F(trace, "result"), steps, seq);
  }

  const Json fresh = run_problem(input, opts);
  if (fresh["header"]["algorithm"] != header["algorithm"]) mismatch(0, "algorithm");
  if (!fresh["sequence"].is_null() && !seq_json.is_null()) {
    const auto& a = fresh["sequence"]["steps"];
    const auto& b = seq_json["steps"];
    for (std::size_t k = 0; k < std::max(a.size(), b.size()); ++k)
      if (k >= a.size() || k >= b.size() || a[k] != b[k]) mismatch(k, "recomputed step differs");
    Json ha = fresh["sequence"], hb = seq_json;
    ha.erase("steps");
    hb.erase("steps");
    if (ha != hb) mismatch(0, "initial frame");
  } else if (fresh["sequence"] != seq_json) {
    mismatch(0, "sequence presence");
  }
  if (fresh["steps"] != steps) {
    std::size_t k = 0;
    while (k < steps.size() && k < fresh["steps"].size() && steps[k] == fresh["steps"][k]) ++k;
    mismatch(k, "recomputed log differs");
  }
  if (fresh["verdict"] != verdict_json) mismatch(nsteps, "verdict");
  if (fresh["result"] != F(trace, "result")) mismatch(nsteps, "result");
  return {};
}

}  // namespace

const std::vector<std::string>& algorithm_selectors() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : runners()) v.push_back(k);
    return v;
  }();
  return names;
}

std::string input_digest(const Json& input) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : input.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return std::string("fnv1a64:") + buf;
}

Json run_problem(const Json& problem, const RunOptions& opts) {
  std::string alg;
  if (problem.is_object() && problem.contains("algorithm") && problem["algorithm"].is_string())
    alg = problem["algorithm"].get<std::string>();
  Json trace{{"schema", kSchemaVersion},
             {"header", Json{{"tool", "valmono"},
                             {"version", kToolVersion},
                             {"command", "run"},
                             {"algorithm", alg},
                             {"input_digest", input_digest(problem)}}},
             {"options", Json{{"budget", opts.budget}, {"auto_independence", opts.auto_independence}}},
             {"input", problem}};
  Payload out;
  int code = kExitOk;
  std::string error;
  try {
    const auto it = runners().find(alg);
    if (it == runners().end()) throw SchemaError(alg.empty() ? "missing algorithm selector" : "unknown algorithm '" + alg + "'");
    it->second(problem, game_options(problem, opts), out);
  } catch (const SchemaError& e) {
    code = kExitSchema;
    error = e.what();
  } catch (const Json::exception& e) {
    code = kExitSchema;
    error = e.what();
  } catch (const std::exception& e) {
    code = kExitAlgorithm;
    error = e.what();
  }
  if (code != kExitOk) out = Payload{};
  trace["sequence"] = out.sequence;
  trace["steps"] = out.steps;
  trace["verdict"] = verdict(code, error);
  trace["result"] = out.result;
  return trace;
}

int trace_exit_code(const Json& trace) {
  const auto& v = trace.at("verdict");
  return v.at("ok").get<bool>() ? kExitOk : v.at("code").get<int>();
}

VerifyReport verify_trace(const Json& trace) {
  try {
    return verify_impl(trace);
  } catch (const Mismatch& m) {
    return {kExitMismatch, "trace mismatch at step " + std::to_string(m.step) + ": " + m.detail};
  } catch (const std::exception& e) {
    return {kExitMismatch, std::string("trace mismatch at step 0: ") + e.what()};
  }
}

}  // namespace valmono
