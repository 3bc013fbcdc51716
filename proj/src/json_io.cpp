#include "valmono/json_io.hpp"

#include "valmono/error.hpp"

namespace valmono {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw SchemaError(std::string("expected an object holding '") + key + "'");
  auto it = j.find(key);
  if (it == j.end()) throw SchemaError(std::string("missing field '") + key + "'");
  return *it;
}

const Json& array(const Json& j, const char* what) {
  if (!j.is_array()) throw SchemaError(std::string(what) + " must be an array");
  return j;
}

std::int64_t integer(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw SchemaError(std::string(what) + " must be an integer");
  return j.get<std::int64_t>();
}

std::size_t index(const Json& j, const char* what) {
  const auto v = integer(j, what);
  if (v < 0) throw SchemaError(std::string(what) + " must be nonnegative");
  return static_cast<std::size_t>(v);
}

std::string string(const Json& j, const char* what) {
  if (!j.is_string()) throw SchemaError(std::string(what) + " must be a string");
  return j.get<std::string>();
}

Json optional_value(const std::optional<Value>& v) { return v ? value_to_json(*v) : Json(nullptr); }

std::optional<Value> optional_value_from(const Json& j, const GroupPtr& g) {
  if (j.is_null()) return std::nullopt;
  return value_from_json(j, g);
}

}  // namespace

const Json& require_field(const Json& j, const char* key) { return field(j, key); }

Json rational_to_json(const Rational& q) { return format_rational(q); }

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.dump());
  if (!j.is_string()) throw SchemaError("rational must be a \"p/q\" string");
  return parse_rational(j.get<std::string>());
}

Json group_to_json(const ValueGroup& g) {
  return Json{{"rank", g.rank()},
              {"ordering", g.ordering() == GroupOrdering::Lex ? "lex" : "sqrt-primes"},
              {"labels", g.labels()}};
}

GroupPtr group_from_json(const Json& j) {
  const auto rank = integer(field(j, "rank"), "rank");
  if (rank < 1) throw SchemaError("rank must be positive");
  const auto ord = string(field(j, "ordering"), "ordering");
  GroupOrdering o;
  if (ord == "lex")
    o = GroupOrdering::Lex;
  else if (ord == "sqrt-primes")
    o = GroupOrdering::SqrtPrimes;
  else
    throw SchemaError("unknown ordering '" + ord + "'");
  if (!j.contains("labels")) return ValueGroup::make(static_cast<int>(rank), o);
  auto labels = labels_from_json(j["labels"]);
  if (labels.size() != static_cast<std::size_t>(rank)) throw SchemaError("labels do not match rank");
  return std::make_shared<const ValueGroup>(static_cast<int>(rank), o, std::move(labels));
}

Json value_to_json(const Value& v) {
  Json coords = Json::array();
  for (const auto& c : v.coords()) coords.push_back(format_rational(c));
  return Json{{"coords", coords}};
}

Value value_from_json(const Json& j, const GroupPtr& group) {
  const auto& coords = array(field(j, "coords"), "coords");
  std::vector<Rational> c;
  for (const auto& x : coords) c.push_back(rational_from_json(x));
  GroupPtr g = group;
  if (!g) {
    if (c.empty()) throw SchemaError("empty value");
    g = ValueGroup::make(static_cast<int>(c.size()));
  }
  if (c.size() != static_cast<std::size_t>(g->rank())) throw SchemaError("value rank mismatch");
  return Value(g, std::move(c));
}

std::vector<Value> values_from_json(const Json& j, const GroupPtr& group) {
  std::vector<Value> out;
  for (const auto& x : array(j, "weights")) out.push_back(value_from_json(x, group));
  return out;
}

Json exponent_to_json(const Exponent& e) { return Json(e); }

Exponent exponent_from_json(const Json& j) {
  Exponent e;
  for (const auto& x : array(j, "exponent")) e.push_back(integer(x, "exponent entry"));
  return e;
}

std::vector<std::size_t> indices_from_json(const Json& j) {
  std::vector<std::size_t> out;
  for (const auto& x : array(j, "index list")) out.push_back(index(x, "index"));
  return out;
}

Json matrix_to_json(const IntMatrix& m) { return Json(m); }

IntMatrix matrix_from_json(const Json& j) {
  IntMatrix m;
  for (const auto& row : array(j, "matrix")) m.push_back(exponent_from_json(row));
  for (const auto& row : m)
    if (row.size() != m.size()) throw SchemaError("matrix must be square");
  return m;
}

std::vector<std::string> labels_from_json(const Json& j) {
  std::vector<std::string> out;
  for (const auto& x : array(j, "labels")) out.push_back(string(x, "label"));
  return out;
}

Json poly_to_json(const MultiPoly& p) {
  Json terms = Json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back(Json{{"e", e}, {"c", format_rational(c)}});
  return Json{{"vars", p.vars()}, {"terms", terms}};
}

MultiPoly poly_from_json(const Json& j) {
  MultiPoly p(labels_from_json(field(j, "vars")));
  for (const auto& t : array(field(j, "terms"), "terms")) {
    const auto e = exponent_from_json(field(t, "e"));
    if (e.size() != p.nvars()) throw SchemaError("term exponent length mismatch");
    for (auto x : e)
      if (x < 0) throw SchemaError("negative exponent in polynomial");
    p.add_term(e, rational_from_json(field(t, "c")));
  }
  return p;
}

Json tower_to_json(const FieldTower& t) {
  Json ext = Json::array();
  for (const auto& e : t.extensions()) ext.push_back(Json{{"sym", e.symbol}, {"minpoly", poly_to_json(e.minpoly)}});
  return Json{{"extensions", ext}};
}

std::shared_ptr<const FieldTower> tower_from_json(const Json& j) {
  std::vector<FieldTower::Extension> ext;
  for (const auto& e : array(field(j, "extensions"), "extensions"))
    ext.push_back({string(field(e, "sym"), "sym"), poly_from_json(field(e, "minpoly"))});
  try {
    return FieldTower::make(std::move(ext));
  } catch (const AlgebraError& err) {
    throw SchemaError(err.what());
  }
}

Json spec_to_json(const MonomialValuationSpec& s) {
  Json w = Json::array();
  for (const auto& v : s.weights) w.push_back(value_to_json(v));
  return Json{{"vars", s.variables}, {"weights", w}};
}

MonomialValuationSpec spec_from_json(const Json& j, const GroupPtr& group) {
  MonomialValuationSpec s{labels_from_json(field(j, "vars")), values_from_json(field(j, "weights"), group)};
  if (s.variables.size() != s.weights.size()) throw SchemaError("vars and weights differ in length");
  return s;
}

Json step_to_json(const FramedStep& s) {
  Json d1 = Json::array();
  for (const auto& x : s.D1) d1.push_back(x ? Json(*x) : Json(nullptr));
  Json tr = Json::array();
  for (const auto& t : s.translations) {
    Json coeffs = Json::array();
    for (const auto& c : t.coeffs) coeffs.push_back(poly_to_json(c));
    tr.push_back(Json{{"source", t.source},
                      {"position", t.position},
                      {"param", t.param_label},
                      {"coeffs", coeffs},
                      {"weight", optional_value(t.weight)},
                      {"perturbation", poly_to_json(t.perturbation)}});
  }
  return Json{{"J", s.J},           {"j", s.j},
              {"kind", to_string(s.kind)},
              {"M", s.inverse.matrix}, {"N", s.forward.matrix},
              {"Jx", s.J_times},    {"n_before", s.n_before},
              {"n_after", s.n_after}, {"D1", d1},
              {"translations", tr}};
}

FramedStep step_from_json(const Json& j) {
  FramedStep s;
  s.J = indices_from_json(field(j, "J"));
  s.j = index(field(j, "j"), "j");
  const auto kind = string(field(j, "kind"), "kind");
  if (kind == to_string(StepKind::Monomial))
    s.kind = StepKind::Monomial;
  else if (kind == to_string(StepKind::Translation))
    s.kind = StepKind::Translation;
  else
    throw SchemaError("unknown step kind '" + kind + "'");
  s.inverse.matrix = matrix_from_json(field(j, "M"));
  s.forward.matrix = matrix_from_json(field(j, "N"));
  s.J_times = indices_from_json(field(j, "Jx"));
  s.n_before = index(field(j, "n_before"), "n_before");
  s.n_after = index(field(j, "n_after"), "n_after");
  for (const auto& x : array(field(j, "D1"), "D1"))
    s.D1.push_back(x.is_null() ? std::nullopt : std::optional<std::size_t>(index(x, "D1 entry")));
  for (const auto& t : array(field(j, "translations"), "translations")) {
    Translation tr;
    tr.source = index(field(t, "source"), "source");
    tr.position = index(field(t, "position"), "position");
    tr.param_label = string(field(t, "param"), "param");
    for (const auto& c : array(field(t, "coeffs"), "coeffs")) tr.coeffs.push_back(poly_from_json(c));
    const auto& w = field(t, "weight");
    if (!w.is_null()) tr.weight = value_from_json(w, nullptr);
    tr.perturbation = poly_from_json(field(t, "perturbation"));
    s.translations.push_back(std::move(tr));
  }
  if (s.forward.matrix.size() != s.n_before || s.inverse.matrix.size() != s.n_before)
    throw SchemaError("step matrix size mismatch");
  return s;
}

Json sequence_to_json(const FramedSequence& seq) {
  const auto& f = seq.initial();
  Json w = Json::array();
  for (const auto& x : f.weights()) w.push_back(optional_value(x));
  Json steps = Json::array();
  for (const auto& s : seq.steps()) steps.push_back(step_to_json(s));
  return Json{{"params", f.params()},
              {"weights", w},
              {"independence", seq.has_independence() ? Json(seq.independence()) : Json(nullptr)},
              {"steps", steps}};
}

FramedSequence sequence_from_json(const Json& j, const GroupPtr& group) {
  auto params = labels_from_json(field(j, "params"));
  std::vector<std::optional<Value>> weights;
  for (const auto& x : array(field(j, "weights"), "weights")) weights.push_back(optional_value_from(x, group));
  if (weights.size() != params.size()) throw SchemaError("params and weights differ in length");
  FramedSequence seq(Frame(std::move(params), std::move(weights)));
  const auto& ind = field(j, "independence");
  if (!ind.is_null()) seq.declare_independence(labels_from_json(ind));
  for (const auto& s : array(field(j, "steps"), "steps")) {
    auto step = step_from_json(s);
    // Weights inside translations share the sequence group.
    for (auto& t : step.translations)
      if (t.weight && group) t.weight = Value(group, t.weight->coords());
    seq.push_back(std::move(step));
  }
  return seq;
}

Json chain_to_json(const KeyPolyChain& c) {
  Json w = Json::array();
  for (const auto& v : c.ground_weights()) w.push_back(value_to_json(v));
  Json entries = Json::array();
  for (const auto& e : c.entries()) entries.push_back(Json{{"Q", poly_to_json(e.Q)}, {"beta", value_to_json(e.beta)}});
  return Json{{"ground", Json{{"vars", c.ground_vars()}, {"weights", w}}}, {"x", c.x()}, {"entries", entries}};
}

KeyPolyChain chain_from_json(const Json& j, const GroupPtr& group) {
  const auto& ground = field(j, "ground");
  auto vars = labels_from_json(field(ground, "vars"));
  auto weights = values_from_json(field(ground, "weights"), group);
  if (vars.size() != weights.size()) throw SchemaError("ground vars and weights differ in length");
  std::vector<ChainEntry> entries;
  for (const auto& e : array(field(j, "entries"), "entries"))
    entries.push_back({poly_from_json(field(e, "Q")), value_from_json(field(e, "beta"), group)});
  try {
    return KeyPolyChain(std::move(vars), std::move(weights), string(field(j, "x"), "x"), std::move(entries));
  } catch (const AlgebraError& err) {
    throw SchemaError(std::string("chain: ") + err.what());
  }
}

Json tau_to_json(const TauValue& t) { return Json::array({t.s, t.t}); }

Json pair_record_to_json(const PairStepRecord& r) {
  return Json{{"step", r.step}, {"tau", tau_to_json(r.tau)}, {"J", r.J},
              {"j", r.j},       {"alpha", r.alpha},          {"gamma", r.gamma}};
}

Json ideal_record_to_json(const IdealStepRecord& r) {
  return Json{{"step", r.step},   {"b", r.b},         {"tau", tau_to_json(r.pair_tau)},
              {"pair", Json::array({r.first, r.second})},
              {"J", r.J},         {"j", r.j},         {"generators", r.generators}};
}

Json factorization_to_json(const MonomialFactorization& f) {
  return Json{{"exponent", f.exponent}, {"unit_exponent", f.unit_exponent}, {"unit", poly_to_json(f.unit)}};
}

GroupPtr problem_group(const Json& problem, const Json& probe) {
  if (problem.is_object() && problem.contains("group")) return group_from_json(problem["group"]);
  if (probe.is_object() && probe.contains("coords")) {
    const auto& c = array(probe["coords"], "coords");
    if (c.empty()) throw SchemaError("empty value");
    return ValueGroup::make(static_cast<int>(c.size()));
  }
  if (probe.is_array() && !probe.empty()) return problem_group(Json::object(), probe.front());
  throw SchemaError("cannot infer the value group");
}

}  // namespace valmono
