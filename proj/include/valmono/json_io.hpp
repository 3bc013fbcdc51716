#pragma once

// JSON encoding of the library's data. Rationals are "p/q" strings and no
// floating point appears anywhere. Decoders throw SchemaError on malformed
// input.

#include <string>
#include <vector>

#include "json.hpp"
#include "valmono/framing.hpp"
#include "valmono/game.hpp"
#include "valmono/keypoly.hpp"
#include "valmono/polyalg.hpp"
#include "valmono/values.hpp"

namespace valmono {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "valmono/1";

/// j[key]; throws SchemaError when j is not an object or lacks the key.
const Json& require_field(const Json& j, const char* key);

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json group_to_json(const ValueGroup& g);
GroupPtr group_from_json(const Json& j);

Json value_to_json(const Value& v);
/// Without a group, a sqrt-primes group of matching rank is used.
Value value_from_json(const Json& j, const GroupPtr& group);
std::vector<Value> values_from_json(const Json& j, const GroupPtr& group);

Json exponent_to_json(const Exponent& e);
Exponent exponent_from_json(const Json& j);
std::vector<std::size_t> indices_from_json(const Json& j);
Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);
std::vector<std::string> labels_from_json(const Json& j);

Json poly_to_json(const MultiPoly& p);
MultiPoly poly_from_json(const Json& j);

Json tower_to_json(const FieldTower& t);
std::shared_ptr<const FieldTower> tower_from_json(const Json& j);

Json spec_to_json(const MonomialValuationSpec& s);
MonomialValuationSpec spec_from_json(const Json& j, const GroupPtr& group);

Json step_to_json(const FramedStep& s);
FramedStep step_from_json(const Json& j);

/// {"params", "weights", "independence", "steps"}; decoding replays the steps.
Json sequence_to_json(const FramedSequence& seq);
FramedSequence sequence_from_json(const Json& j, const GroupPtr& group);

Json chain_to_json(const KeyPolyChain& c);
KeyPolyChain chain_from_json(const Json& j, const GroupPtr& group);

Json tau_to_json(const TauValue& t);
Json pair_record_to_json(const PairStepRecord& r);
Json ideal_record_to_json(const IdealStepRecord& r);
Json factorization_to_json(const MonomialFactorization& f);

/// The group named by a problem's optional "group" field, else inferred
/// from the first value found under `probe`.
GroupPtr problem_group(const Json& problem, const Json& probe);

}  // namespace valmono
