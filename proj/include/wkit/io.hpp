#pragma once

#include <filesystem>

#include <json.hpp>

#include "wkit/extend.hpp"
#include "wkit/observable.hpp"
#include "wkit/witness.hpp"

// JSON interchange formats. Rationals travel as "p/q" strings (or bare
// integers), so nothing passes through floating point. Every *_from_json
// function reports schema problems as LoadError.
namespace wkit::io {

using nlohmann::json;

json load_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const json& doc);

/// {"kind": "zvec"|"qvec"|"cone"|"symmat", "dim": k, "generators": [[...], ...]}
GroupSpec group_spec_from_json(const json& j);
json to_json(const GroupSpec& spec);

/// zvec/cone: [ints]; qvec: ["p/q" | "n" | int, ...]; symmat: rows of those.
GroupValue group_value_from_json(const json& j, const GroupSpec& spec);
json to_json(const GroupValue& value);

/// {"group": GroupSpec, "unit": GroupValue}
AlgebraRef algebra_from_json(const json& j);
json to_json(const EffectAlgebra& algebra);

/// [{"label": "a", "value": GroupValue}, ...]
std::vector<GroundElement> ground_from_json(const json& j, const EffectAlgebra& algebra);
json ground_to_json(const std::vector<GroundElement>& ground);

/// {"algebra": ..., "ground": [...], "values": {"<sorted,labels>": GroupValue}}
/// with one entry for every subset of the ground set.
WitnessTable witness_from_json(const json& j);
json to_json(const WitnessTable& table);

/// {"target": GroupValue, "values": {subset-key: GroupValue}}, keys relative
/// to `table`'s ground labels.
ExtensionCandidate candidate_from_json(const json& j, const WitnessTable& table);
json candidate_to_json(const ExtensionCandidate& candidate, const WitnessTable& table);

/// {"algebra": ..., "atoms": [GroupValue, ...], "labels": {"a": [0, 1], ...}}
Observable observable_from_json(const json& j);
json to_json(const Observable& obs);

}  // namespace wkit::io
