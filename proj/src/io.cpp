#include "wkit/io.hpp"

#include <fstream>
#include <limits>

#include "wkit/error.hpp"

namespace wkit::io {

namespace {

// Runs `fn`, turning any schema or contract failure into a LoadError.
template <typename Fn>
auto loading(const char* what, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const LoadError&) {
    throw;
  } catch (const json::exception& e) {
    throw LoadError(std::string(what) + ": " + e.what());
  } catch (const Error& e) {
    throw LoadError(std::string(what) + ": " + e.what());
  }
}

const json& field(const json& j, const char* name) {
  if (!j.is_object()) throw LoadError(std::string("expected an object holding '") + name + "'");
  auto it = j.find(name);
  if (it == j.end()) throw LoadError(std::string("missing field '") + name + "'");
  return *it;
}

Rational rational_from_json(const json& j) {
  if (j.is_number_unsigned()) {
    const auto v = j.get<std::uint64_t>();
    if (v > static_cast<std::uint64_t>(std::numeric_limits<long>::max())) throw LoadError("integer out of range");
    return Rational(static_cast<long>(v));
  }
  if (j.is_number_integer()) return Rational(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw LoadError("expected an integer or a \"p/q\" string, got " + j.dump());
}

json rational_to_json(const Rational& r, bool integral) {
  if (integral && r.get_num().fits_slong_p()) return r.get_num().get_si();
  return format_rational(r);
}

std::vector<Rational> row_from_json(const json& j, std::size_t expected) {
  if (!j.is_array()) throw LoadError("expected an array, got " + j.dump());
  if (j.size() != expected)
    throw LoadError("expected " + std::to_string(expected) + " entries, got " + std::to_string(j.size()));
  std::vector<Rational> out;
  for (const auto& e : j) out.push_back(rational_from_json(e));
  return out;
}

}  // namespace

json load_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw LoadError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw LoadError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw LoadError("cannot write '" + path.string() + "'");
  out << doc.dump(2) << '\n';
  if (!out) throw LoadError("failed writing '" + path.string() + "'");
}

GroupSpec group_spec_from_json(const json& j) {
  return loading("group", [&] {
    const GroupKind kind = parse_group_kind(field(j, "kind").get<std::string>());
    const auto dim = field(j, "dim").get<std::int64_t>();
    if (dim < 1) throw LoadError("group dimension must be at least 1");
    const auto d = static_cast<std::size_t>(dim);
    switch (kind) {
      case GroupKind::zvec: return GroupSpec::zvec(d);
      case GroupKind::qvec: return GroupSpec::qvec(d);
      case GroupKind::symmat: return GroupSpec::symmat(d);
      case GroupKind::cone: break;
    }
    std::vector<IntVector> generators;
    for (const auto& g : field(j, "generators")) generators.push_back(g.get<IntVector>());
    return GroupSpec::cone(d, std::move(generators));
  });
}

json to_json(const GroupSpec& spec) {
  json j{{"kind", std::string(to_string(spec.kind()))}, {"dim", spec.dim()}};
  if (spec.kind() == GroupKind::cone) j["generators"] = spec.generators();
  return j;
}

GroupValue group_value_from_json(const json& j, const GroupSpec& spec) {
  return loading("group value", [&] {
    if (spec.kind() != GroupKind::symmat) return GroupValue(spec.kind(), spec.dim(), row_from_json(j, spec.dim()));
    if (!j.is_array() || j.size() != spec.dim())
      throw LoadError("expected " + std::to_string(spec.dim()) + " matrix rows, got " + j.dump());
    std::vector<Rational> entries;
    for (const auto& row : j) {
      auto r = row_from_json(row, spec.dim());
      entries.insert(entries.end(), r.begin(), r.end());
    }
    return GroupValue(GroupKind::symmat, spec.dim(), std::move(entries));
  });
}

json to_json(const GroupValue& value) {
  const bool integral = value.kind() == GroupKind::zvec || value.kind() == GroupKind::cone;
  const auto e = value.entries();
  json out = json::array();
  if (value.kind() != GroupKind::symmat) {
    for (const auto& r : e) out.push_back(rational_to_json(r, integral));
    return out;
  }
  for (std::size_t i = 0; i < value.dim(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < value.dim(); ++k) row.push_back(format_rational(e[i * value.dim() + k]));
    out.push_back(std::move(row));
  }
  return out;
}

AlgebraRef algebra_from_json(const json& j) {
  return loading("algebra", [&] {
    GroupSpec spec = group_spec_from_json(field(j, "group"));
    GroupValue unit = group_value_from_json(field(j, "unit"), spec);
    return make_algebra(std::move(spec), std::move(unit));
  });
}

json to_json(const EffectAlgebra& algebra) {
  return json{{"group", to_json(algebra.group())}, {"unit", to_json(algebra.unit())}};
}

std::vector<GroundElement> ground_from_json(const json& j, const EffectAlgebra& algebra) {
  return loading("ground", [&] {
    if (!j.is_array()) throw LoadError("ground must be an array");
    std::vector<GroundElement> ground;
    for (const auto& e : j)
      ground.push_back({field(e, "label").get<std::string>(), group_value_from_json(field(e, "value"), algebra.group())});
    validate_ground(algebra, ground);
    return ground;
  });
}

json ground_to_json(const std::vector<GroundElement>& ground) {
  json out = json::array();
  for (const auto& g : ground) out.push_back({{"label", g.label}, {"value", to_json(g.value)}});
  return out;
}

namespace {

// Reads a {key: value} map over every subset of `ground`.
std::vector<std::optional<GroupValue>> subset_map_from_json(const json& j, const WitnessTable& keys,
                                                            const GroupSpec& spec) {
  if (!j.is_object()) throw LoadError("values must be an object keyed by subset");
  std::vector<std::optional<GroupValue>> slots(std::size_t{1} << keys.ground_size());
  for (const auto& [key, value] : j.items()) {
    const FinSubset x = keys.parse_key(key);
    if (slots[x.mask()]) throw LoadError("subset {" + key + "} given twice");
    slots[x.mask()] = group_value_from_json(value, spec);
  }
  for (std::size_t m = 0; m < slots.size(); ++m)
    if (!slots[m]) throw LoadError("missing value for subset {" + keys.key(FinSubset{static_cast<std::uint32_t>(m)}) + "}");
  return slots;
}

std::vector<GroupValue> unwrap(std::vector<std::optional<GroupValue>> slots) {
  std::vector<GroupValue> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

json subset_map_to_json(std::span<const GroupValue> values, const WitnessTable& keys) {
  json out = json::object();
  for (std::size_t m = 0; m < values.size(); ++m)
    out[keys.key(FinSubset{static_cast<std::uint32_t>(m)})] = to_json(values[m]);
  return out;
}

}  // namespace

WitnessTable witness_from_json(const json& j) {
  return loading("witness instance", [&] {
    AlgebraRef algebra = algebra_from_json(field(j, "algebra"));
    std::vector<GroundElement> ground = ground_from_json(field(j, "ground"), *algebra);
    // Keys are resolved against the ground labels; a placeholder table
    // supplies the label lookup.
    const WitnessTable keys = WitnessTable::from_function(algebra, ground, [&](FinSubset) { return algebra->zero(); });
    auto values = unwrap(subset_map_from_json(field(j, "values"), keys, algebra->group()));
    return WitnessTable(algebra, std::move(ground), std::move(values));
  });
}

json to_json(const WitnessTable& table) {
  return json{{"algebra", to_json(*table.algebra())},
              {"ground", ground_to_json(table.ground())},
              {"values", subset_map_to_json(table.values(), table)}};
}

ExtensionCandidate candidate_from_json(const json& j, const WitnessTable& table) {
  return loading("candidate", [&] {
    GroupValue target = group_value_from_json(field(j, "target"), table.algebra()->group());
    auto values = unwrap(subset_map_from_json(field(j, "values"), table, table.algebra()->group()));
    return ExtensionCandidate(table.algebra(), std::move(target), std::move(values));
  });
}

json candidate_to_json(const ExtensionCandidate& candidate, const WitnessTable& table) {
  return json{{"target", to_json(candidate.target())}, {"values", subset_map_to_json(candidate.values(), table)}};
}

Observable observable_from_json(const json& j) {
  return loading("observable", [&] {
    AlgebraRef algebra = algebra_from_json(field(j, "algebra"));
    std::vector<GroupValue> atoms;
    for (const auto& a : field(j, "atoms")) atoms.push_back(group_value_from_json(a, algebra->group()));
    std::vector<Observable::Label> labels;
    const json& lj = field(j, "labels");
    if (!lj.is_object()) throw LoadError("labels must be an object");
    for (const auto& [name, indices] : lj.items()) {
      FinSubset sel;
      for (const auto& idx : indices) {
        const auto i = idx.get<std::int64_t>();
        if (i < 0 || static_cast<std::size_t>(i) >= atoms.size())
          throw LoadError("label '" + name + "' refers to atom " + std::to_string(i));
        if (sel.contains(static_cast<std::size_t>(i))) throw LoadError("label '" + name + "' repeats an atom");
        sel = sel.with(static_cast<std::size_t>(i));
      }
      labels.push_back({name, sel});
    }
    return Observable(algebra, std::move(atoms), std::move(labels));
  });
}

json to_json(const Observable& obs) {
  json atoms = json::array();
  for (const auto& a : obs.atoms()) atoms.push_back(to_json(a));
  json labels = json::object();
  for (const auto& l : obs.labels()) {
    json idx = json::array();
    for (std::size_t i = 0; i < obs.atoms().size(); ++i)
      if (l.atoms.contains(i)) idx.push_back(i);
    labels[l.name] = std::move(idx);
  }
  return json{{"algebra", to_json(*obs.algebra())}, {"atoms", std::move(atoms)}, {"labels", std::move(labels)}};
}

}  // namespace wkit::io
