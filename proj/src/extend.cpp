#include "wkit/extend.hpp"

#include <algorithm>
#include <stdexcept>

#include "wkit/error.hpp"
#include "wkit/exec.hpp"

namespace wkit {

WitnessPair::WitnessPair(WitnessTable table) : table_(std::move(table)) {
  const DeltaReport report = verify_witness(table_);
  if (!report.passed())
    throw ContractViolation("not a witness mapping: " + std::string(to_string(report.violation->check)) +
                            " fails at X={" + table_.key(report.violation->x) + "}, A={" +
                            table_.key(report.violation->a) + "}");
}

ExtensionCandidate::ExtensionCandidate(AlgebraRef algebra, GroupValue target, std::vector<GroupValue> values)
    : algebra_(std::move(algebra)), target_(std::move(target)), values_(std::move(values)) {
  if (!algebra_) throw ContractViolation("candidate without an algebra");
  ground_size_of(values_);
  if (values_.front() != target_) throw ContractViolation("candidate value at the empty set must equal its target");
  for (const auto& v : values_) {
    algebra_->group().require(v);
    if (!algebra_->is_effect(v)) throw ContractViolation("candidate value " + to_string(v) + " is not an effect");
  }
}

namespace {

void require_compatible(const WitnessPair& pair, const ExtensionCandidate& candidate) {
  if (!same_algebra(pair.algebra(), candidate.algebra()))
    throw AlgebraMismatch("candidate and witness pair live in different algebras");
  if (candidate.values().size() != pair.table().values().size())
    throw PreconditionError("candidate is defined on a ground set of a different size");
}

void require_absent(const WitnessTable& table, const GroupValue& t) {
  if (const auto i = table.find_value(t))
    throw AlreadyPresent(to_string(t) + " is already in S as '" + table.ground()[*i].label + "'");
}

ExtensionCandidate from_function(const WitnessPair& pair, GroupValue target,
                                 const std::function<GroupValue(FinSubset)>& fn) {
  std::vector<GroupValue> values;
  values.reserve(pair.table().values().size());
  pair.table().full().for_each_subset([&](FinSubset x) { values.push_back(fn(x)); });
  return ExtensionCandidate(pair.algebra(), std::move(target), std::move(values));
}

}  // namespace

DeltaReport check_candidate(const WitnessPair& pair, const ExtensionCandidate& candidate) {
  require_compatible(pair, candidate);
  const WitnessTable& table = pair.table();
  require_absent(table, candidate.target());
  const GroupSpec& group = pair.algebra()->group();

  const auto uppers = canonical_upper_sets(table.ground_size());
  auto hit = exec::first_hit<Violation>(uppers.size(), [&](std::size_t i) -> std::optional<Violation> {
    const DeltaColumn de = delta_column(candidate.values(), uppers[i]);
    const DeltaColumn db = delta_column(table.values(), uppers[i]);
    for (std::size_t s = 0; s < de.values.size(); ++s) {
      if (!group.is_positive(de.values[s]))
        return Violation{Check::candidate_nonnegative, de.lower[s], de.upper, de.values[s]};
      if (!group.leq(de.values[s], db.values[s]))
        return Violation{Check::candidate_dominated, de.lower[s], de.upper, de.values[s]};
    }
    return std::nullopt;
  });

  DeltaReport report;
  std::uint64_t pairs = 1;
  for (std::size_t i = 0; i < table.ground_size(); ++i) pairs *= 3;
  report.checked = pairs;
  if (hit) report.violation = std::move(hit->second);
  return report;
}

WitnessPair assemble_extension(const WitnessPair& pair, const ExtensionCandidate& candidate, const std::string& label) {
  const DeltaReport report = check_candidate(pair, candidate);
  if (!report.passed()) {
    const Violation& v = *report.violation;
    throw RejectedCandidate("candidate rejected: " + std::string(to_string(v.check)) + " at X={" +
                                pair.table().key(v.x) + "}, A={" + pair.table().key(v.a) + "}, D = " +
                                to_string(v.value),
                            report);
  }
  const WitnessTable& table = pair.table();
  const std::size_t t = table.ground_size();
  if (t + 1 > FinSubset::max_ground) throw UnsupportedInstance("extension would exceed 16 ground elements");

  std::vector<GroundElement> ground = table.ground();
  ground.push_back({label, candidate.target()});
  std::vector<GroupValue> values(table.values().begin(), table.values().end());
  values.insert(values.end(), candidate.values().begin(), candidate.values().end());

  WitnessTable extended(pair.algebra(), std::move(ground), std::move(values));
  const DeltaReport recheck = verify_witness(extended);
  if (!recheck.passed())
    throw std::logic_error("internal error: assembled extension is not a witness mapping (" +
                           std::string(to_string(recheck.violation->check)) + ")");
  return WitnessPair(std::move(extended));
}

namespace {

std::size_t require_label(const WitnessTable& table, const std::string& label) {
  const auto i = table.index_of(label);
  if (!i) throw PreconditionError("'" + label + "' is not a ground label");
  return *i;
}

}  // namespace

WitnessPair restrict_pair(const WitnessPair& extended, const std::string& label) {
  const WitnessTable& table = extended.table();
  const std::size_t t = require_label(table, label);
  std::vector<GroundElement> ground = table.ground();
  ground.erase(ground.begin() + static_cast<std::ptrdiff_t>(t));
  std::vector<GroupValue> values;
  FinSubset::full(ground.size()).for_each_subset([&](FinSubset y) { values.push_back(table[insert_index(y, t)]); });
  return WitnessPair(WitnessTable(extended.algebra(), std::move(ground), std::move(values)));
}

ExtensionCandidate restrict_to_candidate(const WitnessPair& extended, const std::string& label) {
  const WitnessTable& table = extended.table();
  const std::size_t t = require_label(table, label);
  std::vector<GroupValue> values;
  FinSubset::full(table.ground_size() - 1).for_each_subset([&](FinSubset y) {
    values.push_back(table[insert_index(y, t).with(t)]);
  });
  return ExtensionCandidate(extended.algebra(), table.ground()[t].value, std::move(values));
}

ExtensionCandidate candidate_zero(const WitnessPair& pair) {
  const GroupValue zero = pair.algebra()->zero();
  require_absent(pair.table(), zero);
  return from_function(pair, zero, [&](FinSubset) { return zero; });
}

ExtensionCandidate candidate_one(const WitnessPair& pair) {
  const WitnessTable& table = pair.table();
  require_absent(table, pair.algebra()->unit());
  return from_function(pair, pair.algebra()->unit(), [&](FinSubset x) { return table[x]; });
}

ExtensionCandidate candidate_complement(const WitnessPair& pair, const std::string& u) {
  const WitnessTable& table = pair.table();
  const std::size_t i = require_label(table, u);
  const GroupValue target = pair.algebra()->unit() - table.ground()[i].value;
  require_absent(table, target);
  return from_function(pair, target, [&](FinSubset x) { return table[x] - table[x.with(i)]; });
}

ExtensionCandidate candidate_range(const WitnessPair& pair, FinSubset range_set) {
  const WitnessTable& table = pair.table();
  if (!range_set.subset_of(table.full())) throw PreconditionError("U is not a subset of S");
  const GroupValue target = table[range_set];
  require_absent(table, target);
  return from_function(pair, target, [&](FinSubset z) { return table[z | range_set]; });
}

ExtensionCandidate candidate_commuting(const WitnessPair& pair, const GroupValue& t) {
  const WitnessTable& table = pair.table();
  const EffectAlgebra& alg = *pair.algebra();
  if (alg.group().kind() != GroupKind::symmat)
    throw UnsupportedInstance("the commuting construction needs the symmat backend");
  alg.group().require(t);
  if (!alg.is_effect(t)) throw PreconditionError(to_string(t) + " is not an effect");
  std::vector<GroupValue> values;
  values.reserve(table.values().size());
  table.full().for_each_subset([&](FinSubset x) {
    const RationalMatrix left = matrix_product(t, table[x]);
    if (left != matrix_product(table[x], t))
      throw CommutationFailure("t does not commute with beta({" + table.key(x) + "})");
    values.push_back(GroupValue::from_matrix(left));
  });
  require_absent(table, t);
  return ExtensionCandidate(pair.algebra(), t, std::move(values));
}

ExtensionCandidate candidate_convex(const WitnessPair& pair, const ExtensionCandidate& c1,
                                    const ExtensionCandidate& c2, const Rational& theta) {
  if (!pair.algebra()->group().divisible())
    throw UnsupportedInstance("convex combinations need a divisible group (qvec or symmat)");
  if (theta < 0 || theta > 1) throw PreconditionError("theta must lie in [0, 1]");
  for (const ExtensionCandidate* c : {&c1, &c2}) {
    const DeltaReport report = check_candidate(pair, *c);
    if (!report.passed()) throw RejectedCandidate("convex combination of a rejected candidate", report);
  }
  if (theta == 1) return c1;
  if (theta == 0) return c2;
  const Rational rest = 1 - theta;
  const GroupValue target = c1.target().scaled(theta) + c2.target().scaled(rest);
  require_absent(pair.table(), target);
  return from_function(pair, target, [&](FinSubset x) { return c1[x].scaled(theta) + c2[x].scaled(rest); });
}

std::string fresh_label(const WitnessTable& table, const std::string& base) {
  if (!table.index_of(base)) return base;
  for (std::size_t k = 2;; ++k) {
    std::string candidate = base + "#" + std::to_string(k);
    if (!table.index_of(candidate)) return candidate;
  }
}

namespace {

std::string range_label(const WitnessTable& table, FinSubset u) {
  std::string key = table.key(u);
  std::replace(key.begin(), key.end(), ',', ';');
  return "min(" + key + ")";
}

struct Planned {
  std::string method;
  std::string label;
  ExtensionCandidate candidate;
};

// The first applicable construction in the fixed order, if any.
std::optional<Planned> next_construction(const WitnessPair& pair) {
  const WitnessTable& table = pair.table();
  const EffectAlgebra& alg = *pair.algebra();
  if (!table.find_value(alg.zero())) return Planned{"zero", fresh_label(table, "0"), candidate_zero(pair)};
  if (!table.find_value(alg.unit())) return Planned{"one", fresh_label(table, "1"), candidate_one(pair)};
  for (const auto& g : table.ground())
    if (!table.find_value(alg.unit() - g.value))
      return Planned{"complement", fresh_label(table, g.label + "'"), candidate_complement(pair, g.label)};
  for (FinSubset u : canonical_upper_sets(table.ground_size()))
    if (!table.find_value(table[u]))
      return Planned{"range", fresh_label(table, range_label(table, u)), candidate_range(pair, u)};
  return std::nullopt;
}

}  // namespace

void evaluate_closure_properties(const WitnessPair& pair, ClosureResult& result) {
  const WitnessTable& table = pair.table();
  const EffectAlgebra& alg = *pair.algebra();
  result.has_zero = table.find_value(alg.zero()).has_value();
  result.has_unit = table.find_value(alg.unit()).has_value();
  result.closed_under_complement = std::all_of(table.ground().begin(), table.ground().end(), [&](const GroundElement& g) {
    return table.find_value(alg.unit() - g.value).has_value();
  });
  result.range_in_ground = std::all_of(table.values().begin(), table.values().end(),
                                       [&](const GroupValue& v) { return table.find_value(v).has_value(); });
}

ClosureResult closure_scan(const WitnessPair& pair, std::size_t budget) {
  ClosureResult result{pair, {}};
  while (true) {
    std::optional<Planned> step = next_construction(result.pair);
    if (!step) {
      result.fixed_point = true;
      break;
    }
    if (result.steps.size() >= budget) {
      result.budget_exhausted = true;
      break;
    }
    if (result.pair.table().ground_size() >= FinSubset::max_ground) {
      result.scope_limited = true;
      break;
    }
    result.pair = assemble_extension(result.pair, step->candidate, step->label);
    result.steps.push_back({step->method, step->label, step->candidate.target()});
  }
  evaluate_closure_properties(result.pair, result);
  return result;
}

}  // namespace wkit
