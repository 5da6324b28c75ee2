#include "wkit/witness.hpp"

#include <algorithm>
#include <bit>

#include "wkit/error.hpp"
#include "wkit/exec.hpp"

namespace wkit {

std::size_t ground_size_of(std::span<const GroupValue> table) {
  const std::size_t size = table.size();
  if (size == 0 || !std::has_single_bit(size))
    throw PreconditionError("table size " + std::to_string(size) + " is not a power of two");
  const auto n = static_cast<std::size_t>(std::countr_zero(size));
  if (n > FinSubset::max_ground) throw UnsupportedInstance("ground sets are limited to 16 elements");
  return n;
}

namespace {

void require_pair(std::span<const GroupValue> table, FinSubset x, FinSubset a) {
  const std::size_t n = ground_size_of(table);
  if (!a.subset_of(FinSubset::full(n))) throw PreconditionError("A is not a subset of the ground set");
  if (!x.subset_of(a)) throw PreconditionError("X is not a subset of A");
}

}  // namespace

GroupValue delta(std::span<const GroupValue> table, FinSubset x, FinSubset a) {
  require_pair(table, x, a);
  GroupValue sum = GroupValue::zero(table[0].kind(), table[0].dim());
  x.for_each_between(a, [&](FinSubset z) {
    if ((z - x).size() % 2 == 0)
      sum += table[z.mask()];
    else
      sum -= table[z.mask()];
  });
  return sum;
}

DeltaColumn delta_column(std::span<const GroupValue> table, FinSubset a) {
  require_pair(table, FinSubset{}, a);
  std::vector<std::size_t> bits;
  for (std::size_t i = 0; i < 32; ++i)
    if (a.contains(i)) bits.push_back(i);
  const std::size_t k = bits.size();
  const std::size_t count = std::size_t{1} << k;

  DeltaColumn col{a, {}, {}};
  col.lower.reserve(count);
  col.values.reserve(count);
  for (std::size_t s = 0; s < count; ++s) {
    FinSubset x;
    for (std::size_t j = 0; j < k; ++j)
      if ((s >> j) & 1U) x = x.with(bits[j]);
    col.lower.push_back(x);
    col.values.push_back(table[x.mask()]);
  }
  // values[s] <- sum over supersets T of s (inside A) of (-1)^|T \ s| values[T]
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t s = 0; s < count; ++s)
      if (!((s >> j) & 1U)) col.values[s] -= col.values[s | (std::size_t{1} << j)];
  return col;
}

GroupValue lemma1_residual(std::span<const GroupValue> table, FinSubset x, FinSubset a, std::size_t c) {
  require_pair(table, x, a);
  if (c >= ground_size_of(table)) throw PreconditionError("c is not a ground element");
  if (a.contains(c)) throw PreconditionError("c must not lie in A");
  const FinSubset ac = a.with(c);
  return delta(table, x, a) - delta(table, x, ac) - delta(table, x.with(c), ac);
}

GroupValue partition_residual(std::span<const GroupValue> table, FinSubset x, FinSubset a, FinSubset c) {
  require_pair(table, x, a);
  if (!a.disjoint(c)) throw PreconditionError("C must be disjoint from A");
  const FinSubset ac = a | c;
  if (!ac.subset_of(FinSubset::full(ground_size_of(table)))) throw PreconditionError("C is not a subset of the ground set");
  GroupValue sum = GroupValue::zero(table[0].kind(), table[0].dim());
  c.for_each_subset([&](FinSubset y) { sum += delta(table, x | y, ac); });
  return sum - delta(table, x, a);
}

std::vector<FinSubset> canonical_upper_sets(std::size_t n) {
  std::vector<FinSubset> out;
  FinSubset::full(n).for_each_subset([&](FinSubset a) { out.push_back(a); });
  std::stable_sort(out.begin(), out.end(), [](FinSubset l, FinSubset r) { return l.size() < r.size(); });
  return out;
}

void validate_ground(const EffectAlgebra& algebra, const std::vector<GroundElement>& ground) {
  if (ground.size() > FinSubset::max_ground) throw UnsupportedInstance("ground sets are limited to 16 elements");
  for (std::size_t i = 0; i < ground.size(); ++i) {
    const auto& g = ground[i];
    if (g.label.empty()) throw ContractViolation("ground labels must be nonempty");
    if (g.label.find(',') != std::string::npos)
      throw ContractViolation("ground label '" + g.label + "' contains a comma");
    algebra.group().require(g.value);
    if (!algebra.is_effect(g.value))
      throw ContractViolation("ground element '" + g.label + "' = " + to_string(g.value) + " is not an effect");
    for (std::size_t j = 0; j < i; ++j) {
      if (ground[j].label == g.label) throw ContractViolation("duplicate ground label '" + g.label + "'");
      if (ground[j].value == g.value)
        throw ContractViolation("ground elements '" + ground[j].label + "' and '" + g.label + "' are equal");
    }
  }
}

WitnessTable::WitnessTable(AlgebraRef algebra, std::vector<GroundElement> ground, std::vector<GroupValue> values)
    : algebra_(std::move(algebra)), ground_(std::move(ground)), values_(std::move(values)) {
  if (!algebra_) throw ContractViolation("witness table without an algebra");
  validate_ground(*algebra_, ground_);
  if (values_.size() != (std::size_t{1} << ground_.size()))
    throw ContractViolation("table has " + std::to_string(values_.size()) + " values, expected 2^" +
                            std::to_string(ground_.size()));
  for (std::size_t m = 0; m < values_.size(); ++m) {
    algebra_->group().require(values_[m]);
    if (!algebra_->is_effect(values_[m]))
      throw ContractViolation("table value at {" + key(FinSubset{static_cast<std::uint32_t>(m)}) +
                              "} = " + to_string(values_[m]) + " is not an effect");
  }
}

WitnessTable WitnessTable::from_function(AlgebraRef algebra, std::vector<GroundElement> ground,
                                         const std::function<GroupValue(FinSubset)>& beta) {
  if (ground.size() > FinSubset::max_ground) throw UnsupportedInstance("ground sets are limited to 16 elements");
  std::vector<GroupValue> values;
  values.reserve(std::size_t{1} << ground.size());
  FinSubset::full(ground.size()).for_each_subset([&](FinSubset x) { values.push_back(beta(x)); });
  return WitnessTable(std::move(algebra), std::move(ground), std::move(values));
}

std::optional<std::size_t> WitnessTable::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < ground_.size(); ++i)
    if (ground_[i].label == label) return i;
  return std::nullopt;
}

std::optional<std::size_t> WitnessTable::find_value(const GroupValue& value) const {
  for (std::size_t i = 0; i < ground_.size(); ++i)
    if (ground_[i].value == value) return i;
  return std::nullopt;
}

std::string WitnessTable::key(FinSubset x) const {
  std::vector<std::string_view> labels;
  for (std::size_t i = 0; i < ground_.size(); ++i)
    if (x.contains(i)) labels.push_back(ground_[i].label);
  std::sort(labels.begin(), labels.end());
  std::string out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) out += ',';
    out += labels[i];
  }
  return out;
}

FinSubset WitnessTable::parse_key(std::string_view key) const {
  std::vector<std::string> labels;
  if (!key.empty()) {
    std::size_t start = 0;
    while (true) {
      const auto comma = key.find(',', start);
      labels.emplace_back(key.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  return subset_of_labels(labels);
}

FinSubset WitnessTable::subset_of_labels(const std::vector<std::string>& labels) const {
  FinSubset x;
  for (const auto& label : labels) {
    const auto i = index_of(label);
    if (!i) throw LoadError("unknown label '" + label + "'");
    if (x.contains(*i)) throw LoadError("label '" + label + "' repeated in subset");
    x = x.with(*i);
  }
  return x;
}

std::string_view to_string(Check check) {
  switch (check) {
    case Check::unit_at_empty: return "A1";
    case Check::singleton_identity: return "A2";
    case Check::delta_nonnegative: return "A3";
    case Check::delta_below_unit: return "delta-below-unit";
    case Check::antitone: return "antitone";
    case Check::lower_bound: return "lower-bound";
    case Check::zero_absorbs: return "zero-absorbs";
    case Check::unit_neutral: return "unit-neutral";
    case Check::candidate_nonnegative: return "candidate-nonnegative";
    case Check::candidate_dominated: return "candidate-dominated";
  }
  return "?";
}

namespace {

std::uint64_t pair_count(std::size_t n) {
  std::uint64_t p = 1;
  for (std::size_t i = 0; i < n; ++i) p *= 3;
  return p;
}

// Scans the delta columns in canonical order; `test` returns the failing
// check for one D value, if any.
template <typename Test>
std::optional<Violation> scan_columns(const WitnessTable& table, Test&& test) {
  const auto uppers = canonical_upper_sets(table.ground_size());
  auto hit = exec::first_hit<Violation>(uppers.size(), [&](std::size_t i) -> std::optional<Violation> {
    const DeltaColumn col = delta_column(table.values(), uppers[i]);
    for (std::size_t s = 0; s < col.values.size(); ++s)
      if (auto check = test(col.values[s])) return Violation{*check, col.lower[s], col.upper, col.values[s]};
    return std::nullopt;
  });
  if (!hit) return std::nullopt;
  return std::move(hit->second);
}

}  // namespace

DeltaReport verify_witness(const WitnessTable& table) {
  const EffectAlgebra& alg = *table.algebra();
  DeltaReport report;
  if (table[FinSubset{}] != alg.unit()) {
    report.violation = Violation{Check::unit_at_empty, {}, {}, table[FinSubset{}]};
    return report;
  }
  for (std::size_t c = 0; c < table.ground_size(); ++c) {
    const FinSubset single = FinSubset::singleton(c);
    if (table[single] != table.ground()[c].value) {
      report.violation = Violation{Check::singleton_identity, single, single, table[single]};
      return report;
    }
  }
  report.violation = scan_columns(table, [&](const GroupValue& d) -> std::optional<Check> {
    if (alg.group().is_positive(d)) return std::nullopt;
    return Check::delta_nonnegative;
  });
  report.checked = pair_count(table.ground_size());
  return report;
}

DeltaReport check_derived_properties(const WitnessTable& table) {
  if (!verify_witness(table).passed())
    throw ContractViolation("derived properties need a table that passes verify_witness");
  const EffectAlgebra& alg = *table.algebra();
  const std::size_t n = table.ground_size();
  DeltaReport report;
  report.checked = pair_count(n);

  report.violation = scan_columns(table, [&](const GroupValue& d) -> std::optional<Check> {
    if (alg.leq(d, alg.unit())) return std::nullopt;
    return Check::delta_below_unit;
  });
  if (report.violation) return report;

  // Antitone on covering pairs; transitivity of the order gives the rest.
  const FinSubset full = table.full();
  std::optional<Violation> found;
  full.for_each_subset([&](FinSubset y) {
    for (std::size_t c = 0; c < n && !found; ++c) {
      if (y.contains(c)) continue;
      const FinSubset yc = y.with(c);
      if (!alg.leq(table[yc], table[y])) found = Violation{Check::antitone, y, yc, table[yc]};
    }
  });
  if (found) {
    report.violation = std::move(found);
    return report;
  }

  full.for_each_subset([&](FinSubset x) {
    for (std::size_t c = 0; c < n && !found; ++c)
      if (x.contains(c) && !alg.leq(table[x], table.ground()[c].value))
        found = Violation{Check::lower_bound, x, FinSubset::singleton(c), table[x]};
  });
  if (found) {
    report.violation = std::move(found);
    return report;
  }

  if (const auto z = table.find_value(alg.zero())) {
    full.for_each_subset([&](FinSubset x) {
      if (!found && x.contains(*z) && !table[x].is_zero())
        found = Violation{Check::zero_absorbs, x, FinSubset::singleton(*z), table[x]};
    });
  }
  if (found) {
    report.violation = std::move(found);
    return report;
  }

  if (const auto w = table.find_value(alg.unit())) {
    full.for_each_subset([&](FinSubset x) {
      if (!found && !x.contains(*w) && table[x] != table[x.with(*w)])
        found = Violation{Check::unit_neutral, x, x.with(*w), table[x.with(*w)]};
    });
  }
  report.violation = std::move(found);
  return report;
}

}  // namespace wkit
