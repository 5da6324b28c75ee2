#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wkit/effect.hpp"
#include "wkit/subset.hpp"

namespace wkit {

// ---------------------------------------------------------------------------
// The delta transform on subset-indexed tables.
//
// A table is any total map Fin(S) -> G, stored as 2^|S| values indexed by
// subset mask. For X ⊆ A,
//
//     D(X, A) = sum over X ⊆ Z ⊆ A of (-1)^(|X| + |Z|) table(Z).
//
// None of the functions in this block assume anything about the table
// beyond totality.
// ---------------------------------------------------------------------------

/// D(X, A) by direct summation over the 2^|A \ X| intermediate sets.
/// Throws PreconditionError unless X ⊆ A ⊆ ground.
GroupValue delta(std::span<const GroupValue> table, FinSubset x, FinSubset a);

/// All D(X, A) for one fixed A, computed together by an in-place Möbius
/// transform over the subsets of A. `lower[i]` is X, `values[i]` is D(X, A);
/// X runs over the subsets of A in increasing mask order.
struct DeltaColumn {
  FinSubset upper;
  std::vector<FinSubset> lower;
  std::vector<GroupValue> values;
};
DeltaColumn delta_column(std::span<const GroupValue> table, FinSubset a);

/// D(X,A) - D(X,A ∪ {c}) - D(X ∪ {c}, A ∪ {c}); zero for every table.
/// Requires X ⊆ A and c ∉ A.
GroupValue lemma1_residual(std::span<const GroupValue> table, FinSubset x, FinSubset a, std::size_t c);

/// sum over Y ⊆ C of D(X ∪ Y, A ∪ C), minus D(X, A); zero for every table.
/// Requires X ⊆ A and A ∩ C = ∅.
GroupValue partition_residual(std::span<const GroupValue> table, FinSubset x, FinSubset a, FinSubset c);

/// Every A ⊆ {0..n-1}, ordered by cardinality, then by mask. Pairs (X, A)
/// are always visited in this order of A, then increasing X.
std::vector<FinSubset> canonical_upper_sets(std::size_t n);

/// |S| for a table of 2^|S| entries; throws PreconditionError otherwise.
std::size_t ground_size_of(std::span<const GroupValue> table);

// ---------------------------------------------------------------------------
// Witness tables.
// ---------------------------------------------------------------------------

struct GroundElement {
  std::string label;
  GroupValue value;

  friend bool operator==(const GroundElement&, const GroundElement&) = default;
};

/// Throws ContractViolation unless labels are nonempty, comma-free and distinct,
/// values are distinct effects of `algebra`, and there are at most 16.
void validate_ground(const EffectAlgebra& algebra, const std::vector<GroundElement>& ground);

/// A total map from the subsets of a labeled ground set S of effects into
/// the effect algebra. Bit i of a subset mask is ground()[i].
class WitnessTable {
 public:
  WitnessTable(AlgebraRef algebra, std::vector<GroundElement> ground, std::vector<GroupValue> values);

  static WitnessTable from_function(AlgebraRef algebra, std::vector<GroundElement> ground,
                                    const std::function<GroupValue(FinSubset)>& beta);

  const AlgebraRef& algebra() const { return algebra_; }
  const std::vector<GroundElement>& ground() const { return ground_; }
  std::size_t ground_size() const { return ground_.size(); }
  FinSubset full() const { return FinSubset::full(ground_.size()); }
  std::span<const GroupValue> values() const { return values_; }
  const GroupValue& operator[](FinSubset x) const { return values_.at(x.mask()); }

  std::optional<std::size_t> index_of(std::string_view label) const;
  std::optional<std::size_t> find_value(const GroupValue& value) const;

  /// Sorted, comma-joined labels of `x`; "" for the empty set.
  std::string key(FinSubset x) const;
  /// Inverse of key(); throws LoadError on unknown or repeated labels.
  FinSubset parse_key(std::string_view key) const;
  FinSubset subset_of_labels(const std::vector<std::string>& labels) const;

  friend bool operator==(const WitnessTable& a, const WitnessTable& b) {
    return same_algebra(a.algebra_, b.algebra_) && a.ground_ == b.ground_ && a.values_ == b.values_;
  }

 private:
  AlgebraRef algebra_;
  std::vector<GroundElement> ground_;
  std::vector<GroupValue> values_;
};

// ---------------------------------------------------------------------------
// Verification reports.
// ---------------------------------------------------------------------------

enum class Check {
  unit_at_empty,          // A1: beta(∅) = u
  singleton_identity,     // A2: beta({c}) = c
  delta_nonnegative,      // A3: D(X, A) >= 0
  delta_below_unit,       // D(X, A) <= u
  antitone,               // X ⊆ Y  =>  beta(Y) <= beta(X)
  lower_bound,            // beta(X) <= c for c in X
  zero_absorbs,           // 0 in X  =>  beta(X) = 0
  unit_neutral,           // beta(X) = beta(X ∪ {u})
  candidate_nonnegative,  // 0 <= D_e(X, A)
  candidate_dominated,    // D_e(X, A) <= D_beta(X, A)
};

std::string_view to_string(Check check);

/// The offending pair and value. For per-pair checks (X, A) is the pair;
/// for antitone, (X, A) = (Y, Y ∪ {c}) and value = beta(Y ∪ {c}); for
/// lower_bound A = {c}; for zero_absorbs A = {0}; for unit_neutral
/// A = X ∪ {u}.
struct Violation {
  Check check;
  FinSubset x;
  FinSubset a;
  GroupValue value;
};

struct DeltaReport {
  std::optional<Violation> violation;
  std::uint64_t checked = 0;

  bool passed() const { return !violation.has_value(); }
};

/// A1, A2, then A3 over all 3^|S| pairs in canonical order. The first
/// violation in that order is reported.
DeltaReport verify_witness(const WitnessTable& table);

/// Properties every witness mapping has: D <= u, antitone, lower bound,
/// absorption by 0 and neutrality of u. Requires verify_witness to pass
/// (ContractViolation otherwise).
DeltaReport check_derived_properties(const WitnessTable& table);

}  // namespace wkit
