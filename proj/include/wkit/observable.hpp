#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wkit/witness.hpp"

namespace wkit {

/// A simple observable: a decomposition of the unit into atoms a_1..a_n,
/// together with a labeling that sends each labeled element c to the set
/// f(c) of atoms summing to it. The Boolean algebra is the powerset of atom
/// indices. Every finite coexistent set is covered by such an observable.
class Observable {
 public:
  struct Label {
    std::string name;
    FinSubset atoms;

    friend bool operator==(const Label&, const Label&) = default;
  };

  /// Throws InvalidObservable unless the atoms are positive, sum exactly to
  /// the unit, there are at most 16 of them and every label selects atoms.
  Observable(AlgebraRef algebra, std::vector<GroupValue> atoms, std::vector<Label> labels);

  const AlgebraRef& algebra() const { return algebra_; }
  const std::vector<GroupValue>& atoms() const { return atoms_; }
  const std::vector<Label>& labels() const { return labels_; }

  /// Sum of the atoms in `selection`.
  GroupValue sum(FinSubset selection) const;
  /// The labeled elements with their values, in label order.
  std::vector<GroundElement> ground() const;

 private:
  AlgebraRef algebra_;
  std::vector<GroupValue> atoms_;
  std::vector<Label> labels_;
};

/// All 2^n atom subset sums, deduplicated, in order of first occurrence by
/// subset mask.
std::vector<GroupValue> range(const Observable& obs);

/// beta(X) = sum of the atoms in the intersection of f(c) over c in X
/// (all atoms for X = ∅). Ground elements are the labeled values, in label
/// order. Throws InvalidObservable if two labels denote the same value.
WitnessTable witness_from_observable(const Observable& obs);

/// Same, for a ground set given explicitly; each element must carry a label
/// of the observable whose atoms sum to its value (InvalidObservable otherwise).
WitnessTable witness_from_observable(const Observable& obs, const std::vector<GroundElement>& ground);

/// D(X, A) of witness_from_observable in closed form: the sum of the atoms
/// in (∩_{c∈X} f(c)) \ (∪_{c∈A\X} f(c)). X and A index labels.
GroupValue observable_delta(const Observable& obs, FinSubset x, FinSubset a);

/// Exhaustive search for a simple observable whose range covers `ground`,
/// zvec only. Atom multisets are tried by increasing size, each as a
/// nondecreasing sequence of atoms (atoms ordered colexicographically);
/// each element gets the smallest atom mask summing to it.
/// Throws UnsupportedInstance for other backends or max_atoms above the
/// L1 norm of the unit (or above 16).
std::optional<Observable> find_observable(const AlgebraRef& algebra, const std::vector<GroundElement>& ground,
                                          std::size_t max_atoms);

}  // namespace wkit
