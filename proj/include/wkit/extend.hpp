#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wkit/error.hpp"
#include "wkit/witness.hpp"

namespace wkit {

/// A witness table known to satisfy the witness axioms; (beta, S).
class WitnessPair {
 public:
  /// Verifies the table; throws ContractViolation if it is not a witness mapping.
  explicit WitnessPair(WitnessTable table);

  const WitnessTable& table() const { return table_; }
  const AlgebraRef& algebra() const { return table_.algebra(); }

  friend bool operator==(const WitnessPair&, const WitnessPair&) = default;

 private:
  WitnessTable table_;
};

/// A total map e_t on the subsets of some S together with its target t,
/// where e_t(∅) = t and every value is an effect.
class ExtensionCandidate {
 public:
  ExtensionCandidate(AlgebraRef algebra, GroupValue target, std::vector<GroupValue> values);

  const AlgebraRef& algebra() const { return algebra_; }
  const GroupValue& target() const { return target_; }
  std::span<const GroupValue> values() const { return values_; }
  const GroupValue& operator[](FinSubset x) const { return values_.at(x.mask()); }
  std::size_t ground_size() const { return ground_size_of(values_); }

  friend bool operator==(const ExtensionCandidate& a, const ExtensionCandidate& b) {
    return same_algebra(a.algebra_, b.algebra_) && a.target_ == b.target_ && a.values_ == b.values_;
  }

 private:
  AlgebraRef algebra_;
  GroupValue target_;
  std::vector<GroupValue> values_;
};

/// Thrown by assemble_extension when the candidate fails check_candidate.
class RejectedCandidate : public Error {
 public:
  RejectedCandidate(const std::string& what, DeltaReport report) : Error(what), report_(std::move(report)) {}
  const DeltaReport& report() const { return report_; }

 private:
  DeltaReport report_;
};

/// 0 <= D_e(X, A) <= D_beta(X, A) for every pair, in canonical order.
/// Throws AlreadyPresent if the target is already a ground value, and
/// PreconditionError if the candidate does not match the pair's size/algebra.
DeltaReport check_candidate(const WitnessPair& pair, const ExtensionCandidate& candidate);

/// The witness pair on S ∪ {t}, t appended as the last ground element:
/// beta_t(X) = beta(X) if t ∉ X, e_t(X \ {t}) otherwise. The result is
/// re-verified; a failure there is an internal error (std::logic_error).
WitnessPair assemble_extension(const WitnessPair& pair, const ExtensionCandidate& candidate, const std::string& label);

/// beta_t restricted to the subsets of S \ {t}.
WitnessPair restrict_pair(const WitnessPair& extended, const std::string& label);
/// Y -> beta_t(Y ∪ {t}) over the subsets of S \ {t}.
ExtensionCandidate restrict_to_candidate(const WitnessPair& extended, const std::string& label);

// Constructions of candidates for special targets.

/// e ≡ 0, target 0.
ExtensionCandidate candidate_zero(const WitnessPair& pair);
/// e = beta, target u.
ExtensionCandidate candidate_one(const WitnessPair& pair);
/// e(X) = beta(X) - beta(X ∪ {u}), target u' for the ground element `u`.
ExtensionCandidate candidate_complement(const WitnessPair& pair, const std::string& u);
/// e(Z) = beta(Z ∪ U), target beta(U).
ExtensionCandidate candidate_range(const WitnessPair& pair, FinSubset range_set);
/// e(X) = t . beta(X) for t commuting with every table value (symmat only).
ExtensionCandidate candidate_commuting(const WitnessPair& pair, const GroupValue& t);
/// theta * c1 + (1 - theta) * c2, pointwise; qvec/symmat only, theta in [0, 1].
ExtensionCandidate candidate_convex(const WitnessPair& pair, const ExtensionCandidate& c1,
                                    const ExtensionCandidate& c2, const Rational& theta);

/// `base` if unused as a label, else base#2, base#3, ...
std::string fresh_label(const WitnessTable& table, const std::string& base);

struct ClosureStep {
  std::string method;  // zero | one | complement | range
  std::string label;
  GroupValue value;
};

struct ClosureResult {
  WitnessPair pair;
  std::vector<ClosureStep> steps;
  bool fixed_point = false;      // no construction applies any more
  bool budget_exhausted = false; // stopped because of the step budget
  bool scope_limited = false;    // stopped because |S| reached 16
  bool has_zero = false;
  bool has_unit = false;
  bool closed_under_complement = false;
  bool range_in_ground = false;

  bool all_properties() const { return has_zero && has_unit && closed_under_complement && range_in_ground; }
};

/// Repeatedly applies the first applicable construction, in the order
/// zero, one, complement (ground order), range (canonical subset order),
/// until none applies or `budget` steps have been taken.
ClosureResult closure_scan(const WitnessPair& pair, std::size_t budget);

/// Evaluates the closure properties of a pair (0, u in S; S closed under ';
/// every table value in S).
void evaluate_closure_properties(const WitnessPair& pair, ClosureResult& result);

}  // namespace wkit
