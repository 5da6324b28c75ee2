#pragma once

#include <memory>
#include <optional>

#include "wkit/pogroup.hpp"

namespace wkit {

/// The interval [0, u] of a partially ordered abelian group, with
/// a (+) b defined iff a + b <= u.
class EffectAlgebra {
 public:
  /// Requires 0 <= unit, unit != 0 and unit in the group.
  EffectAlgebra(GroupSpec group, GroupValue unit);

  const GroupSpec& group() const { return group_; }
  const GroupValue& unit() const { return unit_; }
  GroupValue zero() const { return group_.zero(); }

  /// 0 <= x <= u.
  bool is_effect(const GroupValue& x) const;
  bool leq(const GroupValue& x, const GroupValue& y) const { return group_.leq(x, y); }

  friend bool operator==(const EffectAlgebra&, const EffectAlgebra&) = default;

 private:
  GroupSpec group_;
  GroupValue unit_;
};

using AlgebraRef = std::shared_ptr<const EffectAlgebra>;

inline AlgebraRef make_algebra(GroupSpec group, GroupValue unit) {
  return std::make_shared<const EffectAlgebra>(std::move(group), std::move(unit));
}

/// True when both refer to the same algebra (identical object or equal).
bool same_algebra(const AlgebraRef& a, const AlgebraRef& b);

/// An element of an effect algebra; 0 <= value <= u is checked on construction.
class Effect {
 public:
  Effect(AlgebraRef algebra, GroupValue value);

  const AlgebraRef& algebra() const { return algebra_; }
  const GroupValue& value() const { return value_; }

  friend bool operator==(const Effect& a, const Effect& b) {
    return same_algebra(a.algebra_, b.algebra_) && a.value_ == b.value_;
  }

 private:
  AlgebraRef algebra_;
  GroupValue value_;
};

/// a (+) b, empty when a + b is not below the unit.
std::optional<Effect> oplus(const Effect& a, const Effect& b);
/// b (-) a, empty unless a <= b.
std::optional<Effect> ominus(const Effect& b, const Effect& a);
/// a' = u - a.
Effect orthosupplement(const Effect& a);
/// a <= b in the derived order (which coincides with the group order).
bool leq(const Effect& a, const Effect& b);

}  // namespace wkit
