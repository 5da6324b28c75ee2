#include "wkit/effect.hpp"

#include "wkit/error.hpp"

namespace wkit {

EffectAlgebra::EffectAlgebra(GroupSpec group, GroupValue unit) : group_(std::move(group)), unit_(std::move(unit)) {
  group_.require(unit_);
  if (unit_.is_zero()) throw ContractViolation("effect algebra unit must be nonzero");
  if (!group_.is_positive(unit_)) throw ContractViolation("effect algebra unit must be positive");
}

bool EffectAlgebra::is_effect(const GroupValue& x) const {
  return group_.is_positive(x) && group_.leq(x, unit_);
}

bool same_algebra(const AlgebraRef& a, const AlgebraRef& b) {
  if (!a || !b) return a == b;
  return a == b || *a == *b;
}

Effect::Effect(AlgebraRef algebra, GroupValue value) : algebra_(std::move(algebra)), value_(std::move(value)) {
  if (!algebra_) throw ContractViolation("effect without an algebra");
  if (!algebra_->is_effect(value_)) throw ContractViolation("value " + to_string(value_) + " is not in [0, u]");
}

namespace {

void require_same(const Effect& a, const Effect& b) {
  if (!same_algebra(a.algebra(), b.algebra())) throw AlgebraMismatch("effects belong to different algebras");
}

}  // namespace

std::optional<Effect> oplus(const Effect& a, const Effect& b) {
  require_same(a, b);
  GroupValue sum = a.value() + b.value();
  if (!a.algebra()->leq(sum, a.algebra()->unit())) return std::nullopt;
  return Effect(a.algebra(), std::move(sum));
}

std::optional<Effect> ominus(const Effect& b, const Effect& a) {
  require_same(a, b);
  if (!a.algebra()->leq(a.value(), b.value())) return std::nullopt;
  return Effect(b.algebra(), b.value() - a.value());
}

Effect orthosupplement(const Effect& a) { return Effect(a.algebra(), a.algebra()->unit() - a.value()); }

bool leq(const Effect& a, const Effect& b) {
  require_same(a, b);
  return a.algebra()->leq(a.value(), b.value());
}

}  // namespace wkit
