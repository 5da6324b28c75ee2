#include "wkit/pogroup.hpp"

#include <algorithm>

#include "wkit/error.hpp"

namespace wkit {

std::string_view to_string(GroupKind kind) {
  switch (kind) {
    case GroupKind::zvec: return "zvec";
    case GroupKind::qvec: return "qvec";
    case GroupKind::cone: return "cone";
    case GroupKind::symmat: return "symmat";
  }
  return "?";
}

GroupKind parse_group_kind(std::string_view name) {
  if (name == "zvec") return GroupKind::zvec;
  if (name == "qvec") return GroupKind::qvec;
  if (name == "cone") return GroupKind::cone;
  if (name == "symmat") return GroupKind::symmat;
  throw LoadError("unknown group kind '" + std::string(name) + "'");
}

namespace {

std::size_t entry_count(GroupKind kind, std::size_t dim) { return kind == GroupKind::symmat ? dim * dim : dim; }

bool integral_kind(GroupKind kind) { return kind == GroupKind::zvec || kind == GroupKind::cone; }

}  // namespace

GroupValue::GroupValue(GroupKind kind, std::size_t dim, std::vector<Rational> entries)
    : kind_(kind), dim_(dim), entries_(std::move(entries)) {
  if (dim_ == 0) throw ContractViolation("group dimension must be at least 1");
  if (entries_.size() != entry_count(kind_, dim_))
    throw DimensionMismatch("value has " + std::to_string(entries_.size()) + " entries, expected " +
                            std::to_string(entry_count(kind_, dim_)));
  for (auto& e : entries_) e.canonicalize();
  if (integral_kind(kind_) && !std::all_of(entries_.begin(), entries_.end(), is_integer))
    throw ContractViolation(std::string(to_string(kind_)) + " values must be integral");
  if (kind_ == GroupKind::symmat && !matrix().is_symmetric())
    throw ContractViolation("symmat value is not symmetric");
}

GroupValue GroupValue::zero(GroupKind kind, std::size_t dim) {
  return GroupValue(kind, dim, std::vector<Rational>(entry_count(kind, dim)));
}

GroupValue GroupValue::from_matrix(const RationalMatrix& m) {
  return GroupValue(GroupKind::symmat, m.dim(), m.entries());
}

RationalMatrix GroupValue::matrix() const {
  if (kind_ != GroupKind::symmat) throw ContractViolation("matrix view of a vector value");
  return RationalMatrix(dim_, entries_);
}

bool GroupValue::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Rational& e) { return e == 0; });
}

void GroupValue::require_same_carrier(const GroupValue& other) const {
  if (kind_ != other.kind_ || dim_ != other.dim_)
    throw DimensionMismatch("mixing " + std::string(to_string(kind_)) + "/" + std::to_string(dim_) + " with " +
                            std::string(to_string(other.kind_)) + "/" + std::to_string(other.dim_));
}

GroupValue& GroupValue::operator+=(const GroupValue& other) {
  require_same_carrier(other);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] += other.entries_[i];
  return *this;
}

GroupValue& GroupValue::operator-=(const GroupValue& other) {
  require_same_carrier(other);
  for (std::size_t i = 0; i < entries_.size(); ++i) entries_[i] -= other.entries_[i];
  return *this;
}

GroupValue GroupValue::operator-() const {
  GroupValue out = *this;
  for (auto& e : out.entries_) e = -e;
  return out;
}

GroupValue GroupValue::scaled(const Rational& factor) const {
  std::vector<Rational> out(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) out[i] = entries_[i] * factor;
  return GroupValue(kind_, dim_, std::move(out));
}

std::string to_string(const GroupValue& value) {
  const auto e = value.entries();
  std::string out;
  if (value.kind() == GroupKind::symmat) {
    out = "[";
    for (std::size_t i = 0; i < value.dim(); ++i) {
      out += i ? ", [" : "[";
      for (std::size_t j = 0; j < value.dim(); ++j) {
        if (j) out += ", ";
        out += format_rational(e[i * value.dim() + j]);
      }
      out += "]";
    }
    return out + "]";
  }
  out = "(";
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) out += ", ";
    out += format_rational(e[i]);
  }
  return out + ")";
}

RationalMatrix matrix_product(const GroupValue& a, const GroupValue& b) {
  a.require_same_carrier(b);
  return a.matrix() * b.matrix();
}

bool commutes(const GroupValue& a, const GroupValue& b) {
  return matrix_product(a, b) == matrix_product(b, a);
}

GroupSpec::GroupSpec(GroupKind kind, std::size_t dim, std::vector<IntVector> generators)
    : kind_(kind), dim_(dim), generators_(std::move(generators)) {
  if (dim_ == 0) throw ContractViolation("group dimension must be at least 1");
}

GroupSpec GroupSpec::zvec(std::size_t dim) { return GroupSpec(GroupKind::zvec, dim, {}); }
GroupSpec GroupSpec::qvec(std::size_t dim) { return GroupSpec(GroupKind::qvec, dim, {}); }
GroupSpec GroupSpec::symmat(std::size_t dim) { return GroupSpec(GroupKind::symmat, dim, {}); }

GroupSpec GroupSpec::cone(std::size_t dim, std::vector<IntVector> generators) {
  GroupSpec spec(GroupKind::cone, dim, std::move(generators));
  if (spec.generators_.empty()) throw ContractViolation("cone needs at least one generator");
  for (const auto& g : spec.generators_) {
    if (g.size() != dim) throw DimensionMismatch("cone generator has wrong dimension");
    if (std::all_of(g.begin(), g.end(), [](std::int64_t c) { return c == 0; }))
      throw ContractViolation("cone generators must be nonzero");
  }
  if (!cone_pointed(spec.generators_)) throw ContractViolation("cone is not pointed");
  return spec;
}

void GroupSpec::require(const GroupValue& v) const {
  if (!owns(v))
    throw DimensionMismatch("value of kind " + std::string(to_string(v.kind())) + "/" + std::to_string(v.dim()) +
                            " used in group " + std::string(to_string(kind_)) + "/" + std::to_string(dim_));
}

bool GroupSpec::is_positive(const GroupValue& v) const {
  require(v);
  const auto e = v.entries();
  switch (kind_) {
    case GroupKind::zvec:
    case GroupKind::qvec:
      return std::all_of(e.begin(), e.end(), [](const Rational& c) { return c >= 0; });
    case GroupKind::cone:
      return v.is_zero() || cone_member(e, generators_);
    case GroupKind::symmat:
      return psd_check(v.matrix());
  }
  return false;
}

bool GroupSpec::leq(const GroupValue& x, const GroupValue& y) const {
  require(x);
  require(y);
  if (kind_ == GroupKind::zvec || kind_ == GroupKind::qvec) {
    const auto a = x.entries();
    const auto b = y.entries();
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] > b[i]) return false;
    return true;
  }
  return is_positive(y - x);
}

}  // namespace wkit
