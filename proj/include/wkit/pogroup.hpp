#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "wkit/cone.hpp"
#include "wkit/linalg.hpp"
#include "wkit/rational.hpp"

namespace wkit {

/// Concrete partially ordered abelian groups.
///   zvec    Z^k, componentwise order
///   qvec    Q^k, componentwise order
///   cone    Z^k ordered by a pointed, finitely generated rational cone
///   symmat  d x d rational symmetric matrices, Loewner order
enum class GroupKind { zvec, qvec, cone, symmat };

std::string_view to_string(GroupKind kind);
GroupKind parse_group_kind(std::string_view name);

/// An element of one of the groups above. Entries are exact rationals;
/// for zvec and cone they are integers, for symmat they form a symmetric
/// d x d matrix stored row-major.
class GroupValue {
 public:
  GroupValue(GroupKind kind, std::size_t dim, std::vector<Rational> entries);

  static GroupValue zero(GroupKind kind, std::size_t dim);
  static GroupValue from_matrix(const RationalMatrix& m);

  GroupKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  std::span<const Rational> entries() const { return entries_; }
  /// Matrix view; only for symmat values.
  RationalMatrix matrix() const;

  bool is_zero() const;

  GroupValue& operator+=(const GroupValue& other);
  GroupValue& operator-=(const GroupValue& other);
  friend GroupValue operator+(GroupValue a, const GroupValue& b) { return a += b; }
  friend GroupValue operator-(GroupValue a, const GroupValue& b) { return a -= b; }
  GroupValue operator-() const;

  /// Multiplication by a rational scalar. For zvec/cone the result must stay
  /// integral, otherwise ContractViolation.
  GroupValue scaled(const Rational& factor) const;

  friend bool operator==(const GroupValue&, const GroupValue&) = default;

  /// Throws DimensionMismatch unless both values live in the same carrier.
  void require_same_carrier(const GroupValue& other) const;

 private:
  GroupKind kind_;
  std::size_t dim_;
  std::vector<Rational> entries_;
};

/// Human-readable rendering: "(1/2, 1/3)" or "[[1, 0], [0, 1]]".
std::string to_string(const GroupValue& value);

/// Product of two symmat values (generally not symmetric unless they commute;
/// returned as a matrix for that reason).
RationalMatrix matrix_product(const GroupValue& a, const GroupValue& b);
bool commutes(const GroupValue& a, const GroupValue& b);

/// Which group, including the order. Cones are validated at construction:
/// generators are nonzero and the cone is pointed.
class GroupSpec {
 public:
  static GroupSpec zvec(std::size_t dim);
  static GroupSpec qvec(std::size_t dim);
  static GroupSpec symmat(std::size_t dim);
  static GroupSpec cone(std::size_t dim, std::vector<IntVector> generators);

  GroupKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  const std::vector<IntVector>& generators() const { return generators_; }
  /// qvec and symmat admit division by positive integers.
  bool divisible() const { return kind_ == GroupKind::qvec || kind_ == GroupKind::symmat; }

  GroupValue zero() const { return GroupValue::zero(kind_, dim_); }
  bool owns(const GroupValue& v) const { return v.kind() == kind_ && v.dim() == dim_; }
  /// Throws DimensionMismatch if `v` is not an element of this group.
  void require(const GroupValue& v) const;

  /// The group order: 0 <= v.
  bool is_positive(const GroupValue& v) const;
  bool leq(const GroupValue& x, const GroupValue& y) const;

  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;

 private:
  GroupSpec(GroupKind kind, std::size_t dim, std::vector<IntVector> generators);

  GroupKind kind_;
  std::size_t dim_;
  std::vector<IntVector> generators_;
};

}  // namespace wkit
