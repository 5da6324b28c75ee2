#pragma once

#include <cstddef>
#include <vector>

#include "wkit/rational.hpp"

namespace wkit {

/// Dense square matrix of exact rationals, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(std::size_t dim) : dim_(dim), entries_(dim * dim) {}
  RationalMatrix(std::size_t dim, std::vector<Rational> entries);

  static RationalMatrix identity(std::size_t dim);
  static RationalMatrix diagonal(const std::vector<Rational>& diag);

  std::size_t dim() const { return dim_; }
  const std::vector<Rational>& entries() const { return entries_; }

  Rational& operator()(std::size_t i, std::size_t j) { return entries_[i * dim_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return entries_[i * dim_ + j]; }

  bool is_symmetric() const;
  RationalMatrix transposed() const;

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Rational> entries_;
};

/// Decides x^T m x >= 0 for all real x by exact pivoted LDL^T elimination:
/// a strictly positive diagonal entry is used as pivot and its rational Schur
/// complement is formed; a negative diagonal entry means "not PSD"; an all-zero
/// diagonal is PSD only if the remaining block is zero.
/// Throws ContractViolation for non-symmetric input.
bool psd_check(const RationalMatrix& m);

}  // namespace wkit
