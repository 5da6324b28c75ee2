#include "wkit/linalg.hpp"

#include <numeric>

#include "wkit/error.hpp"

namespace wkit {

RationalMatrix::RationalMatrix(std::size_t dim, std::vector<Rational> entries)
    : dim_(dim), entries_(std::move(entries)) {
  if (entries_.size() != dim_ * dim_) throw DimensionMismatch("matrix entry count does not match dimension");
}

RationalMatrix RationalMatrix::identity(std::size_t dim) {
  RationalMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::diagonal(const std::vector<Rational>& diag) {
  RationalMatrix m(diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

bool RationalMatrix::is_symmetric() const {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = i + 1; j < dim_; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

RationalMatrix RationalMatrix::transposed() const {
  RationalMatrix t(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.dim_ != b.dim_) throw DimensionMismatch("matrix product of different dimensions");
  RationalMatrix c(a.dim_);
  for (std::size_t i = 0; i < a.dim_; ++i)
    for (std::size_t k = 0; k < a.dim_; ++k) {
      if (a(i, k) == 0) continue;
      for (std::size_t j = 0; j < a.dim_; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

bool psd_check(const RationalMatrix& m) {
  if (!m.is_symmetric()) throw ContractViolation("psd_check requires a symmetric matrix");

  RationalMatrix work = m;
  std::vector<std::size_t> live(m.dim());
  std::iota(live.begin(), live.end(), std::size_t{0});

  while (!live.empty()) {
    std::size_t pivot_slot = live.size();
    for (std::size_t s = 0; s < live.size(); ++s) {
      const Rational& d = work(live[s], live[s]);
      if (d < 0) return false;
      if (d > 0 && pivot_slot == live.size()) pivot_slot = s;
    }
    if (pivot_slot == live.size()) {
      // Zero diagonal: PSD forces every remaining entry to vanish.
      for (std::size_t i : live)
        for (std::size_t j : live)
          if (work(i, j) != 0) return false;
      return true;
    }

    const std::size_t p = live[pivot_slot];
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(pivot_slot));
    const Rational pivot = work(p, p);
    for (std::size_t i : live) {
      if (work(i, p) == 0) continue;
      const Rational factor = work(i, p) / pivot;
      for (std::size_t j : live) work(i, j) -= factor * work(p, j);
    }
  }
  return true;
}

}  // namespace wkit
