#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>

namespace wkit {

/// A finite subset of an indexed ground set, stored as a bitmask.
/// Bit i stands for the ground element with index i.
class FinSubset {
 public:
  static constexpr std::size_t max_ground = 16;

  constexpr FinSubset() = default;
  constexpr explicit FinSubset(std::uint32_t mask) : mask_(mask) {}

  static constexpr FinSubset empty() { return FinSubset{}; }
  static constexpr FinSubset singleton(std::size_t i) { return FinSubset{std::uint32_t{1} << i}; }
  /// The whole ground set {0, ..., n-1}.
  static constexpr FinSubset full(std::size_t n) { return FinSubset{(std::uint32_t{1} << n) - 1}; }

  constexpr std::uint32_t mask() const { return mask_; }
  constexpr std::size_t size() const { return static_cast<std::size_t>(std::popcount(mask_)); }
  constexpr bool is_empty() const { return mask_ == 0; }
  constexpr bool contains(std::size_t i) const { return (mask_ >> i) & 1U; }
  constexpr bool subset_of(FinSubset other) const { return (mask_ & ~other.mask_) == 0; }
  constexpr bool disjoint(FinSubset other) const { return (mask_ & other.mask_) == 0; }

  constexpr FinSubset with(std::size_t i) const { return FinSubset{mask_ | (std::uint32_t{1} << i)}; }
  constexpr FinSubset without(std::size_t i) const { return FinSubset{mask_ & ~(std::uint32_t{1} << i)}; }

  friend constexpr FinSubset operator|(FinSubset a, FinSubset b) { return FinSubset{a.mask_ | b.mask_}; }
  friend constexpr FinSubset operator&(FinSubset a, FinSubset b) { return FinSubset{a.mask_ & b.mask_}; }
  friend constexpr FinSubset operator-(FinSubset a, FinSubset b) { return FinSubset{a.mask_ & ~b.mask_}; }
  friend constexpr bool operator==(FinSubset, FinSubset) = default;
  friend constexpr auto operator<=>(FinSubset, FinSubset) = default;

  /// Visits every Z with *this ⊆ Z ⊆ upper, in increasing mask order.
  /// Requires *this ⊆ upper.
  template <typename Fn>
  void for_each_between(FinSubset upper, Fn&& fn) const {
    const std::uint32_t free = upper.mask_ & ~mask_;
    std::uint32_t sub = 0;
    while (true) {
      fn(FinSubset{mask_ | sub});
      if (sub == free) break;
      sub = (sub - free) & free;
    }
  }

  /// Visits every subset of *this in increasing mask order.
  template <typename Fn>
  void for_each_subset(Fn&& fn) const {
    FinSubset{}.for_each_between(*this, std::forward<Fn>(fn));
  }

 private:
  std::uint32_t mask_ = 0;
};

/// Removes bit `i` and shifts higher bits down by one.
constexpr FinSubset drop_index(FinSubset s, std::size_t i) {
  const std::uint32_t m = s.mask();
  const std::uint32_t low = m & ((std::uint32_t{1} << i) - 1);
  const std::uint32_t high = (m >> (i + 1)) << i;
  return FinSubset{low | high};
}

/// Inverse of drop_index: opens a zero bit at position `i`.
constexpr FinSubset insert_index(FinSubset s, std::size_t i) {
  const std::uint32_t m = s.mask();
  const std::uint32_t low = m & ((std::uint32_t{1} << i) - 1);
  const std::uint32_t high = (m >> i) << (i + 1);
  return FinSubset{low | high};
}

}  // namespace wkit
