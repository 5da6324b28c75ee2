#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "wkit/rational.hpp"

namespace wkit {

using IntVector = std::vector<std::int64_t>;

inline constexpr std::size_t cone_max_generators = 8;
inline constexpr std::size_t cone_max_dim = 6;

/// Decides whether some x >= 0 satisfies A x = b, exactly.
/// Equalities are first used to substitute variables away (Gaussian
/// elimination); the remaining nonnegativity rows are then projected out
/// variable by variable with Fourier-Motzkin, pruning redundant rows by
/// Chernikov's rule.
bool nonnegative_solution_exists(const std::vector<std::vector<Rational>>& a, const std::vector<Rational>& b);

/// True iff v = sum_i l_i g_i for some rationals l_i >= 0.
/// Throws UnsupportedInstance beyond 8 generators or dimension 6.
bool cone_member(std::span<const Rational> v, const std::vector<IntVector>& generators);

/// True iff the cone has no line: no nonzero nonnegative combination of the
/// generators sums to zero.
bool cone_pointed(const std::vector<IntVector>& generators);

}  // namespace wkit
