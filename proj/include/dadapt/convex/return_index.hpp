#pragma once

#include <cstddef>
#include <span>

namespace dadapt::convex {

/// t = argmin_{k <= n} d_{k+1} / sum_{i<=k} d_i over d_0..d_{n+1}.
/// Ties go to the largest k. Throws PreconditionError when fewer than two
/// values are given.
std::size_t select_return_index(std::span<const double> d_seq);

}  // namespace dadapt::convex
