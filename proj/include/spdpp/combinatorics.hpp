#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace spdpp {

// C(n, k) in floating point (exact for results below 2^53).
double binomial(std::size_t n, std::size_t k);

// C(n, k) as an integer, saturating at UINT64_MAX.
std::uint64_t binomial_u64(std::size_t n, std::size_t k);

// Position of a sorted k-subset in colexicographic order: sum_i C(c_i, i+1).
std::uint64_t colex_rank(std::span<const std::size_t> sorted_subset);

// Inverse of colex_rank for subsets of size k.
std::vector<std::size_t> colex_unrank(std::uint64_t rank, std::size_t k);

// Advances a sorted k-subset of {0..n-1} to its colex successor. Returns false
// after the last subset. The first subset is {0, 1, ..., k-1}.
bool next_colex(std::span<std::size_t> subset, std::size_t n);

// Validates that alpha holds distinct indices below n; returns a sorted copy.
std::vector<std::size_t> checked_subset(std::span<const std::size_t> alpha,
                                        std::size_t n);

}  // namespace spdpp
