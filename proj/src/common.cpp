#include <algorithm>
#include <cmath>
#include <string>

#include "spdpp/combinatorics.hpp"
#include "spdpp/error.hpp"
#include "spdpp/rng.hpp"
#include "spdpp/sample_set.hpp"

namespace spdpp {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::input: return "input error";
    case ErrorCode::not_psd: return "matrix not positive semidefinite";
    case ErrorCode::numerical: return "numerical error";
    case ErrorCode::infeasible: return "infeasible";
    case ErrorCode::convergence: return "convergence failure";
    case ErrorCode::degenerate: return "degenerate spectrum";
    case ErrorCode::budget: return "enumeration budget exceeded";
    case ErrorCode::io: return "i/o error";
  }
  return "unknown error";
}

// --- Rng -------------------------------------------------------------------

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Rng::Rng(std::uint64_t seed) : seed_(seed) {
  std::uint64_t state = seed;
  for (auto& word : s_) {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    word = z ^ (z >> 31);
  }
}

Rng Rng::stream(std::uint64_t seed, Stream purpose) {
  return Rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(purpose))));
}

Rng Rng::split(std::uint64_t index) const {
  return Rng(splitmix64(seed_ ^ splitmix64(0x5eed0000ULL + index)));
}

namespace {
inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}
}  // namespace

Rng::result_type Rng::operator()() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
}

// --- SampleSet -------------------------------------------------------------

SampleSet::SampleSet(std::vector<std::size_t> indices, std::size_t ground_size)
    : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
    throw Error(ErrorCode::input, "sample set has duplicate indices");
  if (!indices_.empty() && indices_.back() >= ground_size)
    throw Error(ErrorCode::input, "sample set index out of range");
}

bool SampleSet::contains(std::size_t i) const {
  return std::binary_search(indices_.begin(), indices_.end(), i);
}

bool SampleSet::contains_all(std::span<const std::size_t> alpha) const {
  return std::all_of(alpha.begin(), alpha.end(),
                     [this](std::size_t i) { return contains(i); });
}

// --- combinatorics ---------------------------------------------------------

double binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double out = 1.0;
  for (std::size_t i = 1; i <= k; ++i)
    out = out * static_cast<double>(n - k + i) / static_cast<double>(i);
  return out < 9.0e15 ? std::round(out) : out;
}

__extension__ using uint128 = unsigned __int128;

std::uint64_t binomial_u64(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  uint128 out = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    out = out * (n - k + i) / i;
    if (out > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(out);
}

std::uint64_t colex_rank(std::span<const std::size_t> sorted_subset) {
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < sorted_subset.size(); ++i)
    rank += binomial_u64(sorted_subset[i], i + 1);
  return rank;
}

std::vector<std::size_t> colex_unrank(std::uint64_t rank, std::size_t k) {
  std::vector<std::size_t> subset(k);
  for (std::size_t i = k; i > 0; --i) {
    std::size_t c = i - 1;
    while (binomial_u64(c + 1, i) <= rank) ++c;
    subset[i - 1] = c;
    rank -= binomial_u64(c, i);
  }
  return subset;
}

bool next_colex(std::span<std::size_t> subset, std::size_t n) {
  const std::size_t k = subset.size();
  for (std::size_t j = 0; j < k; ++j) {
    const std::size_t limit = (j + 1 < k) ? subset[j + 1] : n;
    if (subset[j] + 1 < limit) {
      ++subset[j];
      for (std::size_t i = 0; i < j; ++i) subset[i] = i;
      return true;
    }
  }
  return false;
}

std::vector<std::size_t> checked_subset(std::span<const std::size_t> alpha,
                                        std::size_t n) {
  std::vector<std::size_t> sorted(alpha.begin(), alpha.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(ErrorCode::input, "subset has repeated indices");
  if (!sorted.empty() && sorted.back() >= n)
    throw Error(ErrorCode::input,
                "subset index " + std::to_string(sorted.back()) +
                    " out of range for n = " + std::to_string(n));
  return sorted;
}

}  // namespace spdpp
