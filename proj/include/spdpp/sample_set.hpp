#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace spdpp {

// A realisation of a (k-)DPP: sorted, distinct, zero-based item indices.
class SampleSet {
 public:
  SampleSet() = default;
  // Sorts the indices; throws Error(input) on duplicates or out-of-range.
  SampleSet(std::vector<std::size_t> indices, std::size_t ground_size);

  std::span<const std::size_t> indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool empty() const { return indices_.empty(); }
  bool contains(std::size_t i) const;
  // True when every index of alpha is a member.
  bool contains_all(std::span<const std::size_t> alpha) const;

  friend bool operator==(const SampleSet&, const SampleSet&) = default;

 private:
  std::vector<std::size_t> indices_;
};

}  // namespace spdpp
