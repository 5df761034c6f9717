#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <vector>

#include "spdpp/diagonal.hpp"
#include "spdpp/sample_set.hpp"
#include "spdpp/spectrum.hpp"

namespace spdpp {

inline constexpr std::uint64_t kEnumerationBudget = 2'000'000;
inline constexpr std::size_t kMaxDppEnumerationSize = 22;

// Explicit probability mass function over every subset in the support:
// all C(n, k) subsets for a k-DPP (colex order), or all 2^n subsets for a DPP
// (ordered by bitmask).
class EnumeratedPmf {
 public:
  std::size_t ground_size() const { return n_; }
  // Fixed size k, or -1 for a varying-size DPP.
  int fixed_size() const { return k_; }
  std::size_t size() const { return weights_.size(); }

  std::span<const std::size_t> subset(std::size_t i) const {
    return {members_.data() + offsets_[i], offsets_[i + 1] - offsets_[i]};
  }
  double weight(std::size_t i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }
  // Sum of unnormalised weights det(L_X) (k-DPP) or det(I + L) (DPP).
  double normalizer() const { return normalizer_; }

 private:
  friend EnumeratedPmf enumerate_kdpp(const LEnsemble&, int, std::uint64_t);
  friend EnumeratedPmf enumerate_dpp(const LEnsemble&);

  std::size_t n_ = 0;
  int k_ = -1;
  std::vector<std::size_t> members_;
  std::vector<std::size_t> offsets_{0};
  std::vector<double> weights_;
  double normalizer_ = 0.0;
};

// p(X) = det(L_X) / e_k(lambda) over |X| = k. Throws Error(budget) when
// C(n, k) exceeds `budget`.
EnumeratedPmf enumerate_kdpp(const LEnsemble& ensemble, int k,
                             std::uint64_t budget = kEnumerationBudget);

// p(X) = det(L_X) / det(I + L) over all subsets; n <= 22.
EnumeratedPmf enumerate_dpp(const LEnsemble& ensemble);

// Probabilities of all C(n, m) subsets of order m, indexed by colex rank.
class InclusionMeasure {
 public:
  InclusionMeasure(std::size_t ground_size, int order,
                   std::vector<double> values,
                   InclusionMethod method = InclusionMethod::exact);

  std::size_t ground_size() const { return n_; }
  int order() const { return m_; }
  InclusionMethod method() const { return method_; }
  std::span<const double> values() const { return values_; }
  double at(std::span<const std::size_t> alpha) const;
  double total() const;

 private:
  std::size_t n_;
  int m_;
  std::vector<double> values_;
  InclusionMethod method_;
};

// p(alpha) = sum over X containing alpha of p(X).
InclusionMeasure exact_inclusion(const EnumeratedPmf& pmf, int m);

// Evaluates fn on every order-m subset (colex) to build a measure.
InclusionMeasure tabulate_inclusion(
    std::size_t n, int m,
    const std::function<double(std::span<const std::size_t>)>& fn,
    InclusionMethod method);

// D_m = C(k, m)^{-1} sum_alpha |p(alpha) - q(alpha)|.
double tv_distance(const InclusionMeasure& p, const InclusionMeasure& q, int k);

struct McEstimate {
  double estimate = 0.0;
  double std_error = 0.0;  // sqrt(p (1 - p) / N)
};

using SetSampler = std::function<SampleSet()>;

McEstimate mc_inclusion(const SetSampler& sampler,
                        std::span<const std::size_t> alpha, std::size_t draws);

// One pass of `draws` samples shared by all subsets.
std::vector<McEstimate> mc_inclusion(
    const SetSampler& sampler,
    const std::vector<std::vector<std::size_t>>& alphas, std::size_t draws);

// CSV with header `subset,probability`; subsets hyphen-joined, one-based;
// probabilities with 17 significant digits.
void write_inclusion_csv(std::ostream& out, const InclusionMeasure& measure);

}  // namespace spdpp
