#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spdpp/detail/scaled_real.hpp"
#include "spdpp/esp.hpp"
#include "spdpp/rng.hpp"
#include "spdpp/sample_set.hpp"
#include "spdpp/spectrum.hpp"

namespace spdpp {

enum class InclusionMethod { exact, basic, corrected, empirical };

// First-order inclusion probabilities of every item.
struct DiagonalInclusion {
  int order = 1;
  std::vector<double> probabilities;
  InclusionMethod method = InclusionMethod::exact;
};

// p(alpha in Y) = prod_{i in alpha} lambda_i * e_{k-m}(lambda_{-alpha}) / e_k(lambda)
// for a diagonal k-DPP. Returns 0 when alpha contains a zero eigenvalue or
// when the remaining spectrum cannot supply k - m items.
double inclusion_exact(const Spectrum& spectrum, int k,
                       std::span<const std::size_t> alpha);

// inclusion_exact for every singleton, in O(n k) via prefix and suffix ESP
// tables.
DiagonalInclusion first_order_exact(const Spectrum& spectrum, int k);

// pi_i = lambda_i e^nu* / (1 + lambda_i e^nu*): the matched diagonal DPP.
DiagonalInclusion inclusion_basic(const Spectrum& spectrum, int k);
DiagonalInclusion inclusion_basic(const Spectrum& spectrum,
                                  const SaddlepointSolution& saddle);

// Terms of the 1/n correction. Barred quantities are per-item averages:
// psibar = psi / n over the whole spectrum, psibar_alpha = psi_alpha / m.
struct CorrectionTerms {
  double nu1 = 0.0;  // psibar2 * nu1 = -m (1 - psibar_alpha1)
  double g = 0.0;
  double psibar2 = 0.0;
  double psibar3 = 0.0;
  double psibar_alpha1 = 0.0;
  double psibar_alpha2 = 0.0;
};

struct CorrectedInclusion {
  double probability = 0.0;
  CorrectionTerms terms;
};

// prod_{i in alpha} s_i * (1 + g / n), with
//   g = -(nu1^2 / 2) psibar2 - (psibar3 nu1 - m psibar_alpha2) / (2 psibar2).
// Not clamped. Throws Error(degenerate) when psibar2 vanishes.
CorrectedInclusion inclusion_corrected(const Spectrum& spectrum, int k,
                                       std::span<const std::size_t> alpha);
CorrectedInclusion inclusion_corrected(const Spectrum& spectrum,
                                       const SaddlepointSolution& saddle,
                                       std::span<const std::size_t> alpha);

// Corrected singleton probabilities for every item, clamped to [0, 1].
DiagonalInclusion inclusion_corrected_all(const Spectrum& spectrum, int k);
DiagonalInclusion inclusion_corrected_all(const Spectrum& spectrum,
                                          const SaddlepointSolution& saddle);

// How the sampler evaluates p(z_t = 1 | z_1..z_{t-1}).
enum class ConditionalRule {
  automatic,  // exact for n <= 64, corrected otherwise
  exact,      // ESP ratios
  corrected,  // saddlepoint with the 1/n correction
};

inline constexpr std::size_t kExactConditionalLimit = 64;

// Sequential sampler for a diagonal k-DPP: item t is included with its
// inclusion probability in the (k - s)-DPP over lambda_t..lambda_n, where s
// items were already taken. Samples always have exactly k items.
class DiagonalKdppSampler {
 public:
  // Throws Error(infeasible) when fewer than k eigenvalues are positive.
  DiagonalKdppSampler(Spectrum spectrum, int k,
                      ConditionalRule rule = ConditionalRule::automatic);

  SampleSet sample(Rng& rng) const;

  int k() const { return k_; }
  ConditionalRule rule() const { return rule_; }

 private:
  double conditional_exact(std::size_t t, int remaining) const;
  double conditional_corrected(std::size_t t, int remaining,
                               double& warm_nu) const;

  Spectrum spectrum_;
  int k_;
  ConditionalRule rule_;
  std::vector<std::size_t> positive_from_;  // positives among items t..n-1
  // suffix_[t * (k+1) + j] = e_j(lambda_t..lambda_{n-1}), exact rule only.
  std::vector<detail::ScaledReal> suffix_;
};

SampleSet sample_diagonal_kdpp(const Spectrum& spectrum, int k, Rng& rng,
                               ConditionalRule rule = ConditionalRule::automatic);

}  // namespace spdpp
