#include "spdpp/diagonal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spdpp/combinatorics.hpp"
#include "spdpp/detail/numeric.hpp"
#include "spdpp/error.hpp"

namespace spdpp {

using detail::ScaledReal;

namespace {

void require_size(const Spectrum& spectrum, int k) {
  if (k < 0 || static_cast<std::size_t>(k) > spectrum.size())
    throw Error(ErrorCode::input, "k = " + std::to_string(k) +
                                      " outside [0, n] for n = " +
                                      std::to_string(spectrum.size()));
  if (static_cast<std::size_t>(k) > spectrum.positive_count())
    throw Error(ErrorCode::infeasible,
                "k = " + std::to_string(k) + " exceeds the " +
                    std::to_string(spectrum.positive_count()) +
                    " positive eigenvalues");
}

// table[i * (k+1) + j] = e_j of the first i values (prefix) of `scaled`.
std::vector<ScaledReal> prefix_table(std::span<const double> scaled,
                                     std::size_t k) {
  const std::size_t n = scaled.size();
  const std::size_t w = k + 1;
  std::vector<ScaledReal> table((n + 1) * w);
  table[0] = ScaledReal::one();
  for (std::size_t i = 0; i < n; ++i) {
    const ScaledReal x(scaled[i]);
    const ScaledReal* prev = &table[i * w];
    ScaledReal* cur = &table[(i + 1) * w];
    cur[0] = prev[0];
    for (std::size_t j = 1; j <= k; ++j) cur[j] = prev[j] + x * prev[j - 1];
  }
  return table;
}

// table[t * (k+1) + j] = e_j of values t..n-1.
std::vector<ScaledReal> suffix_table(std::span<const double> scaled,
                                     std::size_t k) {
  const std::size_t n = scaled.size();
  const std::size_t w = k + 1;
  std::vector<ScaledReal> table((n + 1) * w);
  table[n * w] = ScaledReal::one();
  for (std::size_t t = n; t-- > 0;) {
    const ScaledReal x(scaled[t]);
    const ScaledReal* next = &table[(t + 1) * w];
    ScaledReal* cur = &table[t * w];
    cur[0] = next[0];
    for (std::size_t j = 1; j <= k; ++j) cur[j] = next[j] + x * next[j - 1];
  }
  return table;
}

std::vector<double> rescaled(const Spectrum& spectrum) {
  const double top = spectrum.max();
  std::vector<double> out(spectrum.values().begin(), spectrum.values().end());
  if (top > 0.0)
    for (double& v : out) v /= top;
  return out;
}

}  // namespace

double inclusion_exact(const Spectrum& spectrum, int k,
                       std::span<const std::size_t> alpha) {
  const auto sorted = checked_subset(alpha, spectrum.size());
  const int m = static_cast<int>(sorted.size());
  require_size(spectrum, k);
  if (m > k)
    throw Error(ErrorCode::input, "subset order exceeds k");

  double log_numerator = 0.0;
  for (std::size_t i : sorted) {
    if (spectrum[i] <= 0.0) return 0.0;
    log_numerator += std::log(spectrum[i]);
  }
  const Spectrum rest = spectrum.without(sorted);
  if (static_cast<std::size_t>(k - m) > rest.positive_count()) return 0.0;

  const LogEspTable full = esp_exact(spectrum);
  const LogEspTable reduced = esp_exact(rest);
  const double p = std::exp(log_numerator + reduced[k - m] - full[k]);
  return std::min(p, 1.0);
}

DiagonalInclusion first_order_exact(const Spectrum& spectrum, int k) {
  require_size(spectrum, k);
  const std::size_t n = spectrum.size();
  DiagonalInclusion out;
  out.method = InclusionMethod::exact;
  out.probabilities.assign(n, 0.0);
  if (k == 0) return out;

  const auto kk = static_cast<std::size_t>(k);
  const std::size_t w = kk + 1;
  const std::vector<double> x = rescaled(spectrum);
  const auto prefix = prefix_table(x, kk);
  const auto suffix = suffix_table(x, kk);
  const ScaledReal total = prefix[n * w + kk];

  for (std::size_t i = 0; i < n; ++i) {
    if (x[i] <= 0.0) continue;
    // e_{k-1}(lambda_{-i}) = sum_j e_j(prefix before i) e_{k-1-j}(suffix after i)
    ScaledReal without_i;
    for (std::size_t j = 0; j < kk; ++j)
      without_i += prefix[i * w + j] * suffix[(i + 1) * w + (kk - 1 - j)];
    out.probabilities[i] =
        std::min(1.0, ratio(ScaledReal(x[i]) * without_i, total));
  }
  return out;
}

DiagonalInclusion inclusion_basic(const Spectrum& spectrum, int k) {
  return inclusion_basic(spectrum, solve_saddlepoint(spectrum, k));
}

DiagonalInclusion inclusion_basic(const Spectrum& spectrum,
                                  const SaddlepointSolution& saddle) {
  DiagonalInclusion out;
  out.method = InclusionMethod::basic;
  out.probabilities.reserve(spectrum.size());
  for (double lambda : spectrum.values())
    out.probabilities.push_back(
        lambda > 0.0 ? detail::sigmoid(std::log(lambda) + saddle.nu_star) : 0.0);
  return out;
}

CorrectedInclusion inclusion_corrected(const Spectrum& spectrum, int k,
                                       std::span<const std::size_t> alpha) {
  const auto sorted = checked_subset(alpha, spectrum.size());
  if (static_cast<int>(sorted.size()) > k)
    throw Error(ErrorCode::input, "subset order exceeds k");
  return inclusion_corrected(spectrum, solve_saddlepoint(spectrum, k), sorted);
}

CorrectedInclusion inclusion_corrected(const Spectrum& spectrum,
                                       const SaddlepointSolution& saddle,
                                       std::span<const std::size_t> alpha) {
  const auto sorted = checked_subset(alpha, spectrum.size());
  const double n = static_cast<double>(spectrum.size());
  const double m = static_cast<double>(sorted.size());

  CorrectedInclusion out;
  CorrectionTerms& c = out.terms;
  c.psibar2 = saddle.psi2 / n;
  c.psibar3 = saddle.psi3 / n;
  if (!(c.psibar2 > 0.0))
    throw Error(ErrorCode::degenerate,
                "psi'' vanishes at the saddlepoint; no correction available");
  if (sorted.empty()) {
    out.probability = 1.0;
    return out;
  }

  double product = 1.0;
  double sum_s = 0.0;   // psi'_alpha
  double sum_q = 0.0;   // m - psi'_alpha, kept separately for accuracy
  double sum_sq = 0.0;  // psi''_alpha
  for (std::size_t i : sorted) {
    const double lambda = spectrum[i];
    double s = 0.0;
    double q = 1.0;
    if (lambda > 0.0) {
      const double t = std::log(lambda) + saddle.nu_star;
      s = detail::sigmoid(t);
      q = detail::sigmoid(-t);
    }
    product *= s;
    sum_s += s;
    sum_q += q;
    sum_sq += s * q;
  }
  c.psibar_alpha1 = sum_s / m;
  c.psibar_alpha2 = sum_sq / m;
  c.nu1 = -sum_q / c.psibar2;
  c.g = -0.5 * c.nu1 * c.nu1 * c.psibar2 -
        (c.psibar3 * c.nu1 - m * c.psibar_alpha2) / (2.0 * c.psibar2);
  out.probability = product * (1.0 + c.g / n);
  return out;
}

DiagonalInclusion inclusion_corrected_all(const Spectrum& spectrum, int k) {
  return inclusion_corrected_all(spectrum, solve_saddlepoint(spectrum, k));
}

DiagonalInclusion inclusion_corrected_all(const Spectrum& spectrum,
                                          const SaddlepointSolution& saddle) {
  DiagonalInclusion out;
  out.method = InclusionMethod::corrected;
  out.probabilities.resize(spectrum.size());
  for (std::size_t i = 0; i < spectrum.size(); ++i) {
    const std::size_t alpha[1] = {i};
    const double p = inclusion_corrected(spectrum, saddle, alpha).probability;
    out.probabilities[i] = std::clamp(p, 0.0, 1.0);
  }
  return out;
}

// --- sampler ---------------------------------------------------------------

DiagonalKdppSampler::DiagonalKdppSampler(Spectrum spectrum, int k,
                                         ConditionalRule rule)
    : spectrum_(std::move(spectrum)), k_(k), rule_(rule) {
  require_size(spectrum_, k_);
  const std::size_t n = spectrum_.size();
  if (rule_ == ConditionalRule::automatic)
    rule_ = n <= kExactConditionalLimit ? ConditionalRule::exact
                                        : ConditionalRule::corrected;

  positive_from_.assign(n + 1, 0);
  for (std::size_t t = n; t-- > 0;)
    positive_from_[t] = positive_from_[t + 1] + (spectrum_[t] > 0.0 ? 1 : 0);

  if (rule_ == ConditionalRule::exact && k_ > 0)
    suffix_ = suffix_table(rescaled(spectrum_), static_cast<std::size_t>(k_));
}

double DiagonalKdppSampler::conditional_exact(std::size_t t,
                                              int remaining) const {
  const std::size_t w = static_cast<std::size_t>(k_) + 1;
  const auto r = static_cast<std::size_t>(remaining);
  const double x = spectrum_[t] / spectrum_.max();
  return std::clamp(ratio(ScaledReal(x) * suffix_[(t + 1) * w + r - 1],
                          suffix_[t * w + r]),
                    0.0, 1.0);
}

double DiagonalKdppSampler::conditional_corrected(std::size_t t, int remaining,
                                                  double& warm_nu) const {
  const Spectrum rest = spectrum_.suffix(t);
  const SaddlepointSolution saddle =
      solve_saddlepoint(rest, remaining,
                        std::isfinite(warm_nu) ? std::optional<double>(warm_nu)
                                               : std::nullopt);
  warm_nu = saddle.nu_star;
  const std::size_t first[1] = {0};
  return std::clamp(inclusion_corrected(rest, saddle, first).probability, 0.0,
                    1.0);
}

SampleSet DiagonalKdppSampler::sample(Rng& rng) const {
  const std::size_t n = spectrum_.size();
  std::vector<std::size_t> chosen;
  chosen.reserve(static_cast<std::size_t>(k_));
  double warm_nu = std::numeric_limits<double>::quiet_NaN();

  for (std::size_t t = 0; t < n && chosen.size() < static_cast<std::size_t>(k_);
       ++t) {
    if (spectrum_[t] <= 0.0) continue;
    const int remaining = k_ - static_cast<int>(chosen.size());
    double p = 1.0;
    // Every remaining positive item is needed: take it without a draw.
    if (static_cast<std::size_t>(remaining) < positive_from_[t]) {
      p = rule_ == ConditionalRule::exact
              ? conditional_exact(t, remaining)
              : conditional_corrected(t, remaining, warm_nu);
    }
    if (p >= 1.0 || rng.uniform() < p) chosen.push_back(t);
  }
  if (chosen.size() != static_cast<std::size_t>(k_))
    throw Error(ErrorCode::numerical, "diagonal sampler ended with " +
                                          std::to_string(chosen.size()) +
                                          " items instead of k");
  return SampleSet(std::move(chosen), n);
}

SampleSet sample_diagonal_kdpp(const Spectrum& spectrum, int k, Rng& rng,
                               ConditionalRule rule) {
  return DiagonalKdppSampler(spectrum, k, rule).sample(rng);
}

}  // namespace spdpp
