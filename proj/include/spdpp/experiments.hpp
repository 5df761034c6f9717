#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "spdpp/inference.hpp"
#include "spdpp/oracle.hpp"
#include "spdpp/spectrum.hpp"

namespace spdpp {

enum class SpectrumKind {
  linear,          // lambda_i = i
  exp_decay,       // lambda_i = e^{-i}
  exp_decay10,     // lambda_i = e^{-i/10}
  flat,            // lambda_i = 1
  uniform,         // iid uniform(lo, hi)
  from_file,       // one eigenvalue per line
  gaussian_cloud,  // squared-exponential kernel on iid N(0, I_2) points
};

struct SpectrumSpec {
  SpectrumKind kind = SpectrumKind::linear;
  double lo = 1.0;
  double hi = 10.0;
  std::string path;
};

// Accepts linear, exp_decay, exp_decay10, flat, uniform, uniform:LO:HI,
// gaussian_cloud and from_file:PATH.
SpectrumSpec parse_spectrum_spec(std::string_view text);
std::string to_string(const SpectrumSpec& spec);

inline constexpr std::size_t kCloudDimension = 2;

// n points with iid standard normal coordinates drawn from `rng`.
PointCloud gaussian_cloud(std::size_t n, std::size_t dimension, Rng& rng);

// n x k matrix with orthonormal columns, Haar distributed.
Eigen::MatrixXd random_orthonormal(std::size_t n, std::size_t k, Rng& rng);

// Builds the spectrum of size n (ignored for from_file). Random kinds draw
// from streams derived from `seed`; gaussian_cloud uses bandwidth tau and
// keeps only the effective spectrum (values below the rank tolerance are 0).
Spectrum make_spectrum(const SpectrumSpec& spec, std::size_t n,
                       std::uint64_t seed, double tau = 1.0);

struct EspComparisonRow {
  int k = 0;
  double log_exact = 0.0;
  double log_saddle = 0.0;
  double ratio = 0.0;  // exp(log_saddle - log_exact)
  bool feasible = false;  // k below the number of positive eigenvalues
  bool overflowed = false;  // unguarded recurrence not finite at k
};

struct EspComparison {
  std::vector<EspComparisonRow> rows;  // k = 1..n-1
  std::optional<int> first_overflow;
};

EspComparison compare_esp(const Spectrum& spectrum);

struct RateRow {
  std::size_t n = 0;
  int k = 0;
  double error_basic = 0.0;      // max_i |pi_i - p_i|, averaged over repeats
  double error_corrected = 0.0;
};

struct RateStudy {
  std::vector<RateRow> rows;
  double slope_basic = 0.0;
  double slope_corrected = 0.0;
};

// Diagonal k-DPPs with uniform(lo, hi) spectra and k = n / k_divisor.
RateStudy convergence_rates(const std::vector<std::size_t>& ns,
                            std::size_t repeats, std::uint64_t seed,
                            double lo = 1.0, double hi = 10.0,
                            std::size_t k_divisor = 5);

// Ordinary least squares slope of log(y) on log(x).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

struct SubsetInclusionRow {
  std::vector<std::size_t> subset;
  double reference = 0.0;
  double reference_se = 0.0;  // 0 for enumeration
  double basic = 0.0;
  double corrected = 0.0;
};

struct SubsetInclusionStudy {
  std::vector<SubsetInclusionRow> rows;
  InclusionMethod reference_method = InclusionMethod::exact;
  std::size_t draws = 0;  // Monte Carlo draws, 0 for enumeration
};

// Reference probabilities come from enumeration when C(n, k) fits the
// budget, otherwise from `draws` exact-rule samples on the eigen_step and
// projection_step streams of `seed`.
SubsetInclusionStudy subset_inclusion_study(
    const LEnsemble& ensemble, int k,
    const std::vector<std::vector<std::size_t>>& subsets, std::size_t draws,
    std::uint64_t seed);

// `count` distinct random subsets of size m (each sorted), from the subsets
// stream of `seed`.
std::vector<std::vector<std::size_t>> random_subsets(std::size_t n,
                                                     std::size_t m,
                                                     std::size_t count,
                                                     std::uint64_t seed);

struct TvRow {
  std::size_t n = 0;
  int k = 0;
  double mean_distance = 0.0;
};

// D_1 between the enumerated k-DPP and its matched DPP, for L = Q diag(lambda)
// Q^T with uniform(lo, hi) eigenvalues and a Haar basis Q; k = n / k_divisor.
std::vector<TvRow> tv_trend(const std::vector<std::size_t>& ns,
                            std::size_t repeats, std::uint64_t seed,
                            double lo = 1.0, double hi = 10.0,
                            std::size_t k_divisor = 4);

struct InferenceStudy {
  PointCloud cloud;
  SampleSet observed;
  LikelihoodCurve curve;
};

// Self-consistency run: cloud of n points, one k-DPP draw at tau_true, both
// likelihood curves over a log grid.
InferenceStudy inference_study(std::size_t n, int k, double tau_true,
                               const std::vector<double>& grid,
                               std::uint64_t seed);

}  // namespace spdpp
