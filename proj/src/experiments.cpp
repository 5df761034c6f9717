#include "spdpp/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "spdpp/combinatorics.hpp"
#include "spdpp/diagonal.hpp"
#include "spdpp/error.hpp"
#include "spdpp/esp.hpp"
#include "spdpp/io.hpp"
#include "spdpp/kdpp.hpp"

namespace spdpp {

namespace {

double parse_number(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size())
    throw Error(ErrorCode::input,
                "cannot parse " + std::string(what) + " '" + std::string(text) + "'");
  return value;
}

std::vector<double> uniform_values(std::size_t n, double lo, double hi, Rng& rng) {
  std::vector<double> out(n);
  for (double& x : out) x = lo + (hi - lo) * rng.uniform();
  return out;
}

}  // namespace

SpectrumSpec parse_spectrum_spec(std::string_view text) {
  SpectrumSpec spec;
  if (text == "linear") {
    spec.kind = SpectrumKind::linear;
  } else if (text == "exp_decay") {
    spec.kind = SpectrumKind::exp_decay;
  } else if (text == "exp_decay10") {
    spec.kind = SpectrumKind::exp_decay10;
  } else if (text == "flat") {
    spec.kind = SpectrumKind::flat;
  } else if (text == "gaussian_cloud") {
    spec.kind = SpectrumKind::gaussian_cloud;
  } else if (text == "uniform") {
    spec.kind = SpectrumKind::uniform;
  } else if (text.starts_with("uniform:")) {
    spec.kind = SpectrumKind::uniform;
    const auto rest = text.substr(8);
    const auto colon = rest.find(':');
    if (colon == std::string_view::npos)
      throw Error(ErrorCode::input, "expected uniform:LO:HI");
    spec.lo = parse_number(rest.substr(0, colon), "uniform lower bound");
    spec.hi = parse_number(rest.substr(colon + 1), "uniform upper bound");
    if (!(spec.lo >= 0.0) || !(spec.hi >= spec.lo) || !std::isfinite(spec.hi))
      throw Error(ErrorCode::input, "uniform bounds need 0 <= LO <= HI");
  } else if (text.starts_with("from_file:")) {
    spec.kind = SpectrumKind::from_file;
    spec.path = std::string(text.substr(10));
    if (spec.path.empty()) throw Error(ErrorCode::input, "from_file needs a path");
  } else {
    throw Error(ErrorCode::input, "unknown spectrum '" + std::string(text) + "'");
  }
  return spec;
}

std::string to_string(const SpectrumSpec& spec) {
  switch (spec.kind) {
    case SpectrumKind::linear: return "linear";
    case SpectrumKind::exp_decay: return "exp_decay";
    case SpectrumKind::exp_decay10: return "exp_decay10";
    case SpectrumKind::flat: return "flat";
    case SpectrumKind::gaussian_cloud: return "gaussian_cloud";
    case SpectrumKind::uniform:
      return "uniform:" + format_double(spec.lo) + ":" + format_double(spec.hi);
    case SpectrumKind::from_file: return "from_file:" + spec.path;
  }
  return "unknown";
}

PointCloud gaussian_cloud(std::size_t n, std::size_t dimension, Rng& rng) {
  if (n == 0 || dimension == 0)
    throw Error(ErrorCode::input, "cloud needs n >= 1 and d >= 1");
  std::normal_distribution<double> normal;
  Eigen::MatrixXd points(static_cast<Eigen::Index>(n),
                         static_cast<Eigen::Index>(dimension));
  for (Eigen::Index i = 0; i < points.rows(); ++i)
    for (Eigen::Index j = 0; j < points.cols(); ++j) points(i, j) = normal(rng);
  return PointCloud(std::move(points));
}

Eigen::MatrixXd random_orthonormal(std::size_t n, std::size_t k, Rng& rng) {
  if (k > n) throw Error(ErrorCode::input, "orthonormal basis needs k <= n");
  std::normal_distribution<double> normal;
  const auto rows = static_cast<Eigen::Index>(n);
  const auto cols = static_cast<Eigen::Index>(k);
  Eigen::MatrixXd g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = normal(rng);
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ() * Eigen::MatrixXd::Identity(rows, cols);
  // Fix column signs by diag(R) so the distribution is Haar.
  const Eigen::MatrixXd r = qr.matrixQR();
  for (Eigen::Index j = 0; j < cols; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  return q;
}

Spectrum make_spectrum(const SpectrumSpec& spec, std::size_t n,
                       std::uint64_t seed, double tau) {
  if (spec.kind == SpectrumKind::from_file)
    return Spectrum(read_value_list(spec.path));
  if (n == 0) throw Error(ErrorCode::input, "spectrum size n must be >= 1");

  std::vector<double> values(n);
  switch (spec.kind) {
    case SpectrumKind::linear:
      for (std::size_t i = 0; i < n; ++i) values[i] = static_cast<double>(i + 1);
      break;
    case SpectrumKind::exp_decay:
      for (std::size_t i = 0; i < n; ++i)
        values[i] = std::exp(-static_cast<double>(i + 1));
      break;
    case SpectrumKind::exp_decay10:
      for (std::size_t i = 0; i < n; ++i)
        values[i] = std::exp(-static_cast<double>(i + 1) / 10.0);
      break;
    case SpectrumKind::flat:
      std::fill(values.begin(), values.end(), 1.0);
      break;
    case SpectrumKind::uniform: {
      Rng rng = Rng::stream(seed, Stream::spectrum);
      values = uniform_values(n, spec.lo, spec.hi, rng);
      break;
    }
    case SpectrumKind::gaussian_cloud: {
      if (!(tau > 0.0)) throw Error(ErrorCode::input, "tau must be positive");
      Rng rng = Rng::stream(seed, Stream::cloud);
      const PointCloud cloud = gaussian_cloud(n, kCloudDimension, rng);
      return gaussian_l_ensemble(cloud, tau).effective_spectrum();
    }
    case SpectrumKind::from_file:
      break;
  }
  return Spectrum(std::move(values));
}

EspComparison compare_esp(const Spectrum& spectrum) {
  const std::size_t n = spectrum.size();
  if (n < 2) throw Error(ErrorCode::input, "ESP comparison needs n >= 2");
  const LogEspTable exact = esp_exact(spectrum);
  const LogEspTable saddle = esp_saddlepoint_all(spectrum);
  const UnguardedEsp raw = esp_unguarded(spectrum);
  const std::size_t positive = spectrum.positive_count();

  EspComparison out;
  out.first_overflow = raw.first_overflow;
  out.rows.reserve(n - 1);
  for (std::size_t k = 1; k < n; ++k) {
    EspComparisonRow row;
    row.k = static_cast<int>(k);
    row.log_exact = exact[k];
    row.log_saddle = saddle[k];
    row.feasible = k < positive && saddle.solved[k];
    row.ratio = row.feasible ? std::exp(row.log_saddle - row.log_exact)
                             : std::numeric_limits<double>::quiet_NaN();
    row.overflowed = !std::isfinite(raw.values[k]);
    out.rows.push_back(row);
  }
  return out;
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw Error(ErrorCode::input, "slope needs two or more matching points");
  const auto m = static_cast<double>(x.size());
  double sx = 0.0, sy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0) || !(y[i] > 0.0))
      throw Error(ErrorCode::input, "log-log slope needs positive data");
    sx += std::log(x[i]);
    sy += std::log(y[i]);
  }
  const double mx = sx / m, my = sy / m;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = std::log(x[i]) - mx;
    sxy += dx * (std::log(y[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw Error(ErrorCode::input, "slope needs distinct x values");
  return sxy / sxx;
}

RateStudy convergence_rates(const std::vector<std::size_t>& ns,
                            std::size_t repeats, std::uint64_t seed, double lo,
                            double hi, std::size_t k_divisor) {
  if (ns.empty() || repeats == 0 || k_divisor == 0)
    throw Error(ErrorCode::input, "rates need sizes, repeats >= 1, divisor >= 1");
  if (!(lo > 0.0) || !(hi >= lo))
    throw Error(ErrorCode::input, "rates need 0 < lo <= hi");
  const Rng base = Rng::stream(seed, Stream::spectrum);

  RateStudy study;
  std::vector<double> xs, basic, corrected;
  for (std::size_t n : ns) {
    const auto k = static_cast<int>(n / k_divisor);
    if (k < 1 || static_cast<std::size_t>(k) >= n)
      throw Error(ErrorCode::input, "n = " + std::to_string(n) +
                                        " gives k outside [1, n-1]");
    RateRow row;
    row.n = n;
    row.k = k;
    for (std::size_t r = 0; r < repeats; ++r) {
      Rng rng = base.split(n).split(r);
      const Spectrum lambda(uniform_values(n, lo, hi, rng));
      const SaddlepointSolution saddle = solve_saddlepoint(lambda, k);
      const auto exact = first_order_exact(lambda, k).probabilities;
      const auto pb = inclusion_basic(lambda, saddle).probabilities;
      const auto pc = inclusion_corrected_all(lambda, saddle).probabilities;
      double eb = 0.0, ec = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        eb = std::max(eb, std::abs(pb[i] - exact[i]));
        ec = std::max(ec, std::abs(pc[i] - exact[i]));
      }
      row.error_basic += eb;
      row.error_corrected += ec;
    }
    row.error_basic /= static_cast<double>(repeats);
    row.error_corrected /= static_cast<double>(repeats);
    xs.push_back(static_cast<double>(n));
    basic.push_back(row.error_basic);
    corrected.push_back(row.error_corrected);
    study.rows.push_back(row);
  }
  if (xs.size() >= 2) {
    study.slope_basic = log_log_slope(xs, basic);
    study.slope_corrected = log_log_slope(xs, corrected);
  }
  return study;
}

std::vector<std::vector<std::size_t>> random_subsets(std::size_t n,
                                                     std::size_t m,
                                                     std::size_t count,
                                                     std::uint64_t seed) {
  if (m == 0 || m > n) throw Error(ErrorCode::input, "subset order outside [1, n]");
  if (count > binomial_u64(n, m))
    throw Error(ErrorCode::input, "more distinct subsets requested than exist");
  Rng rng = Rng::stream(seed, Stream::subsets);
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> items(n);
  while (out.size() < count) {
    std::iota(items.begin(), items.end(), std::size_t{0});
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t j = i + static_cast<std::size_t>(
                                    rng.uniform() * static_cast<double>(n - i));
      std::swap(items[i], items[std::min(j, n - 1)]);
    }
    std::vector<std::size_t> alpha(items.begin(), items.begin() + static_cast<std::ptrdiff_t>(m));
    std::sort(alpha.begin(), alpha.end());
    if (seen.insert(alpha).second) out.push_back(std::move(alpha));
  }
  return out;
}

SubsetInclusionStudy subset_inclusion_study(
    const LEnsemble& ensemble, int k,
    const std::vector<std::vector<std::size_t>>& subsets, std::size_t draws,
    std::uint64_t seed) {
  const std::size_t n = ensemble.size();
  std::vector<std::vector<std::size_t>> alphas;
  alphas.reserve(subsets.size());
  for (const auto& alpha : subsets) {
    alphas.push_back(checked_subset(alpha, n));
    if (alphas.back().empty() ||
        alphas.back().size() > static_cast<std::size_t>(k) ||
        alphas.back().size() > static_cast<std::size_t>(kMaxSubsetOrder))
      throw Error(ErrorCode::input, "subset order outside [1, min(k, 8)]");
  }

  SubsetInclusionStudy study;
  study.rows.resize(alphas.size());
  for (std::size_t a = 0; a < alphas.size(); ++a) study.rows[a].subset = alphas[a];

  if (binomial_u64(n, static_cast<std::size_t>(k)) <= kEnumerationBudget) {
    const EnumeratedPmf pmf = enumerate_kdpp(ensemble, k);
    for (std::size_t x = 0; x < pmf.size(); ++x) {
      const SampleSet members({pmf.subset(x).begin(), pmf.subset(x).end()}, n);
      for (std::size_t a = 0; a < alphas.size(); ++a)
        if (members.contains_all(alphas[a])) study.rows[a].reference += pmf.weight(x);
    }
    study.reference_method = InclusionMethod::exact;
  } else {
    if (draws == 0)
      throw Error(ErrorCode::input, "Monte Carlo reference needs draws >= 1");
    const KdppSampler sampler(ensemble, k, ConditionalRule::exact);
    Rng eigen = Rng::stream(seed, Stream::eigen_step);
    Rng projection = Rng::stream(seed, Stream::projection_step);
    const auto estimates = mc_inclusion(
        [&] { return sampler.sample(eigen, projection); }, alphas, draws);
    for (std::size_t a = 0; a < alphas.size(); ++a) {
      study.rows[a].reference = estimates[a].estimate;
      study.rows[a].reference_se = estimates[a].std_error;
    }
    study.reference_method = InclusionMethod::empirical;
    study.draws = draws;
  }

  const MarginalKernel kernel = match_dpp(ensemble, k);
  std::map<int, double> factors;
  for (auto& row : study.rows) {
    const auto m = static_cast<int>(row.subset.size());
    if (!factors.contains(m)) factors[m] = correction_factor(kernel, k, m);
    row.basic = principal_minor(kernel.matrix, row.subset);
    row.corrected = row.basic * factors[m];
  }
  return study;
}

std::vector<TvRow> tv_trend(const std::vector<std::size_t>& ns,
                            std::size_t repeats, std::uint64_t seed, double lo,
                            double hi, std::size_t k_divisor) {
  if (ns.empty() || repeats == 0 || k_divisor == 0)
    throw Error(ErrorCode::input, "TV trend needs sizes, repeats >= 1, divisor >= 1");
  if (!(lo > 0.0) || !(hi >= lo))
    throw Error(ErrorCode::input, "TV trend needs 0 < lo <= hi");
  const Rng base = Rng::stream(seed, Stream::spectrum);
  std::vector<TvRow> out;
  for (std::size_t n : ns) {
    TvRow row;
    row.n = n;
    row.k = static_cast<int>(n / k_divisor);
    if (row.k < 1 || static_cast<std::size_t>(row.k) >= n)
      throw Error(ErrorCode::input, "n = " + std::to_string(n) +
                                        " gives k outside [1, n-1]");
    for (std::size_t r = 0; r < repeats; ++r) {
      Rng rng = base.split(n).split(r);
      const std::vector<double> lambda = uniform_values(n, lo, hi, rng);
      const Eigen::MatrixXd q = random_orthonormal(n, n, rng);
      Eigen::MatrixXd l = q * Eigen::Map<const Eigen::VectorXd>(
                                  lambda.data(), static_cast<Eigen::Index>(n))
                                  .asDiagonal() *
                          q.transpose();
      l = 0.5 * (l + l.transpose()).eval();
      const LEnsemble ensemble = LEnsemble::from_matrix(l);
      const InclusionMeasure exact = exact_inclusion(enumerate_kdpp(ensemble, row.k), 1);
      const MarginalKernel kernel = match_dpp(ensemble, row.k);
      std::vector<double> diag(kernel.matrix.diagonal().begin(),
                               kernel.matrix.diagonal().end());
      const InclusionMeasure matched(n, 1, std::move(diag), InclusionMethod::basic);
      row.mean_distance += tv_distance(exact, matched, row.k);
    }
    row.mean_distance /= static_cast<double>(repeats);
    out.push_back(row);
  }
  return out;
}

InferenceStudy inference_study(std::size_t n, int k, double tau_true,
                               const std::vector<double>& grid,
                               std::uint64_t seed) {
  if (!(tau_true > 0.0)) throw Error(ErrorCode::input, "tau must be positive");
  Rng cloud_rng = Rng::stream(seed, Stream::cloud);
  PointCloud cloud = gaussian_cloud(n, kCloudDimension, cloud_rng);
  const LEnsemble truth = gaussian_l_ensemble(cloud, tau_true);
  Rng eigen = Rng::stream(seed, Stream::observed_set).split(0);
  Rng projection = Rng::stream(seed, Stream::observed_set).split(1);
  SampleSet observed = sample_kdpp(truth, k, eigen, projection);
  LikelihoodCurve curve = fit_tau(cloud, observed, grid);
  return {std::move(cloud), std::move(observed), std::move(curve)};
}

}  // namespace spdpp
