#include "spdpp/kdpp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "spdpp/combinatorics.hpp"
#include "spdpp/detail/numeric.hpp"
#include "spdpp/error.hpp"
#include "spdpp/esp.hpp"

namespace spdpp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kOrthonormalTolerance = 1e-8;

double eta_of(double lambda, double nu) {
  if (lambda <= 0.0) return 0.0;
  if (nu == kInf) return 1.0;
  if (nu == -kInf) return 0.0;
  return detail::sigmoid(std::log(lambda) + nu);
}

MarginalKernel kernel_from_eta(const Eigen::MatrixXd& u, Eigen::VectorXd eta,
                               double nu) {
  MarginalKernel out;
  out.matrix = u * eta.asDiagonal() * u.transpose();
  out.eta = std::move(eta);
  out.nu = nu;
  return out;
}

void require_k(const LEnsemble& ensemble, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > ensemble.size())
    throw Error(ErrorCode::input, "k = " + std::to_string(k) +
                                      " outside [1, n] for n = " +
                                      std::to_string(ensemble.size()));
  if (static_cast<std::size_t>(k) > ensemble.rank())
    throw Error(ErrorCode::infeasible,
                "k = " + std::to_string(k) + " exceeds rank " +
                    std::to_string(ensemble.rank()) + " of the L-ensemble");
}

}  // namespace

MarginalKernel marginal_kernel(const LEnsemble& ensemble, double nu) {
  if (std::isnan(nu)) throw Error(ErrorCode::input, "tilt nu is NaN");
  const Spectrum& lambda = ensemble.spectrum();
  Eigen::VectorXd eta(static_cast<Eigen::Index>(lambda.size()));
  for (std::size_t i = 0; i < lambda.size(); ++i)
    eta(static_cast<Eigen::Index>(i)) = eta_of(lambda[i], nu);
  return kernel_from_eta(ensemble.eigenvectors(), std::move(eta), nu);
}

MarginalKernel match_dpp(const LEnsemble& ensemble, int k) {
  require_k(ensemble, k);
  const Spectrum effective = ensemble.effective_spectrum();
  const auto n = static_cast<Eigen::Index>(effective.size());
  Eigen::VectorXd eta(n);

  if (static_cast<std::size_t>(k) == ensemble.rank()) {
    for (Eigen::Index i = 0; i < n; ++i) eta(i) = effective[i] > 0.0 ? 1.0 : 0.0;
    return kernel_from_eta(ensemble.eigenvectors(), std::move(eta), kInf);
  }
  const SaddlepointSolution saddle = solve_saddlepoint(effective, k);
  for (Eigen::Index i = 0; i < n; ++i)
    eta(i) = eta_of(effective[i], saddle.nu_star);
  return kernel_from_eta(ensemble.eigenvectors(), std::move(eta), saddle.nu_star);
}

std::vector<double> first_order_inclusion(const LEnsemble& ensemble, int k,
                                          InclusionMethod method) {
  require_k(ensemble, k);
  const Spectrum effective = ensemble.effective_spectrum();
  std::vector<double> pi;
  if (static_cast<std::size_t>(k) == ensemble.rank()) {
    // Projection case: every method is exact.
    for (double l : effective.values()) pi.push_back(l > 0.0 ? 1.0 : 0.0);
  } else {
    switch (method) {
      case InclusionMethod::exact:
        pi = first_order_exact(effective, k).probabilities;
        break;
      case InclusionMethod::basic:
        pi = inclusion_basic(effective, k).probabilities;
        break;
      case InclusionMethod::corrected:
        pi = inclusion_corrected_all(effective, k).probabilities;
        break;
      case InclusionMethod::empirical:
        throw Error(ErrorCode::input,
                    "first_order_inclusion: empirical is not a formula method");
    }
  }
  const Eigen::Map<const Eigen::VectorXd> weights(
      pi.data(), static_cast<Eigen::Index>(pi.size()));
  const Eigen::VectorXd p =
      ensemble.eigenvectors().cwiseAbs2() * weights;
  return {p.data(), p.data() + p.size()};
}

double principal_minor(const Eigen::MatrixXd& matrix,
                       std::span<const std::size_t> alpha) {
  const auto m = static_cast<Eigen::Index>(alpha.size());
  if (m == 0) return 1.0;
  Eigen::MatrixXd sub(m, m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b)
      sub(a, b) = matrix(static_cast<Eigen::Index>(alpha[a]),
                         static_cast<Eigen::Index>(alpha[b]));
  const double det = m == 1 ? sub(0, 0) : sub.partialPivLu().determinant();
  return std::max(det, 0.0);
}

double correction_factor(const MarginalKernel& kernel, int k, int m) {
  if (m <= 1) return 1.0;
  std::vector<double> eta(kernel.eta.data(), kernel.eta.data() + kernel.eta.size());
  for (double& v : eta) v = std::clamp(v, 0.0, 1.0);
  const LogEspTable e = esp_exact(Spectrum(std::move(eta)));
  return std::exp(std::log(binomial(static_cast<std::size_t>(k),
                                    static_cast<std::size_t>(m))) -
                  e[static_cast<std::size_t>(m)]);
}

double high_order_inclusion(const MarginalKernel& kernel, int k,
                            std::span<const std::size_t> alpha, bool corrected) {
  const auto sorted =
      checked_subset(alpha, static_cast<std::size_t>(kernel.matrix.rows()));
  const int m = static_cast<int>(sorted.size());
  if (m > k) throw Error(ErrorCode::input, "subset order m exceeds k");
  if (m > kMaxSubsetOrder)
    throw Error(ErrorCode::input, "subset order above the supported maximum of " +
                                      std::to_string(kMaxSubsetOrder));
  const double base = principal_minor(kernel.matrix, sorted);
  return corrected ? base * correction_factor(kernel, k, m) : base;
}

double high_order_inclusion(const LEnsemble& ensemble, int k,
                            std::span<const std::size_t> alpha, bool corrected) {
  if (static_cast<int>(alpha.size()) > k)
    throw Error(ErrorCode::input, "subset order m exceeds k");
  return high_order_inclusion(match_dpp(ensemble, k), k, alpha, corrected);
}

SampleSet sample_projection_dpp(const Eigen::MatrixXd& basis, Rng& rng) {
  const Eigen::Index n = basis.rows();
  const Eigen::Index k = basis.cols();
  if (k > n) throw Error(ErrorCode::input, "projection basis has more columns than rows");
  if (k == 0) return {};
  const Eigen::MatrixXd gram = basis.transpose() * basis;
  const double off =
      (gram - Eigen::MatrixXd::Identity(k, k)).cwiseAbs().maxCoeff();
  if (off > kOrthonormalTolerance)
    throw Error(ErrorCode::input, "projection basis columns are not orthonormal");

  Eigen::MatrixXd residual = basis;
  Eigen::VectorXd norms(n);
  std::vector<std::size_t> chosen;
  chosen.reserve(static_cast<std::size_t>(k));

  for (Eigen::Index t = 0; t < k; ++t) {
    norms = residual.rowwise().squaredNorm();
    for (std::size_t c : chosen) norms(static_cast<Eigen::Index>(c)) = 0.0;
    const double total = norms.sum();
    const double expected = static_cast<double>(k - t);
    if (!(std::abs(total - expected) <= 1e-6 * static_cast<double>(k)))
      throw Error(ErrorCode::numerical,
                  "projection sampler lost rank: residual mass " +
                      std::to_string(total) + ", expected " +
                      std::to_string(expected));

    double target = rng.uniform() * total;
    Eigen::Index pick = -1;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (norms(i) <= 0.0) continue;
      pick = i;
      target -= norms(i);
      if (target < 0.0) break;
    }
    chosen.push_back(static_cast<std::size_t>(pick));

    const Eigen::RowVectorXd direction =
        residual.row(pick) / std::sqrt(norms(pick));
    residual -= (residual * direction.transpose()) * direction;
    residual.row(pick).setZero();
  }
  return SampleSet(std::move(chosen), static_cast<std::size_t>(n));
}

KdppSampler::KdppSampler(const LEnsemble& ensemble, int k, ConditionalRule rule)
    : eigenvectors_((require_k(ensemble, k), ensemble.eigenvectors())),
      diagonal_(ensemble.effective_spectrum(), k, rule) {}

SampleSet KdppSampler::sample(Rng& eigen_rng, Rng& projection_rng) const {
  const SampleSet selected = diagonal_.sample(eigen_rng);
  Eigen::MatrixXd basis(eigenvectors_.rows(),
                        static_cast<Eigen::Index>(selected.size()));
  Eigen::Index col = 0;
  for (std::size_t j : selected.indices())
    basis.col(col++) = eigenvectors_.col(static_cast<Eigen::Index>(j));
  return sample_projection_dpp(basis, projection_rng);
}

SampleSet sample_kdpp(const LEnsemble& ensemble, int k, Rng& eigen_rng,
                      Rng& projection_rng, ConditionalRule rule) {
  return KdppSampler(ensemble, k, rule).sample(eigen_rng, projection_rng);
}

SampleSet sample_dpp(const LEnsemble& ensemble, double nu, Rng& eigen_rng,
                     Rng& projection_rng) {
  if (std::isnan(nu)) throw Error(ErrorCode::input, "tilt nu is NaN");
  const Spectrum effective = ensemble.effective_spectrum();
  const Eigen::MatrixXd& u = ensemble.eigenvectors();
  std::vector<Eigen::Index> selected;
  for (std::size_t j = 0; j < effective.size(); ++j)
    if (eigen_rng.uniform() < eta_of(effective[j], nu))
      selected.push_back(static_cast<Eigen::Index>(j));
  Eigen::MatrixXd basis(u.rows(), static_cast<Eigen::Index>(selected.size()));
  for (std::size_t c = 0; c < selected.size(); ++c)
    basis.col(static_cast<Eigen::Index>(c)) = u.col(selected[c]);
  return sample_projection_dpp(basis, projection_rng);
}

}  // namespace spdpp
