#include "spdpp/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "spdpp/error.hpp"

namespace spdpp {

namespace {
constexpr double kSymmetryTolerance = 1e-12;
constexpr double kRejectNegative = 1e-6;
}  // namespace

PointCloud::PointCloud(Eigen::MatrixXd points) : points_(std::move(points)) {
  if (points_.rows() < 1 || points_.cols() < 1)
    throw Error(ErrorCode::input, "point cloud needs n >= 1 points, d >= 1");
  if (!points_.allFinite())
    throw Error(ErrorCode::input, "point cloud has non-finite coordinates");
}

Spectrum::Spectrum(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i]) || values_[i] < 0.0)
      throw Error(ErrorCode::input, "eigenvalue " + std::to_string(i) +
                                        " is negative or not finite");
  }
}

double Spectrum::max() const {
  return values_.empty() ? 0.0 : *std::max_element(values_.begin(), values_.end());
}

double Spectrum::mu() const {
  double sum = 0.0;
  for (double l : values_) sum += l / (1.0 + l);
  return sum;
}

double Spectrum::sigma2() const {
  double sum = 0.0;
  for (double l : values_) sum += l / ((1.0 + l) * (1.0 + l));
  return sum;
}

std::size_t Spectrum::positive_count(double rel_tolerance) const {
  const double cut = rel_tolerance * max();
  return static_cast<std::size_t>(std::count_if(
      values_.begin(), values_.end(), [cut](double l) { return l > cut; }));
}

Spectrum Spectrum::thresholded(double rel_tolerance) const {
  const double cut = rel_tolerance * max();
  std::vector<double> out(values_);
  for (double& l : out)
    if (l <= cut) l = 0.0;
  return Spectrum(std::move(out));
}

Spectrum Spectrum::scaled(double beta) const {
  if (!(beta > 0.0) || !std::isfinite(beta))
    throw Error(ErrorCode::input, "scale factor must be positive");
  std::vector<double> out(values_);
  for (double& l : out) l *= beta;
  return Spectrum(std::move(out));
}

Spectrum Spectrum::without(std::span<const std::size_t> sorted_indices) const {
  std::vector<double> out;
  out.reserve(values_.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (next < sorted_indices.size() && sorted_indices[next] == i) {
      ++next;
      continue;
    }
    out.push_back(values_[i]);
  }
  return Spectrum(std::move(out));
}

Spectrum Spectrum::suffix(std::size_t first) const {
  first = std::min(first, values_.size());
  return Spectrum(std::vector<double>(values_.begin() + first, values_.end()));
}

LEnsemble LEnsemble::from_matrix(const Eigen::MatrixXd& matrix) {
  if (matrix.rows() != matrix.cols() || matrix.rows() == 0)
    throw Error(ErrorCode::input, "L-ensemble must be a nonempty square matrix");
  if (!matrix.allFinite())
    throw Error(ErrorCode::input, "L-ensemble has non-finite entries");

  const double scale = matrix.cwiseAbs().maxCoeff();
  const double asym = (matrix - matrix.transpose()).cwiseAbs().maxCoeff();
  if (asym > kSymmetryTolerance * std::max(scale, 1e-300))
    throw Error(ErrorCode::input, "L-ensemble is not symmetric");

  LEnsemble out;
  out.matrix_ = 0.5 * (matrix + matrix.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(out.matrix_);
  if (solver.info() != Eigen::Success)
    throw Error(ErrorCode::numerical, "symmetric eigensolver failed");

  const Eigen::Index n = matrix.rows();
  const Eigen::VectorXd& ascending = solver.eigenvalues();
  const double magnitude = ascending.cwiseAbs().maxCoeff();
  if (ascending(0) < -kRejectNegative * magnitude)
    throw Error(ErrorCode::not_psd,
                "eigenvalue " + std::to_string(ascending(0)) +
                    " is below -1e-6 * max|lambda|");

  std::vector<double> values(n);
  out.eigenvectors_.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    values[j] = std::max(ascending(n - 1 - j), 0.0);
    out.eigenvectors_.col(j) = solver.eigenvectors().col(n - 1 - j);
  }
  out.spectrum_ = Spectrum(std::move(values));
  return out;
}

Spectrum LEnsemble::effective_spectrum() const {
  return spectrum_.thresholded(kRankTolerance);
}

std::size_t LEnsemble::rank() const {
  return spectrum_.positive_count(kRankTolerance);
}

LEnsemble gaussian_l_ensemble(const PointCloud& cloud, double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw Error(ErrorCode::input, "bandwidth tau must be positive and finite");
  const Eigen::MatrixXd& x = cloud.points();
  const Eigen::Index n = x.rows();
  const double inv = 1.0 / (2.0 * tau * tau);
  Eigen::MatrixXd l(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    l(i, i) = 1.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double d2 = (x.row(i) - x.row(j)).squaredNorm();
      l(i, j) = l(j, i) = std::exp(-d2 * inv);
    }
  }
  return LEnsemble::from_matrix(l);
}

DofDiagnostic dof_diagnostic(const Spectrum& spectrum) {
  DofDiagnostic out;
  out.mu = spectrum.mu();
  out.sigma2 = spectrum.sigma2();
  const double top = spectrum.max();
  if (top > 0.0) {
    const auto v = spectrum.values();
    out.trace_normalized = std::accumulate(v.begin(), v.end(), 0.0) / top;
  }
  return out;
}

}  // namespace spdpp
