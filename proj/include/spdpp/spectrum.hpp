#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace spdpp {

// Eigenvalues below this fraction of lambda_max count as zero when deciding
// the effective rank of an ensemble.
inline constexpr double kRankTolerance = 1e-12;

// n points in d dimensions, one point per row.
class PointCloud {
 public:
  PointCloud() = default;
  // Throws Error(input) when empty or when a coordinate is not finite.
  explicit PointCloud(Eigen::MatrixXd points);

  const Eigen::MatrixXd& points() const { return points_; }
  std::size_t size() const { return static_cast<std::size_t>(points_.rows()); }
  std::size_t dimension() const {
    return static_cast<std::size_t>(points_.cols());
  }

 private:
  Eigen::MatrixXd points_;
};

// Nonnegative eigenvalues of an L-ensemble, kept in the order given.
//
// Viewing lambda_i / (1 + lambda_i) as Bernoulli parameters, mu() and sigma2()
// are the mean and variance of the number of successes. sigma2 <= mu always.
class Spectrum {
 public:
  Spectrum() = default;
  // Throws Error(input) for negative or non-finite values.
  explicit Spectrum(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

  double max() const;
  double mu() const;
  double sigma2() const;
  // Number of eigenvalues strictly above rel_tolerance * max().
  std::size_t positive_count(double rel_tolerance = 0.0) const;

  // Copy with every value below rel_tolerance * max() replaced by 0.
  Spectrum thresholded(double rel_tolerance) const;
  // Copy with all values multiplied by beta > 0.
  Spectrum scaled(double beta) const;
  // Copy with the listed (sorted, distinct) indices removed.
  Spectrum without(std::span<const std::size_t> sorted_indices) const;
  // Values [first, size()).
  Spectrum suffix(std::size_t first) const;

 private:
  std::vector<double> values_;
};

// Symmetric PSD matrix L together with its eigendecomposition
// L = U diag(lambda) U^T, eigenvalues in descending order.
class LEnsemble {
 public:
  // Throws Error(input) if the matrix is not square or is asymmetric beyond
  // 1e-12 relative, Error(not_psd) if an eigenvalue is below
  // -1e-6 * max|lambda|. Milder negative round-off is clamped to zero.
  static LEnsemble from_matrix(const Eigen::MatrixXd& matrix);

  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const Spectrum& spectrum() const { return spectrum_; }
  const Eigen::MatrixXd& eigenvectors() const { return eigenvectors_; }
  std::size_t size() const { return spectrum_.size(); }

  // Spectrum with eigenvalues below kRankTolerance * lambda_max set to 0.
  Spectrum effective_spectrum() const;
  std::size_t rank() const;

 private:
  LEnsemble() = default;

  Eigen::MatrixXd matrix_;
  Spectrum spectrum_;
  Eigen::MatrixXd eigenvectors_;
};

// Squared-exponential kernel L_ij = exp(-|x_i - x_j|^2 / (2 tau^2)).
LEnsemble gaussian_l_ensemble(const PointCloud& cloud, double tau);

struct DofDiagnostic {
  double mu = 0.0;
  double sigma2 = 0.0;
  // Tr(L / lambda_max); sigma2 of the rescaled ensemble is at least a quarter
  // of this, so growth of this trace is enough for the asymptotic regime.
  double trace_normalized = 0.0;
};

DofDiagnostic dof_diagnostic(const Spectrum& spectrum);

}  // namespace spdpp
