#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "spdpp/error.hpp"
#include "spdpp/rng.hpp"
#include "spdpp/spectrum.hpp"

namespace testing {

inline spdpp::Rng rng_for(std::uint64_t tag) { return spdpp::Rng(0x5eed0000ULL + tag); }

// Eigenvalues log-uniform on [e^lo, e^hi].
inline std::vector<double> log_uniform(std::size_t n, spdpp::Rng& rng, double lo = -3.0,
                                       double hi = 3.0) {
  std::vector<double> out(n);
  for (double& x : out) x = std::exp(lo + (hi - lo) * rng.uniform());
  return out;
}

inline std::size_t uniform_int(spdpp::Rng& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng.uniform() * static_cast<double>(hi - lo + 1));
}

// G G^T with G an n x r standard normal matrix.
inline Eigen::MatrixXd random_psd(std::size_t n, std::size_t r, spdpp::Rng& rng) {
  std::normal_distribution<double> normal;
  Eigen::MatrixXd g(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(r));
  for (Eigen::Index i = 0; i < g.rows(); ++i)
    for (Eigen::Index j = 0; j < g.cols(); ++j) g(i, j) = normal(rng);
  Eigen::MatrixXd l = g * g.transpose();
  return 0.5 * (l + l.transpose());
}

inline Eigen::MatrixXd diagonal_matrix(const std::vector<double>& d) {
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d.size()),
                                              static_cast<Eigen::Index>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i)
    out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = d[i];
  return out;
}

// e_k by summing the product over every k-subset (bitmask loop).
inline long double brute_esp(const std::vector<double>& x, std::size_t k) {
  const std::size_t n = x.size();
  long double sum = 0.0L;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != k) continue;
    long double prod = 1.0L;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U) prod *= x[i];
    sum += prod;
  }
  return sum;
}

// Submatrix determinant through Eigen's own dense determinant.
inline double minor_det(const Eigen::MatrixXd& m, const std::vector<std::size_t>& idx) {
  if (idx.empty()) return 1.0;
  return m(idx, idx).determinant();
}

template <class F>
std::optional<spdpp::ErrorCode> error_of(F&& f) {
  try {
    f();
  } catch (const spdpp::Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace testing
