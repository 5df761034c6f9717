#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "spdpp/diagonal.hpp"
#include "spdpp/rng.hpp"
#include "spdpp/sample_set.hpp"
#include "spdpp/spectrum.hpp"

namespace spdpp {

// K = U diag(eta) U^T, eta_i = lambda_i e^nu / (1 + lambda_i e^nu): the
// marginal kernel of the DPP with ensemble e^nu L. nu may be +inf (projection
// onto the range of L).
struct MarginalKernel {
  Eigen::MatrixXd matrix;
  Eigen::VectorXd eta;
  double nu = 0.0;

  double trace() const { return eta.sum(); }
};

MarginalKernel marginal_kernel(const LEnsemble& ensemble, double nu);

// The DPP whose expected size is k. When rank(L) == k the matched kernel is
// the projection U U^T (nu = +inf), otherwise nu solves the saddlepoint
// equation on the effective spectrum.
MarginalKernel match_dpp(const LEnsemble& ensemble, int k);

// Order-one inclusion probabilities p_i = sum_j U_ij^2 pi_j, where pi is the
// diagonal k-DPP inclusion vector of the eigenvalues computed with `method`
// (exact, basic or corrected).
std::vector<double> first_order_inclusion(const LEnsemble& ensemble, int k,
                                          InclusionMethod method);

// det(K_alpha) for the matched kernel. With `corrected`, multiplied by
// C(k, m) / e_m(eta) so the order-m measure sums to C(k, m); for m == 1 that
// factor is exactly 1.
double high_order_inclusion(const LEnsemble& ensemble, int k,
                            std::span<const std::size_t> alpha, bool corrected);

// Same, reusing a kernel from match_dpp. correction_factor() lets callers
// evaluate many subsets against one e_m(eta).
double high_order_inclusion(const MarginalKernel& kernel, int k,
                            std::span<const std::size_t> alpha, bool corrected);
double correction_factor(const MarginalKernel& kernel, int k, int m);

// det of the principal submatrix, through a pivoted LU; tiny negative values
// from round-off are clamped to 0.
double principal_minor(const Eigen::MatrixXd& matrix,
                       std::span<const std::size_t> alpha);

inline constexpr int kMaxSubsetOrder = 8;

// Projection DPP with kernel V V^T, V an n x k matrix with orthonormal
// columns. Each step picks item i with probability |r_i|^2 / (k - t), where
// r_i is row i of V after projecting out the directions already chosen
// (modified Gram-Schmidt), then projects out r_i.
SampleSet sample_projection_dpp(const Eigen::MatrixXd& basis, Rng& rng);

// Two-step k-DPP sampler: eigenvectors from the diagonal k-DPP of the
// eigenvalues, then a projection DPP on the selected eigenvectors.
class KdppSampler {
 public:
  KdppSampler(const LEnsemble& ensemble, int k,
              ConditionalRule rule = ConditionalRule::automatic);

  SampleSet sample(Rng& eigen_rng, Rng& projection_rng) const;

 private:
  Eigen::MatrixXd eigenvectors_;
  DiagonalKdppSampler diagonal_;
};

SampleSet sample_kdpp(const LEnsemble& ensemble, int k, Rng& eigen_rng,
                      Rng& projection_rng,
                      ConditionalRule rule = ConditionalRule::automatic);

// Varying-size DPP with ensemble e^nu L: independent Bernoulli(eta_i) over
// eigenvectors, then the projection step.
SampleSet sample_dpp(const LEnsemble& ensemble, double nu, Rng& eigen_rng,
                     Rng& projection_rng);

}  // namespace spdpp
