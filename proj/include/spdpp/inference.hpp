#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "spdpp/sample_set.hpp"
#include "spdpp/spectrum.hpp"

namespace spdpp {

enum class EspEvaluation { automatic, exact, saddlepoint };

// Problems up to this size use the exact ESP under EspEvaluation::automatic.
inline constexpr std::size_t kExactEspLimit = 64;

struct LoglikValue {
  double value = 0.0;  // -inf when infeasible
  bool feasible = false;
};

// log det(L_X) - log e_k(lambda).
LoglikValue loglik_kdpp(const LEnsemble& ensemble, const SampleSet& observed,
                        EspEvaluation esp = EspEvaluation::automatic);
LoglikValue loglik_kdpp(const PointCloud& cloud, const SampleSet& observed,
                        double tau, EspEvaluation esp = EspEvaluation::automatic);

struct ProfileLoglik {
  double value = 0.0;
  bool feasible = false;
  double nu_star = 0.0;
  double psi2 = 0.0;
};

// max_nu [nu k + log det(L_X) - log det(I + e^nu L)], attained at the
// saddlepoint nu*.
ProfileLoglik profile_loglik_dpp(const LEnsemble& ensemble,
                                 const SampleSet& observed);
ProfileLoglik profile_loglik_dpp(const PointCloud& cloud,
                                 const SampleSet& observed, double tau);

struct LikelihoodCurve {
  std::vector<double> taus;
  std::vector<double> kdpp_ll;
  std::vector<double> dpp_profile_ll;
  std::vector<bool> feasible;
  // C*_DPP - C_kDPP + 1/2 log(2 pi psi''), with C_kDPP on the saddlepoint
  // ESP. Zero up to round-off at every feasible point.
  std::vector<double> gap_residual;
  std::size_t argmax_kdpp = 0;
  std::size_t argmax_dpp = 0;
};

// Grid search over the squared-exponential bandwidth. Throws Error(input)
// for an empty or non-positive grid and Error(infeasible) when no grid point
// is feasible.
LikelihoodCurve fit_tau(const PointCloud& cloud, const SampleSet& observed,
                        std::span<const double> grid,
                        EspEvaluation esp = EspEvaluation::automatic);

std::vector<double> log_grid(double lo, double hi, std::size_t points);

}  // namespace spdpp
