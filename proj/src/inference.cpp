#include "spdpp/inference.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "spdpp/detail/numeric.hpp"
#include "spdpp/error.hpp"
#include "spdpp/esp.hpp"

namespace spdpp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_observed(const LEnsemble& ensemble, const SampleSet& observed) {
  if (observed.empty())
    throw Error(ErrorCode::input, "observed set must be nonempty");
  if (observed.indices().back() >= ensemble.size())
    throw Error(ErrorCode::input, "observed index outside the ground set");
}

void check_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw Error(ErrorCode::input, "bandwidth tau must be positive and finite");
}

// log det(L_X) by Cholesky; -inf when the minor is numerically singular.
double log_det_minor(const LEnsemble& ensemble, const SampleSet& observed) {
  const std::vector<std::size_t> idx(observed.indices().begin(),
                                     observed.indices().end());
  const Eigen::MatrixXd minor = ensemble.matrix()(idx, idx);
  const Eigen::LLT<Eigen::MatrixXd> llt(minor);
  if (llt.info() != Eigen::Success) return kNegInf;
  const auto diag = llt.matrixLLT().diagonal();
  if ((diag.array() <= 0.0).any()) return kNegInf;
  return 2.0 * diag.array().log().sum();
}

// log e_k(lambda); NaN when the saddlepoint has no finite solution.
double log_esp(const Spectrum& lambda, int k, EspEvaluation esp) {
  const bool exact = esp == EspEvaluation::exact ||
                     (esp == EspEvaluation::automatic &&
                      lambda.size() <= kExactEspLimit);
  if (exact) return esp_exact(lambda)[static_cast<std::size_t>(k)];
  const std::size_t positive = lambda.positive_count();
  if (static_cast<std::size_t>(k) > positive) return kNegInf;
  if (static_cast<std::size_t>(k) == positive) {
    double sum = 0.0;
    for (double l : lambda.values())
      if (l > 0.0) sum += std::log(l);
    return sum;
  }
  try {
    return esp_saddlepoint(lambda, k).log_esp;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::convergence) return kNegInf;
    throw;
  }
}

}  // namespace

LoglikValue loglik_kdpp(const LEnsemble& ensemble, const SampleSet& observed,
                        EspEvaluation esp) {
  check_observed(ensemble, observed);
  const int k = static_cast<int>(observed.size());
  const double det = log_det_minor(ensemble, observed);
  if (det == kNegInf) return {kNegInf, false};
  const double norm = log_esp(ensemble.effective_spectrum(), k, esp);
  if (!std::isfinite(norm)) return {kNegInf, false};
  return {det - norm, true};
}

LoglikValue loglik_kdpp(const PointCloud& cloud, const SampleSet& observed,
                        double tau, EspEvaluation esp) {
  check_tau(tau);
  return loglik_kdpp(gaussian_l_ensemble(cloud, tau), observed, esp);
}

ProfileLoglik profile_loglik_dpp(const LEnsemble& ensemble,
                                 const SampleSet& observed) {
  check_observed(ensemble, observed);
  const int k = static_cast<int>(observed.size());
  if (static_cast<std::size_t>(k) >= ensemble.size())
    throw Error(ErrorCode::input, "profile likelihood needs k <= n - 1");
  ProfileLoglik out;
  out.value = kNegInf;
  const double det = log_det_minor(ensemble, observed);
  if (det == kNegInf) return out;

  const Spectrum lambda = ensemble.effective_spectrum();
  SaddlepointSolution saddle;
  try {
    saddle = solve_saddlepoint(lambda, k);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::infeasible || e.code() == ErrorCode::convergence)
      return out;
    throw;
  }
  double log_norm = 0.0;
  for (double l : lambda.values())
    if (l > 0.0) log_norm += detail::softplus(std::log(l) + saddle.nu_star);
  out.value = det + saddle.nu_star * k - log_norm;
  out.feasible = true;
  out.nu_star = saddle.nu_star;
  out.psi2 = saddle.psi2;
  return out;
}

ProfileLoglik profile_loglik_dpp(const PointCloud& cloud,
                                 const SampleSet& observed, double tau) {
  check_tau(tau);
  return profile_loglik_dpp(gaussian_l_ensemble(cloud, tau), observed);
}

LikelihoodCurve fit_tau(const PointCloud& cloud, const SampleSet& observed,
                        std::span<const double> grid, EspEvaluation esp) {
  if (grid.empty()) throw Error(ErrorCode::input, "tau grid is empty");
  for (double tau : grid) check_tau(tau);

  LikelihoodCurve curve;
  const std::size_t points = grid.size();
  curve.taus.assign(grid.begin(), grid.end());
  curve.kdpp_ll.resize(points);
  curve.dpp_profile_ll.resize(points);
  curve.feasible.resize(points);
  curve.gap_residual.resize(points);

  const double nan = std::numeric_limits<double>::quiet_NaN();
  bool any = false;
  for (std::size_t g = 0; g < points; ++g) {
    const LEnsemble ensemble = gaussian_l_ensemble(cloud, grid[g]);
    const LoglikValue kdpp = loglik_kdpp(ensemble, observed, esp);
    const ProfileLoglik dpp = profile_loglik_dpp(ensemble, observed);
    curve.kdpp_ll[g] = kdpp.value;
    curve.dpp_profile_ll[g] = dpp.value;
    curve.feasible[g] = kdpp.feasible && dpp.feasible;
    curve.gap_residual[g] = nan;
    if (!curve.feasible[g]) continue;

    const LoglikValue saddle_ll =
        loglik_kdpp(ensemble, observed, EspEvaluation::saddlepoint);
    curve.gap_residual[g] = dpp.value - saddle_ll.value +
                            0.5 * std::log(2.0 * std::numbers::pi * dpp.psi2);
    if (!any || kdpp.value > curve.kdpp_ll[curve.argmax_kdpp])
      curve.argmax_kdpp = g;
    if (!any || dpp.value > curve.dpp_profile_ll[curve.argmax_dpp])
      curve.argmax_dpp = g;
    any = true;
  }
  if (!any)
    throw Error(ErrorCode::infeasible, "no feasible point on the tau grid");
  return curve;
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0) || !(hi >= lo) || !std::isfinite(hi) || points == 0)
    throw Error(ErrorCode::input, "log grid needs 0 < lo <= hi and points >= 1");
  if (points == 1) return {lo};
  std::vector<double> out(points);
  const double a = std::log(lo);
  const double step = (std::log(hi) - a) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i)
    out[i] = std::exp(a + step * static_cast<double>(i));
  out.front() = lo;
  out.back() = hi;
  return out;
}

}  // namespace spdpp
