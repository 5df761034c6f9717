#include "spdpp/esp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "spdpp/detail/numeric.hpp"
#include "spdpp/detail/scaled_real.hpp"
#include "spdpp/error.hpp"

namespace spdpp {

using detail::ScaledReal;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}  // namespace

CumulantDerivatives psi_derivatives(const Spectrum& spectrum, double nu) {
  if (!std::isfinite(nu))
    throw Error(ErrorCode::input, "psi_derivatives: nu must be finite");
  CumulantDerivatives d;
  for (double lambda : spectrum.values()) {
    if (lambda <= 0.0) continue;
    const double t = std::log(lambda) + nu;
    const double s = detail::sigmoid(t);
    const double q = detail::sigmoid(-t);
    d.psi += detail::softplus(t) - std::log1p(lambda);
    d.psi1 += s;
    d.psi2 += s * q;
    d.psi3 += s * q * (q - s);
  }
  return d;
}

SaddlepointSolution solve_saddlepoint(const Spectrum& spectrum, int k,
                                      std::optional<double> nu0) {
  const auto n = static_cast<long>(spectrum.size());
  if (k < 1 || k > n - 1)
    throw Error(ErrorCode::input, "saddlepoint: k = " + std::to_string(k) +
                                      " outside [1, n-1] for n = " +
                                      std::to_string(n));
  const auto positive = static_cast<long>(spectrum.positive_count());
  if (positive <= k)
    throw Error(ErrorCode::infeasible,
                "saddlepoint: " + std::to_string(positive) +
                    " positive eigenvalues, need more than k = " +
                    std::to_string(k) + " for a finite solution");

  // psi'(nu) <= e^nu sum(lambda) and psi'(nu) >= n+ - e^-nu sum(1/lambda),
  // so the two linearisations bracket the root.
  std::vector<double> logs;
  logs.reserve(positive);
  for (double lambda : spectrum.values())
    if (lambda > 0.0) logs.push_back(std::log(lambda));
  const double log_sum = detail::log_sum_exp(logs);
  for (double& v : logs) v = -v;
  const double log_sum_inv = detail::log_sum_exp(logs);

  double lo = std::log(static_cast<double>(k)) - log_sum;
  double hi = log_sum_inv - std::log(static_cast<double>(positive - k));
  if (hi < lo) std::swap(lo, hi);  // only by round-off

  double nu;
  if (nu0 && std::isfinite(*nu0))
    nu = std::clamp(*nu0, lo, hi);
  else
    nu = (2 * k <= n) ? lo : hi;

  const double target = static_cast<double>(k);
  const double tolerance = kSaddlepointRelTolerance * target;
  double previous = kInf;
  double last_residual = kNaN;

  for (int it = 1; it <= kSaddlepointMaxIterations; ++it) {
    CumulantDerivatives d = psi_derivatives(spectrum, nu);
    double residual = d.psi1 - target;
    last_residual = residual;
    if (std::abs(residual) <= tolerance) {
      // One more Newton step is nearly free and usually lands at round-off.
      if (d.psi2 > 0.0) {
        const double polished = nu - residual / d.psi2;
        const CumulantDerivatives p = psi_derivatives(spectrum, polished);
        if (std::abs(p.psi1 - target) < std::abs(residual)) {
          nu = polished;
          d = p;
        }
      }
      SaddlepointSolution out;
      out.nu_star = nu;
      out.k = k;
      out.psi1 = d.psi1;
      out.psi2 = d.psi2;
      out.psi3 = d.psi3;
      out.iterations = it;
      return out;
    }
    if (residual < 0.0)
      lo = nu;
    else
      hi = nu;

    // Newton unless the last step made things worse or leaves the bracket.
    double next = kNaN;
    if (std::abs(residual) < previous && d.psi2 > 0.0)
      next = nu - residual / d.psi2;
    previous = std::abs(residual);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    nu = next;
  }
  throw Error(ErrorCode::convergence,
              "saddlepoint: no convergence after " +
                  std::to_string(kSaddlepointMaxIterations) +
                  " iterations, last residual " + std::to_string(last_residual));
}

LogEspTable esp_exact(const Spectrum& spectrum) {
  const std::size_t n = spectrum.size();
  LogEspTable table;
  table.method = EspMethod::exact;
  table.values.assign(n + 1, -kInf);
  table.solved.assign(n + 1, true);
  table.values[0] = 0.0;

  const double top = spectrum.max();
  if (top <= 0.0) return table;
  const double log_top = std::log(top);

  std::vector<ScaledReal> e(n + 1);
  e[0] = ScaledReal::one();
  std::size_t filled = 0;
  for (double lambda : spectrum.values()) {
    if (lambda <= 0.0) continue;
    const ScaledReal x(lambda / top);
    ++filled;
    for (std::size_t j = filled; j >= 1; --j) e[j] += x * e[j - 1];
  }
  for (std::size_t j = 1; j <= n; ++j) {
    if (e[j].is_zero()) continue;
    const double v = e[j].log() + static_cast<double>(j) * log_top;
    if (!std::isfinite(v))
      throw Error(ErrorCode::numerical,
                  "esp_exact: log e_k not finite at k = " + std::to_string(j));
    table.values[j] = v;
  }
  return table;
}

EspEstimate esp_saddlepoint(const Spectrum& spectrum, int k,
                            std::optional<double> nu0) {
  EspEstimate out;
  out.solution = solve_saddlepoint(spectrum, k, nu0);
  const double nu = out.solution.nu_star;
  double log_partition = 0.0;  // sum log(1 + lambda_i e^nu)
  for (double lambda : spectrum.values())
    if (lambda > 0.0) log_partition += detail::softplus(std::log(lambda) + nu);
  out.log_esp = log_partition - static_cast<double>(k) * nu -
                0.5 * std::log(2.0 * std::numbers::pi * out.solution.psi2);
  return out;
}

LogEspTable esp_saddlepoint_all(const Spectrum& spectrum) {
  const std::size_t n = spectrum.size();
  LogEspTable table;
  table.method = EspMethod::saddlepoint;
  table.values.assign(n + 1, -kInf);
  table.solved.assign(n + 1, true);
  table.values[0] = 0.0;
  if (n == 0) return table;

  const std::size_t positive = spectrum.positive_count();
  double log_product = 0.0;  // product of the positive eigenvalues
  double log_sum_lambda = 0.0;
  {
    std::vector<double> logs;
    for (double lambda : spectrum.values())
      if (lambda > 0.0) logs.push_back(std::log(lambda));
    for (double v : logs) log_product += v;
    log_sum_lambda = detail::log_sum_exp(logs);
  }
  if (positive > 0 && positive <= n) table.values[positive] = log_product;

  double nu = -log_sum_lambda;
  for (std::size_t k = 1; k + 1 <= n && k < positive; ++k) {
    try {
      const EspEstimate est = esp_saddlepoint(spectrum, static_cast<int>(k), nu);
      table.values[k] = est.log_esp;
      nu = est.solution.nu_star;
    } catch (const Error&) {
      table.values[k] = kNaN;
      table.solved[k] = false;
    }
  }
  return table;
}

UnguardedEsp esp_unguarded(const Spectrum& spectrum) {
  const std::size_t n = spectrum.size();
  UnguardedEsp out;
  out.values.assign(n + 1, 0.0);
  out.values[0] = 1.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j >= 1; --j)
      out.values[j] += spectrum[i] * out.values[j - 1];
  for (std::size_t j = 0; j <= n; ++j) {
    if (!std::isfinite(out.values[j])) {
      out.first_overflow = static_cast<int>(j);
      break;
    }
  }
  return out;
}

}  // namespace spdpp
