#pragma once

#include <optional>
#include <vector>

#include "spdpp/spectrum.hpp"

namespace spdpp {

// Cumulant generating function of S_n = sum of Bernoulli(lambda_i/(1+lambda_i))
// and its first three derivatives at nu:
//   psi(nu)  = sum log(1 + lambda_i e^nu) - sum log(1 + lambda_i)
//   psi'(nu) = sum s_i,  psi''(nu) = sum s_i (1 - s_i),
//   psi'''(nu) = sum s_i (1 - s_i)(1 - 2 s_i),  s_i = lambda_i e^nu / (1 + lambda_i e^nu)
struct CumulantDerivatives {
  double psi = 0.0;
  double psi1 = 0.0;
  double psi2 = 0.0;
  double psi3 = 0.0;
};

CumulantDerivatives psi_derivatives(const Spectrum& spectrum, double nu);

struct SaddlepointSolution {
  double nu_star = 0.0;
  int k = 0;
  double psi1 = 0.0;
  double psi2 = 0.0;
  double psi3 = 0.0;
  int iterations = 0;
};

inline constexpr int kSaddlepointMaxIterations = 200;
inline constexpr double kSaddlepointRelTolerance = 1e-9;

// Solves psi'(nu) = k by Newton's method safeguarded with bisection inside the
// bracket given by the small-nu and large-nu linearisations. Stops once
// |psi'(nu) - k| <= 1e-9 k.
//
// Errors: k outside [1, n-1] -> input; fewer than k+1 positive eigenvalues ->
// infeasible (no finite solution); iteration cap exceeded -> convergence.
SaddlepointSolution solve_saddlepoint(const Spectrum& spectrum, int k,
                                      std::optional<double> nu0 = {});

enum class EspMethod { exact, saddlepoint };

// log e_k for k = 0..n. log e_0 = 0. Entries that could not be computed
// (saddlepoint solver failure) are NaN with solved[k] == false.
struct LogEspTable {
  std::vector<double> values;
  std::vector<bool> solved;
  EspMethod method = EspMethod::exact;

  double operator[](std::size_t k) const { return values[k]; }
  std::size_t size() const { return values.size(); }
};

// Summation recurrence e_k <- e_k + lambda_i e_{k-1} on lambda / lambda_max,
// with the scale restored as k log(lambda_max).
LogEspTable esp_exact(const Spectrum& spectrum);

struct EspEstimate {
  double log_esp = 0.0;
  SaddlepointSolution solution;
};

// log e_k ~ sum log(1 + lambda_i e^nu*) - k nu* - 1/2 log(2 pi psi''(nu*)).
EspEstimate esp_saddlepoint(const Spectrum& spectrum, int k,
                            std::optional<double> nu0 = {});

// All log-ESPs, warm-starting each solve from the previous nu*.
LogEspTable esp_saddlepoint_all(const Spectrum& spectrum);

// The textbook recurrence on raw doubles, without rescaling. Kept to reproduce
// its overflow; first_overflow is the smallest k whose value is not finite.
struct UnguardedEsp {
  std::vector<double> values;
  std::optional<int> first_overflow;
};

UnguardedEsp esp_unguarded(const Spectrum& spectrum);

}  // namespace spdpp
