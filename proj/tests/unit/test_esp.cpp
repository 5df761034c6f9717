#include <doctest.h>

#include <cmath>
#include <numbers>

#include "spdpp/combinatorics.hpp"
#include "spdpp/esp.hpp"
#include "support.hpp"

using namespace spdpp;
using testing::error_of;

namespace {

std::vector<double> linear(std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<double>(i + 1);
  return v;
}

// Plain bisection on psi'(nu) - k, independent of the library solver.
double bisect_nu(const std::vector<double>& lambda, double k) {
  auto mean = [&](double nu) {
    double s = 0.0;
    for (double l : lambda) s += l * std::exp(nu) / (1.0 + l * std::exp(nu));
    return s;
  };
  double lo = -60.0, hi = 60.0;
  for (int i = 0; i < 300; ++i) {
    const double mid = 0.5 * (lo + hi);
    (mean(mid) < k ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("cumulant derivatives match finite differences") {
  auto rng = testing::rng_for(10);
  const Spectrum s(testing::log_uniform(20, rng));
  const double h = 1e-4;
  for (double nu : {-2.0, 0.0, 1.5}) {
    const auto d = psi_derivatives(s, nu);
    const auto up = psi_derivatives(s, nu + h);
    const auto dn = psi_derivatives(s, nu - h);
    CHECK(d.psi1 == doctest::Approx((up.psi - dn.psi) / (2 * h)).epsilon(1e-7));
    CHECK(d.psi2 == doctest::Approx((up.psi1 - dn.psi1) / (2 * h)).epsilon(1e-7));
    CHECK(d.psi3 == doctest::Approx((up.psi2 - dn.psi2) / (2 * h)).epsilon(1e-6));
  }
  CHECK(psi_derivatives(s, 0.0).psi == doctest::Approx(0.0));
  CHECK(psi_derivatives(s, 0.0).psi1 == doctest::Approx(s.mu()));
  CHECK(psi_derivatives(s, 0.0).psi2 == doctest::Approx(s.sigma2()));
}

TEST_CASE("cumulant derivatives stay finite for huge tilts") {
  const Spectrum s({1e-300, 1.0, 1e300});
  for (double nu : {-800.0, 800.0}) {
    const auto d = psi_derivatives(s, nu);
    CHECK(std::isfinite(d.psi));
    CHECK(std::isfinite(d.psi1));
    CHECK(d.psi2 >= 0.0);
  }
}

TEST_CASE("saddlepoint solves the moment equation and agrees with bisection") {
  auto rng = testing::rng_for(11);
  for (int t = 0; t < 40; ++t) {
    const std::size_t n = testing::uniform_int(rng, 2, 80);
    const auto lambda = testing::log_uniform(n, rng, -4, 4);
    const int k = static_cast<int>(testing::uniform_int(rng, 1, n - 1));
    const auto sol = solve_saddlepoint(Spectrum(lambda), k);
    CHECK(std::abs(sol.psi1 - k) <= 1e-9 * k);
    CHECK(sol.nu_star == doctest::Approx(bisect_nu(lambda, k)).epsilon(1e-7));
    CHECK(sol.iterations <= kSaddlepointMaxIterations);
    // Any start inside or outside the bracket converges to the same root.
    for (double start : {-50.0, 0.0, 50.0}) {
      const auto again = solve_saddlepoint(Spectrum(lambda), k, start);
      CHECK(again.nu_star == doctest::Approx(sol.nu_star).epsilon(1e-9));
    }
  }
}

TEST_CASE("saddlepoint closed form for a flat spectrum") {
  for (int k : {1, 5, 9}) {
    const auto sol = solve_saddlepoint(Spectrum(std::vector<double>(10, 2.0)), k);
    CHECK(sol.nu_star == doctest::Approx(std::log(k / (10.0 - k)) - std::log(2.0)));
  }
}

TEST_CASE("scaling the spectrum shifts the saddlepoint") {
  auto rng = testing::rng_for(12);
  const Spectrum s(testing::log_uniform(30, rng));
  for (double beta : {1e-3, 0.5, 7.0, 1e4}) {
    const auto a = solve_saddlepoint(s, 9);
    const auto b = solve_saddlepoint(s.scaled(beta), 9);
    CHECK(b.nu_star == doctest::Approx(a.nu_star - std::log(beta)).epsilon(1e-9));
    CHECK(b.psi2 == doctest::Approx(a.psi2).epsilon(1e-8));
  }
}

TEST_CASE("saddlepoint errors") {
  const Spectrum s({1.0, 2.0, 0.0});
  CHECK(error_of([&] { solve_saddlepoint(s, 0); }) == ErrorCode::input);
  CHECK(error_of([&] { solve_saddlepoint(s, 3); }) == ErrorCode::input);
  // Two positive eigenvalues: k = 2 has no finite solution.
  CHECK(error_of([&] { solve_saddlepoint(s, 2); }) == ErrorCode::infeasible);
  CHECK_NOTHROW(solve_saddlepoint(s, 1));
}

TEST_CASE("rescaled recurrence matches brute-force ESPs") {
  auto rng = testing::rng_for(13);
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = testing::uniform_int(rng, 1, 14);
    auto lambda = testing::log_uniform(n, rng, -5, 5);
    if (t % 4 == 0) lambda[0] = 0.0;
    const auto table = esp_exact(Spectrum(lambda));
    REQUIRE(table.size() == n + 1);
    CHECK(table[0] == 0.0);
    for (std::size_t k = 1; k <= n; ++k) {
      const long double truth = testing::brute_esp(lambda, k);
      if (truth == 0.0L) {
        CHECK(std::isinf(table[k]));
      } else {
        CHECK(table[k] == doctest::Approx(std::log(static_cast<double>(truth))).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("identity spectrum gives binomial ESPs") {
  const auto table = esp_exact(Spectrum(std::vector<double>(30, 1.0)));
  for (std::size_t k = 0; k <= 30; ++k)
    CHECK(table[k] == doctest::Approx(std::log(binomial(30, k))).epsilon(1e-13));
}

TEST_CASE("rescaled recurrence stays finite where doubles underflow") {
  std::vector<double> lambda(200);
  for (std::size_t i = 0; i < 200; ++i) lambda[i] = std::exp(-static_cast<double>(i + 1));
  const auto table = esp_exact(Spectrum(lambda));
  for (std::size_t k = 0; k <= 200; ++k) CHECK(std::isfinite(table[k]));
  CHECK(table[200] == doctest::Approx(-200.0 * 201.0 / 2.0));
}

TEST_CASE("saddlepoint ESP on the five-item linear spectrum") {
  const Spectrum s(linear(5));
  const auto exact = esp_exact(s);
  for (int k = 1; k <= 4; ++k) {
    const double ratio = std::exp(esp_saddlepoint(s, k).log_esp - exact[static_cast<std::size_t>(k)]);
    CHECK(ratio >= 1.0 / 1.09);
    CHECK(ratio <= 1.09);
  }
}

TEST_CASE("saddlepoint ESP of a large flat spectrum approaches log C(n, k)") {
  // Relative error of the normal approximation decays like 1/n.
  double previous = 1.0;
  for (std::size_t n : {100, 1000, 10000}) {
    const int k = static_cast<int>(n / 2);
    const double approx = esp_saddlepoint(Spectrum(std::vector<double>(n, 1.0)), k).log_esp;
    const double err = std::abs(approx - (std::lgamma(n + 1.0) - 2.0 * std::lgamma(n / 2 + 1.0)));
    CHECK(err < previous);
    previous = err;
  }
  CHECK(previous < 1e-4);
}

TEST_CASE("saddlepoint ESP formula") {
  const Spectrum s({0.5, 1.0, 2.0, 4.0});
  const auto est = esp_saddlepoint(s, 2);
  double partition = 0.0;
  for (double l : s.values()) partition += std::log1p(l * std::exp(est.solution.nu_star));
  CHECK(est.log_esp == doctest::Approx(partition - 2 * est.solution.nu_star -
                                       0.5 * std::log(2 * std::numbers::pi * est.solution.psi2)));
}

TEST_CASE("all-k saddlepoint table matches individual solves") {
  auto rng = testing::rng_for(14);
  const Spectrum s(testing::log_uniform(40, rng));
  const auto table = esp_saddlepoint_all(s);
  CHECK(table.method == EspMethod::saddlepoint);
  CHECK(table[0] == 0.0);
  for (int k = 1; k < 40; ++k) {
    CHECK(table.solved[static_cast<std::size_t>(k)]);
    CHECK(table[static_cast<std::size_t>(k)] == doctest::Approx(esp_saddlepoint(s, k).log_esp).epsilon(1e-12));
  }
  // k = n is the plain product.
  double logprod = 0.0;
  for (double l : s.values()) logprod += std::log(l);
  CHECK(table[40] == doctest::Approx(logprod));
}

TEST_CASE("all-k table marks sizes beyond the rank") {
  const auto table = esp_saddlepoint_all(Spectrum({3.0, 2.0, 0.0, 0.0}));
  CHECK(table[2] == doctest::Approx(std::log(6.0)));
  CHECK(std::isinf(table[3]));
  CHECK(table[3] < 0.0);
}

TEST_CASE("unguarded recurrence overflows for the linear spectrum near k = 131") {
  const auto raw = esp_unguarded(Spectrum(linear(200)));
  REQUIRE(raw.first_overflow.has_value());
  CHECK(*raw.first_overflow == 131);
  CHECK(std::isfinite(raw.values[130]));
  CHECK_FALSE(esp_unguarded(Spectrum(linear(5))).first_overflow.has_value());
  const auto small = esp_unguarded(Spectrum(linear(5)));
  CHECK(small.values[2] == 85.0);  // e_2(1..5)
  CHECK(small.values[5] == 120.0);
}
