#include <doctest.h>

#include <cmath>
#include <numeric>

#include "spdpp/combinatorics.hpp"
#include "spdpp/esp.hpp"
#include "spdpp/experiments.hpp"
#include "spdpp/kdpp.hpp"
#include "support.hpp"

using namespace spdpp;
using testing::error_of;

namespace {

// Singleton inclusion of a k-DPP by summing det(L_X) over all k-subsets.
std::vector<double> brute_marginals(const Eigen::MatrixXd& l, std::size_t k) {
  const auto n = static_cast<std::size_t>(l.rows());
  std::vector<double> p(n, 0.0);
  double z = 0.0;
  std::vector<std::size_t> x(k);
  std::iota(x.begin(), x.end(), std::size_t{0});
  do {
    const double w = testing::minor_det(l, x);
    z += w;
    for (std::size_t i : x) p[i] += w;
  } while (next_colex(x, n));
  for (double& v : p) v /= z;
  return p;
}

}  // namespace

TEST_CASE("sum of size-k minors equals e_k of the eigenvalues") {
  auto rng = testing::rng_for(30);
  const Eigen::MatrixXd l = testing::random_psd(8, 8, rng);
  const LEnsemble e = LEnsemble::from_matrix(l);
  const auto esp = esp_exact(e.spectrum());
  for (std::size_t k = 1; k <= 8; ++k) {
    double z = 0.0;
    std::vector<std::size_t> x(k);
    std::iota(x.begin(), x.end(), std::size_t{0});
    do z += principal_minor(l, x);
    while (next_colex(x, 8));
    CHECK(std::log(z) == doctest::Approx(esp[k]).epsilon(1e-10));
  }
}

TEST_CASE("principal minors") {
  Eigen::MatrixXd m(3, 3);
  m << 2, 1, 0, 1, 2, 1, 0, 1, 2;
  const std::vector<std::size_t> a{0, 2}, b{0, 1, 2}, none;
  CHECK(principal_minor(m, a) == doctest::Approx(4.0));
  CHECK(principal_minor(m, b) == doctest::Approx(4.0));
  CHECK(principal_minor(m, none) == 1.0);
  const Eigen::MatrixXd rank1 = Eigen::VectorXd::Ones(3) * Eigen::RowVectorXd::Ones(3);
  CHECK(principal_minor(rank1, a) == 0.0);
}

TEST_CASE("marginal kernel of a tilted ensemble") {
  auto rng = testing::rng_for(31);
  const Eigen::MatrixXd l = testing::random_psd(6, 6, rng);
  const LEnsemble e = LEnsemble::from_matrix(l);
  const auto k0 = marginal_kernel(e, 0.0);
  const Eigen::MatrixXd direct =
      (Eigen::MatrixXd::Identity(6, 6) + l).inverse() * l;
  CHECK((k0.matrix - direct).cwiseAbs().maxCoeff() < 1e-10);
  const auto kinf = marginal_kernel(e, std::numeric_limits<double>::infinity());
  CHECK(kinf.trace() == doctest::Approx(6.0));
  CHECK(marginal_kernel(e, -std::numeric_limits<double>::infinity()).trace() == 0.0);
}

TEST_CASE("matched DPP has expected size k") {
  auto rng = testing::rng_for(32);
  for (int t = 0; t < 15; ++t) {
    const std::size_t n = testing::uniform_int(rng, 3, 40);
    const LEnsemble e = LEnsemble::from_matrix(testing::random_psd(n, n, rng));
    const int k = static_cast<int>(testing::uniform_int(rng, 1, n - 1));
    const auto kernel = match_dpp(e, k);
    CHECK(std::abs(kernel.trace() - k) < 1e-10);
    CHECK(std::abs(kernel.matrix.trace() - k) < 1e-9);
    for (Eigen::Index i = 0; i < kernel.eta.size(); ++i) {
      CHECK(kernel.eta(i) >= 0.0);
      CHECK(kernel.eta(i) <= 1.0);
    }
  }
}

TEST_CASE("matched DPP at full rank is the projection onto the range") {
  auto rng = testing::rng_for(33);
  const Eigen::MatrixXd v = random_orthonormal(7, 3, rng);
  const LEnsemble e = LEnsemble::from_matrix(0.5 * (v * v.transpose() + v * v.transpose()));
  const auto kernel = match_dpp(e, 3);
  CHECK(std::isinf(kernel.nu));
  CHECK((kernel.matrix - v * v.transpose()).cwiseAbs().maxCoeff() < 1e-10);
  CHECK(error_of([&] { match_dpp(e, 4); }) == ErrorCode::infeasible);
  CHECK(error_of([&] { match_dpp(e, 0); }) == ErrorCode::input);
}

TEST_CASE("exact first-order inclusion equals enumeration") {
  auto rng = testing::rng_for(34);
  for (int t = 0; t < 10; ++t) {
    const std::size_t n = testing::uniform_int(rng, 2, 9);
    const Eigen::MatrixXd l = testing::random_psd(n, n, rng);
    const LEnsemble e = LEnsemble::from_matrix(l);
    const std::size_t k = testing::uniform_int(rng, 1, n);
    const auto p = first_order_inclusion(e, static_cast<int>(k), InclusionMethod::exact);
    const auto truth = brute_marginals(l, k);
    for (std::size_t i = 0; i < n; ++i) CHECK(p[i] == doctest::Approx(truth[i]).epsilon(1e-9));
  }
}

TEST_CASE("approximate first-order inclusion sums to k and tracks the exact one") {
  auto rng = testing::rng_for(35);
  const LEnsemble e = gaussian_l_ensemble(gaussian_cloud(80, 2, rng), 1.0);
  const int k = 8;
  const auto exact = first_order_inclusion(e, k, InclusionMethod::exact);
  const auto basic = first_order_inclusion(e, k, InclusionMethod::basic);
  const auto corr = first_order_inclusion(e, k, InclusionMethod::corrected);
  CHECK(std::accumulate(basic.begin(), basic.end(), 0.0) == doctest::Approx(k));
  CHECK(std::accumulate(exact.begin(), exact.end(), 0.0) == doctest::Approx(k));
  double eb = 0.0, ec = 0.0;
  for (std::size_t i = 0; i < 80; ++i) {
    eb += std::abs(basic[i] - exact[i]);
    ec += std::abs(corr[i] - exact[i]);
  }
  CHECK(ec < eb);
  CHECK(error_of([&] { first_order_inclusion(e, k, InclusionMethod::empirical); }) ==
        ErrorCode::input);
}

TEST_CASE("high-order inclusion uses minors of the matched kernel") {
  auto rng = testing::rng_for(36);
  const LEnsemble e = LEnsemble::from_matrix(testing::random_psd(9, 9, rng));
  const int k = 4;
  const auto kernel = match_dpp(e, k);
  const std::vector<std::size_t> a{1, 5};
  CHECK(high_order_inclusion(e, k, a, false) ==
        doctest::Approx(testing::minor_det(kernel.matrix, a)));
  CHECK(correction_factor(kernel, k, 1) == 1.0);
  const std::vector<std::size_t> single{3};
  CHECK(high_order_inclusion(e, k, single, true) == doctest::Approx(kernel.matrix(3, 3)));

  // Corrected measures sum to C(k, m).
  for (int m = 1; m <= 3; ++m) {
    const double factor = correction_factor(kernel, k, m);
    std::vector<std::size_t> alpha(static_cast<std::size_t>(m));
    std::iota(alpha.begin(), alpha.end(), std::size_t{0});
    double sum = 0.0;
    do sum += factor * principal_minor(kernel.matrix, alpha);
    while (next_colex(alpha, 9));
    CHECK(sum == doctest::Approx(binomial(k, static_cast<std::size_t>(m))).epsilon(1e-10));
  }
  // Uncorrected order-m sums are e_m(eta) <= C(k, m).
  const std::vector<std::size_t> too_big(9, 0);
  CHECK(error_of([&] { high_order_inclusion(kernel, k, too_big, false); }) == ErrorCode::input);
}

TEST_CASE("projection sampler draws k items with det marginals") {
  auto rng = testing::rng_for(37);
  const Eigen::MatrixXd v = random_orthonormal(6, 2, rng);
  const Eigen::MatrixXd k = v * v.transpose();
  Rng draw(4);
  const std::size_t draws = 30000;
  std::vector<double> counts(6, 0.0);
  for (std::size_t d = 0; d < draws; ++d) {
    const SampleSet x = sample_projection_dpp(v, draw);
    REQUIRE(x.size() == 2);
    for (std::size_t i : x.indices()) counts[i] += 1.0;
  }
  for (Eigen::Index i = 0; i < 6; ++i) {
    const double p = k(i, i);
    CHECK(std::abs(counts[static_cast<std::size_t>(i)] / draws - p) <=
          4.0 * std::sqrt(p * (1 - p) / draws) + 1e-12);
  }
  Eigen::MatrixXd not_orthonormal = v;
  not_orthonormal.col(0) *= 2.0;
  CHECK(error_of([&] { sample_projection_dpp(not_orthonormal, draw); }) == ErrorCode::input);
}

TEST_CASE("k-DPP sampler: sizes, determinism and full-size draws") {
  auto rng = testing::rng_for(38);
  const LEnsemble e = LEnsemble::from_matrix(testing::random_psd(8, 8, rng));
  Rng a1(1), a2(2), b1(1), b2(2);
  for (int d = 0; d < 30; ++d) {
    const SampleSet x = sample_kdpp(e, 3, a1, a2);
    CHECK(x.size() == 3);
    CHECK(x == sample_kdpp(e, 3, b1, b2));
  }
  Rng c1(3), c2(4);
  CHECK(sample_kdpp(e, 8, c1, c2).size() == 8);
  CHECK(error_of([&] { sample_kdpp(e, 9, c1, c2); }) == ErrorCode::input);
}

TEST_CASE("k-DPP sampler marginals match enumeration") {
  auto rng = testing::rng_for(39);
  const Eigen::MatrixXd l = testing::random_psd(7, 7, rng);
  const LEnsemble e = LEnsemble::from_matrix(l);
  const auto truth = brute_marginals(l, 3);
  const KdppSampler sampler(e, 3, ConditionalRule::exact);
  Rng a(10), b(11);
  const std::size_t draws = 30000;
  std::vector<double> counts(7, 0.0);
  for (std::size_t d = 0; d < draws; ++d) {
    const SampleSet x = sampler.sample(a, b);
    for (std::size_t i : x.indices()) counts[i] += 1.0;
  }
  for (std::size_t i = 0; i < 7; ++i)
    CHECK(std::abs(counts[i] / draws - truth[i]) <=
          4.0 * std::sqrt(truth[i] * (1 - truth[i]) / draws));
}

TEST_CASE("varying-size DPP has mean size Tr(K)") {
  auto rng = testing::rng_for(40);
  const LEnsemble e = LEnsemble::from_matrix(testing::random_psd(10, 10, rng));
  const double nu = -1.0;
  const double mean = marginal_kernel(e, nu).trace();
  Rng a(1), b(2);
  double total = 0.0;
  const int draws = 20000;
  for (int d = 0; d < draws; ++d) total += static_cast<double>(sample_dpp(e, nu, a, b).size());
  CHECK(total / draws == doctest::Approx(mean).epsilon(0.02));
}
