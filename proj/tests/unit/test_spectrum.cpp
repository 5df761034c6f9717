#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "spdpp/spectrum.hpp"
#include "support.hpp"

using namespace spdpp;
using testing::error_of;

TEST_CASE("spectrum validation and moments") {
  CHECK(error_of([] { Spectrum({1.0, -0.1}); }) == ErrorCode::input);
  CHECK(error_of([] { Spectrum({1.0, std::nan("")}); }) == ErrorCode::input);

  const Spectrum s({1.0, 3.0, 0.0});
  CHECK(s.max() == 3.0);
  CHECK(s.mu() == doctest::Approx(0.5 + 0.75));
  CHECK(s.sigma2() == doctest::Approx(0.25 + 3.0 / 16.0));
  CHECK(s.positive_count() == 2);
  CHECK(s.positive_count(0.5) == 1);
  CHECK(s.thresholded(0.5).values()[0] == 0.0);
  CHECK(s.scaled(2.0)[1] == 6.0);
  CHECK(error_of([&] { (void)s.scaled(0.0); }) == ErrorCode::input);
  const std::vector<std::size_t> drop{0, 2};
  CHECK(s.without(drop).size() == 1);
  CHECK(s.without(drop)[0] == 3.0);
  CHECK(s.suffix(1).size() == 2);
}

TEST_CASE("variance never exceeds mean") {
  auto rng = testing::rng_for(1);
  for (int t = 0; t < 50; ++t) {
    const Spectrum s(testing::log_uniform(1 + testing::uniform_int(rng, 0, 30), rng, -8, 8));
    CHECK(s.sigma2() <= s.mu());
  }
}

TEST_CASE("ensemble reconstructs its matrix with descending eigenvalues") {
  auto rng = testing::rng_for(2);
  const Eigen::MatrixXd l = testing::random_psd(12, 12, rng);
  const LEnsemble e = LEnsemble::from_matrix(l);
  const auto v = e.spectrum().values();
  CHECK(std::is_sorted(v.rbegin(), v.rend()));
  const Eigen::VectorXd lambda = Eigen::Map<const Eigen::VectorXd>(v.data(), 12);
  const Eigen::MatrixXd back =
      e.eigenvectors() * lambda.asDiagonal() * e.eigenvectors().transpose();
  CHECK((back - l).cwiseAbs().maxCoeff() < 1e-10 * l.cwiseAbs().maxCoeff());
  CHECK(e.rank() == 12);
}

TEST_CASE("low-rank ensembles report effective rank") {
  auto rng = testing::rng_for(3);
  const LEnsemble e = LEnsemble::from_matrix(testing::random_psd(10, 3, rng));
  CHECK(e.rank() == 3);
  CHECK(e.effective_spectrum().positive_count() == 3);
  for (double x : e.spectrum().values()) CHECK(x >= 0.0);
}

TEST_CASE("ensemble rejects asymmetric, non-square and indefinite input") {
  Eigen::MatrixXd a(2, 2);
  a << 1.0, 0.2, 0.3, 1.0;
  CHECK(error_of([&] { LEnsemble::from_matrix(a); }) == ErrorCode::input);
  CHECK(error_of([] { LEnsemble::from_matrix(Eigen::MatrixXd::Ones(2, 3)); }) ==
        ErrorCode::input);
  Eigen::MatrixXd b(2, 2);
  b << 1.0, 2.0, 2.0, 1.0;  // eigenvalues 3, -1
  CHECK(error_of([&] { LEnsemble::from_matrix(b); }) == ErrorCode::not_psd);
  Eigen::MatrixXd c(2, 2);
  c << 1.0, 0.0, 0.0, -1e-9;  // round-off sized: clamped
  CHECK(LEnsemble::from_matrix(c).spectrum().values()[1] == 0.0);
  Eigen::MatrixXd d(1, 1);
  d << std::nan("");
  CHECK(error_of([&] { LEnsemble::from_matrix(d); }) == ErrorCode::input);
}

TEST_CASE("gaussian kernel") {
  Eigen::MatrixXd pts(3, 2);
  pts << 0, 0, 1, 0, 0, 2;
  const LEnsemble e = gaussian_l_ensemble(PointCloud(pts), 1.0);
  CHECK(e.matrix()(0, 0) == 1.0);
  CHECK(e.matrix()(0, 1) == doctest::Approx(std::exp(-0.5)));
  CHECK(e.matrix()(1, 2) == doctest::Approx(std::exp(-2.5)));
  // Far-apart points: the kernel tends to the identity.
  const LEnsemble far = gaussian_l_ensemble(PointCloud(pts * 100.0), 1.0);
  CHECK((far.matrix() - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-300);
  CHECK(error_of([&] { gaussian_l_ensemble(PointCloud(pts), 0.0); }) == ErrorCode::input);
  CHECK(error_of([] { PointCloud(Eigen::MatrixXd(0, 2)); }) == ErrorCode::input);
}

TEST_CASE("degrees-of-freedom diagnostic") {
  const DofDiagnostic d = dof_diagnostic(Spectrum({1.0, 1.0, 1.0, 1.0}));
  CHECK(d.mu == doctest::Approx(2.0));
  CHECK(d.sigma2 == doctest::Approx(1.0));
  CHECK(d.trace_normalized == doctest::Approx(4.0));
  const DofDiagnostic e = dof_diagnostic(Spectrum({5.0, 1.0}));
  CHECK(e.trace_normalized == doctest::Approx(1.2));
}
