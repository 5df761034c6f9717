#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>

#include "spdpp/combinatorics.hpp"
#include "spdpp/esp.hpp"
#include "spdpp/experiments.hpp"
#include "support.hpp"

using namespace spdpp;
using testing::error_of;

TEST_CASE("spectrum specs parse and round-trip") {
  CHECK(parse_spectrum_spec("linear").kind == SpectrumKind::linear);
  CHECK(parse_spectrum_spec("exp_decay10").kind == SpectrumKind::exp_decay10);
  const auto u = parse_spectrum_spec("uniform:2:5");
  CHECK(u.kind == SpectrumKind::uniform);
  CHECK(u.lo == 2.0);
  CHECK(u.hi == 5.0);
  CHECK(parse_spectrum_spec(to_string(u)).hi == 5.0);
  CHECK(parse_spectrum_spec("from_file:/tmp/x.txt").path == "/tmp/x.txt");
  CHECK(error_of([] { parse_spectrum_spec("cubic"); }) == ErrorCode::input);
  CHECK(error_of([] { parse_spectrum_spec("uniform:5:2"); }) == ErrorCode::input);
}

TEST_CASE("deterministic spectra") {
  const auto lin = make_spectrum(parse_spectrum_spec("linear"), 4, 0);
  CHECK(lin[0] + lin[1] + lin[2] + lin[3] == doctest::Approx(10.0));
  const auto flat = make_spectrum(parse_spectrum_spec("flat"), 6, 0);
  CHECK(flat.positive_count() == 6);
  const auto dec = make_spectrum(parse_spectrum_spec("exp_decay"), 3, 0);
  double total = 0.0;
  for (double v : dec.values()) total += v;
  CHECK(total == doctest::Approx(std::exp(-1.0) + std::exp(-2.0) + std::exp(-3.0)));
}

TEST_CASE("random spectra depend only on the seed") {
  const auto spec = parse_spectrum_spec("uniform:1:10");
  const auto a = make_spectrum(spec, 50, 7);
  const auto b = make_spectrum(spec, 50, 7);
  const auto c = make_spectrum(spec, 50, 8);
  CHECK(std::ranges::equal(a.values(), b.values()));
  CHECK_FALSE(std::ranges::equal(a.values(), c.values()));
  for (double v : a.values()) {
    CHECK(v >= 1.0);
    CHECK(v <= 10.0);
  }
  const auto cloud = make_spectrum(parse_spectrum_spec("gaussian_cloud"), 30, 3, 0.5);
  CHECK(cloud.size() == 30);
  CHECK(cloud.positive_count() >= 1);
}

TEST_CASE("ESP comparison on the linear spectrum") {
  const auto cmp = compare_esp(make_spectrum(parse_spectrum_spec("linear"), 200, 0));
  REQUIRE(cmp.rows.size() == 199);
  REQUIRE(cmp.first_overflow.has_value());
  CHECK(*cmp.first_overflow == 131);
  for (const auto& row : cmp.rows) {
    CHECK(row.feasible);
    CHECK(row.ratio > 0.9);
    CHECK(row.ratio < 1.1);
    CHECK(row.overflowed == (row.k >= 131));
  }
}

TEST_CASE("ESP comparison flags sizes at or beyond the rank") {
  const auto cmp = compare_esp(Spectrum({1.0, 2.0, 3.0, 0.0, 0.0}));
  CHECK(cmp.rows[0].feasible);
  CHECK(cmp.rows[1].feasible);
  CHECK_FALSE(cmp.rows[2].feasible);
  CHECK_FALSE(cmp.rows[3].feasible);
}

TEST_CASE("log-log slope of a power law") {
  const std::vector<double> x{10, 20, 40, 80};
  std::vector<double> y;
  for (double v : x) y.push_back(3.0 * std::pow(v, -1.5));
  CHECK(log_log_slope(x, y) == doctest::Approx(-1.5));
  CHECK(error_of([] { log_log_slope({1.0}, {1.0}); }) == ErrorCode::input);
}

TEST_CASE("convergence study is reproducible and ordered") {
  const auto a = convergence_rates({50, 100}, 2, 11);
  const auto b = convergence_rates({50, 100}, 2, 11);
  REQUIRE(a.rows.size() == 2);
  CHECK(a.rows[0].k == 10);
  CHECK(a.rows[1].error_basic == b.rows[1].error_basic);
  for (const auto& r : a.rows) CHECK(r.error_corrected < r.error_basic);
  CHECK(a.slope_basic < 0.0);
  CHECK(a.slope_corrected < a.slope_basic);
}

TEST_CASE("random subsets are distinct and sorted") {
  const auto subsets = random_subsets(10, 3, 50, 4);
  REQUIRE(subsets.size() == 50);
  std::set<std::vector<std::size_t>> seen(subsets.begin(), subsets.end());
  CHECK(seen.size() == 50);
  for (const auto& s : subsets) {
    CHECK(s.size() == 3);
    CHECK(std::is_sorted(s.begin(), s.end()));
    CHECK(s.back() < 10);
  }
  CHECK(error_of([] { random_subsets(4, 2, 7, 1); }) == ErrorCode::input);
}

TEST_CASE("Haar orthonormal bases") {
  auto rng = testing::rng_for(70);
  const Eigen::MatrixXd q = random_orthonormal(9, 4, rng);
  CHECK((q.transpose() * q - Eigen::MatrixXd::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("subset study uses enumeration when it fits") {
  auto rng = testing::rng_for(71);
  const LEnsemble e = LEnsemble::from_matrix(testing::random_psd(10, 10, rng));
  const auto subsets = random_subsets(10, 2, 8, 5);
  const auto study = subset_inclusion_study(e, 3, subsets, 1000, 5);
  CHECK(study.reference_method == InclusionMethod::exact);
  CHECK(study.draws == 0);
  const auto exact = exact_inclusion(enumerate_kdpp(e, 3), 2);
  for (const auto& row : study.rows) {
    CHECK(row.reference == doctest::Approx(exact.at(row.subset)));
    CHECK(row.reference_se == 0.0);
    CHECK(row.corrected > 0.0);
  }
}

TEST_CASE("total variation trend shrinks with n") {
  const auto rows = tv_trend({8, 12, 16}, 3, 9);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].k == 2);
  CHECK(rows[1].mean_distance < rows[0].mean_distance);
  CHECK(rows[2].mean_distance < rows[1].mean_distance);
}

TEST_CASE("inference study draws a k-sized observation") {
  const auto grid = log_grid(0.1, 2.0, 9);
  const auto study = inference_study(60, 6, 0.5, grid, 21);
  CHECK(study.observed.size() == 6);
  CHECK(study.curve.taus.size() == 9);
  const auto again = inference_study(60, 6, 0.5, grid, 21);
  CHECK(again.observed == study.observed);
}
