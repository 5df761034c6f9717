#include "spdpp/oracle.hpp"

#include <cmath>
#include <numeric>
#include <ostream>
#include <string>

#include "spdpp/combinatorics.hpp"
#include "spdpp/error.hpp"
#include "spdpp/io.hpp"
#include "spdpp/kdpp.hpp"

namespace spdpp {

EnumeratedPmf enumerate_kdpp(const LEnsemble& ensemble, int k,
                             std::uint64_t budget) {
  const std::size_t n = ensemble.size();
  if (k < 0 || static_cast<std::size_t>(k) > n)
    throw Error(ErrorCode::input, "enumerate_kdpp: k outside [0, n]");
  if (static_cast<std::size_t>(k) > ensemble.rank())
    throw Error(ErrorCode::infeasible, "enumerate_kdpp: k = " + std::to_string(k) +
                                           " exceeds the rank " +
                                           std::to_string(ensemble.rank()));
  const auto kk = static_cast<std::size_t>(k);
  const std::uint64_t count = binomial_u64(n, kk);
  if (count > budget)
    throw Error(ErrorCode::budget,
                "enumerate_kdpp: C(" + std::to_string(n) + ", " +
                    std::to_string(k) + ") = " + std::to_string(count) +
                    " subsets required, budget is " + std::to_string(budget));

  EnumeratedPmf pmf;
  pmf.n_ = n;
  pmf.k_ = k;
  pmf.members_.reserve(count * kk);
  pmf.offsets_.reserve(count + 1);
  pmf.weights_.reserve(count);

  std::vector<std::size_t> subset(kk);
  std::iota(subset.begin(), subset.end(), std::size_t{0});
  do {
    pmf.members_.insert(pmf.members_.end(), subset.begin(), subset.end());
    pmf.offsets_.push_back(pmf.members_.size());
    pmf.weights_.push_back(principal_minor(ensemble.matrix(), subset));
  } while (next_colex(subset, n));

  pmf.normalizer_ = std::accumulate(pmf.weights_.begin(), pmf.weights_.end(), 0.0);
  if (!(pmf.normalizer_ > 0.0))
    throw Error(ErrorCode::infeasible,
                "enumerate_kdpp: every size-k minor vanishes (k > rank)");
  for (double& w : pmf.weights_) w /= pmf.normalizer_;
  return pmf;
}

EnumeratedPmf enumerate_dpp(const LEnsemble& ensemble) {
  const std::size_t n = ensemble.size();
  if (n > kMaxDppEnumerationSize)
    throw Error(ErrorCode::budget, "enumerate_dpp: 2^" + std::to_string(n) +
                                       " subsets required, limit is n <= " +
                                       std::to_string(kMaxDppEnumerationSize));
  EnumeratedPmf pmf;
  pmf.n_ = n;
  pmf.k_ = -1;
  const std::uint64_t total = std::uint64_t{1} << n;
  pmf.weights_.reserve(total);
  std::vector<std::size_t> subset;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    subset.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1U) subset.push_back(i);
    pmf.members_.insert(pmf.members_.end(), subset.begin(), subset.end());
    pmf.offsets_.push_back(pmf.members_.size());
    pmf.weights_.push_back(principal_minor(ensemble.matrix(), subset));
  }
  pmf.normalizer_ = std::accumulate(pmf.weights_.begin(), pmf.weights_.end(), 0.0);
  for (double& w : pmf.weights_) w /= pmf.normalizer_;
  return pmf;
}

InclusionMeasure::InclusionMeasure(std::size_t ground_size, int order,
                                   std::vector<double> values,
                                   InclusionMethod method)
    : n_(ground_size), m_(order), values_(std::move(values)), method_(method) {
  if (order < 0 || values_.size() != binomial_u64(n_, static_cast<std::size_t>(m_)))
    throw Error(ErrorCode::input,
                "inclusion measure needs C(n, m) values in colex order");
}

double InclusionMeasure::at(std::span<const std::size_t> alpha) const {
  const auto sorted = checked_subset(alpha, n_);
  if (static_cast<int>(sorted.size()) != m_)
    throw Error(ErrorCode::input, "subset order does not match the measure");
  return values_[colex_rank(sorted)];
}

double InclusionMeasure::total() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0);
}

InclusionMeasure exact_inclusion(const EnumeratedPmf& pmf, int m) {
  const std::size_t n = pmf.ground_size();
  if (m < 0 || static_cast<std::size_t>(m) > n)
    throw Error(ErrorCode::input, "exact_inclusion: order outside [0, n]");
  if (pmf.fixed_size() >= 0 && m > pmf.fixed_size())
    throw Error(ErrorCode::input, "exact_inclusion: order exceeds k");
  const auto mm = static_cast<std::size_t>(m);

  std::vector<double> values(binomial_u64(n, mm), 0.0);
  std::vector<std::size_t> positions(mm);
  std::vector<std::size_t> alpha(mm);
  for (std::size_t x = 0; x < pmf.size(); ++x) {
    const auto members = pmf.subset(x);
    if (members.size() < mm) continue;
    std::iota(positions.begin(), positions.end(), std::size_t{0});
    do {
      for (std::size_t i = 0; i < mm; ++i) alpha[i] = members[positions[i]];
      values[colex_rank(alpha)] += pmf.weight(x);
    } while (next_colex(positions, members.size()));
  }
  return InclusionMeasure(n, m, std::move(values), InclusionMethod::exact);
}

InclusionMeasure tabulate_inclusion(
    std::size_t n, int m,
    const std::function<double(std::span<const std::size_t>)>& fn,
    InclusionMethod method) {
  if (m < 0 || static_cast<std::size_t>(m) > n)
    throw Error(ErrorCode::input, "tabulate_inclusion: order outside [0, n]");
  const auto mm = static_cast<std::size_t>(m);
  const std::uint64_t count = binomial_u64(n, mm);
  if (count > kEnumerationBudget)
    throw Error(ErrorCode::budget, "tabulate_inclusion: too many subsets");
  std::vector<double> values;
  values.reserve(count);
  std::vector<std::size_t> alpha(mm);
  std::iota(alpha.begin(), alpha.end(), std::size_t{0});
  do {
    values.push_back(fn(alpha));
  } while (next_colex(alpha, n));
  return InclusionMeasure(n, m, std::move(values), method);
}

double tv_distance(const InclusionMeasure& p, const InclusionMeasure& q, int k) {
  if (p.order() != q.order())
    throw Error(ErrorCode::input, "tv_distance: measures of different order");
  if (p.ground_size() != q.ground_size())
    throw Error(ErrorCode::input, "tv_distance: different ground sets");
  if (k < p.order())
    throw Error(ErrorCode::input, "tv_distance: k below the measure order");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.values().size(); ++i)
    sum += std::abs(p.values()[i] - q.values()[i]);
  return sum / binomial(static_cast<std::size_t>(k),
                        static_cast<std::size_t>(p.order()));
}

McEstimate mc_inclusion(const SetSampler& sampler,
                        std::span<const std::size_t> alpha, std::size_t draws) {
  std::vector<std::vector<std::size_t>> one{{alpha.begin(), alpha.end()}};
  return mc_inclusion(sampler, one, draws).front();
}

std::vector<McEstimate> mc_inclusion(
    const SetSampler& sampler,
    const std::vector<std::vector<std::size_t>>& alphas, std::size_t draws) {
  if (draws == 0) throw Error(ErrorCode::input, "mc_inclusion: draws must be >= 1");
  std::vector<std::size_t> hits(alphas.size(), 0);
  for (std::size_t d = 0; d < draws; ++d) {
    const SampleSet x = sampler();
    for (std::size_t a = 0; a < alphas.size(); ++a)
      if (x.contains_all(alphas[a])) ++hits[a];
  }
  std::vector<McEstimate> out(alphas.size());
  const double nd = static_cast<double>(draws);
  for (std::size_t a = 0; a < alphas.size(); ++a) {
    const double p = static_cast<double>(hits[a]) / nd;
    out[a].estimate = p;
    out[a].std_error = std::sqrt(p * (1.0 - p) / nd);
  }
  return out;
}

void write_inclusion_csv(std::ostream& out, const InclusionMeasure& measure) {
  out << "subset,probability\n";
  const auto m = static_cast<std::size_t>(measure.order());
  std::vector<std::size_t> alpha(m);
  std::iota(alpha.begin(), alpha.end(), std::size_t{0});
  std::size_t i = 0;
  do {
    out << format_subset(alpha) << ',' << format_double(measure.values()[i++])
        << '\n';
  } while (next_colex(alpha, measure.ground_size()));
}

}  // namespace spdpp
