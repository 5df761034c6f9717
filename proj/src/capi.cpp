#include "spdpp/spdpp.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <new>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "spdpp/combinatorics.hpp"
#include "spdpp/diagonal.hpp"
#include "spdpp/error.hpp"
#include "spdpp/esp.hpp"
#include "spdpp/experiments.hpp"
#include "spdpp/inference.hpp"
#include "spdpp/io.hpp"
#include "spdpp/kdpp.hpp"
#include "spdpp/oracle.hpp"

#ifndef SPDPP_VERSION_STRING
#define SPDPP_VERSION_STRING "0.0.0"
#endif

struct spdpp_spectrum {
  spdpp::Spectrum value;
};

struct spdpp_ensemble {
  spdpp::LEnsemble value;
};

struct spdpp_rng {
  spdpp::Rng eigen;
  spdpp::Rng projection;
};

struct spdpp_sampler {
  spdpp::KdppSampler value;
  std::size_t k;
};

struct spdpp_table {
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> text;
  std::vector<std::vector<double>> numbers;
  std::map<std::string, double> scalars;
};

namespace {

using spdpp::Error;
using spdpp::ErrorCode;

struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string& last_error() {
  thread_local std::string message;
  return message;
}

spdpp_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::input: return SPDPP_ERR_INPUT;
    case ErrorCode::not_psd: return SPDPP_ERR_NOT_PSD;
    case ErrorCode::numerical: return SPDPP_ERR_NUMERICAL;
    case ErrorCode::infeasible: return SPDPP_ERR_INFEASIBLE;
    case ErrorCode::convergence: return SPDPP_ERR_CONVERGENCE;
    case ErrorCode::degenerate: return SPDPP_ERR_DEGENERATE;
    case ErrorCode::budget: return SPDPP_ERR_BUDGET;
    case ErrorCode::io: return SPDPP_ERR_IO;
  }
  return SPDPP_ERR_INTERNAL;
}

template <class F>
spdpp_status guard(F&& body) {
  try {
    body();
    last_error().clear();
    return SPDPP_OK;
  } catch (const Error& e) {
    last_error() = e.what();
    return to_status(e.code());
  } catch (const CapacityError& e) {
    last_error() = e.what();
    return SPDPP_ERR_BUFFER;
  } catch (const std::bad_alloc&) {
    last_error() = "out of memory";
    return SPDPP_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error() = e.what();
    return SPDPP_ERR_INTERNAL;
  } catch (...) {
    last_error() = "unknown failure";
    return SPDPP_ERR_INTERNAL;
  }
}

template <class T>
void require(const T* p, const char* what) {
  if (p == nullptr) throw Error(ErrorCode::input, std::string(what) + " is NULL");
}

void require_capacity(std::size_t needed, std::size_t capacity) {
  if (capacity < needed)
    throw CapacityError("output needs " + std::to_string(needed) +
                        " slots, capacity is " + std::to_string(capacity));
}

template <class T>
void copy_out(const T& values, double* out, std::size_t capacity) {
  require(out, "output buffer");
  require_capacity(values.size(), capacity);
  std::copy(values.begin(), values.end(), out);
}

std::vector<std::size_t> indices(const std::size_t* data, std::size_t m) {
  if (m > 0) require(data, "index array");
  return {data, data + m};
}

spdpp::InclusionMethod to_method(spdpp_method method) {
  switch (method) {
    case SPDPP_METHOD_EXACT: return spdpp::InclusionMethod::exact;
    case SPDPP_METHOD_BASIC: return spdpp::InclusionMethod::basic;
    case SPDPP_METHOD_CORRECTED: return spdpp::InclusionMethod::corrected;
  }
  throw Error(ErrorCode::input, "unknown inclusion method");
}

spdpp::ConditionalRule to_rule(spdpp_rule rule) {
  switch (rule) {
    case SPDPP_RULE_AUTOMATIC: return spdpp::ConditionalRule::automatic;
    case SPDPP_RULE_EXACT: return spdpp::ConditionalRule::exact;
    case SPDPP_RULE_CORRECTED: return spdpp::ConditionalRule::corrected;
  }
  throw Error(ErrorCode::input, "unknown sampling rule");
}

spdpp::EspEvaluation to_esp(spdpp_esp_eval esp) {
  switch (esp) {
    case SPDPP_ESP_AUTOMATIC: return spdpp::EspEvaluation::automatic;
    case SPDPP_ESP_EXACT: return spdpp::EspEvaluation::exact;
    case SPDPP_ESP_SADDLEPOINT: return spdpp::EspEvaluation::saddlepoint;
  }
  throw Error(ErrorCode::input, "unknown ESP evaluation");
}

Eigen::MatrixXd row_major(const double* data, std::size_t rows, std::size_t cols) {
  require(data, "matrix");
  const auto r = static_cast<Eigen::Index>(rows);
  const auto c = static_cast<Eigen::Index>(cols);
  return Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                        Eigen::RowMajor>>(data, r, c);
}

class TableBuilder {
 public:
  explicit TableBuilder(std::vector<std::string> names) {
    table_.names = std::move(names);
  }

  TableBuilder& text(std::string value) {
    row_text_.push_back(std::move(value));
    row_numbers_.push_back(std::numeric_limits<double>::quiet_NaN());
    return *this;
  }
  TableBuilder& number(double value) {
    row_text_.push_back(spdpp::format_double(value));
    row_numbers_.push_back(value);
    return *this;
  }
  void end_row() {
    if (row_text_.size() != table_.names.size())
      throw std::logic_error("table row width mismatch");
    table_.text.push_back(std::move(row_text_));
    table_.numbers.push_back(std::move(row_numbers_));
    row_text_.clear();
    row_numbers_.clear();
  }
  void scalar(const std::string& name, double value) { table_.scalars[name] = value; }

  spdpp_table* release() { return new spdpp_table(std::move(table_)); }

 private:
  spdpp_table table_;
  std::vector<std::string> row_text_;
  std::vector<double> row_numbers_;
};

}  // namespace

extern "C" {

const char* spdpp_version(void) { return SPDPP_VERSION_STRING; }

const char* spdpp_status_string(spdpp_status status) {
  switch (status) {
    case SPDPP_OK: return "ok";
    case SPDPP_ERR_INPUT: return "invalid input";
    case SPDPP_ERR_NOT_PSD: return "matrix not positive semidefinite";
    case SPDPP_ERR_NUMERICAL: return "numerical failure";
    case SPDPP_ERR_INFEASIBLE: return "infeasible";
    case SPDPP_ERR_CONVERGENCE: return "no convergence";
    case SPDPP_ERR_DEGENERATE: return "degenerate";
    case SPDPP_ERR_BUDGET: return "budget exceeded";
    case SPDPP_ERR_IO: return "i/o failure";
    case SPDPP_ERR_BUFFER: return "output buffer too small";
    case SPDPP_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* spdpp_last_error(void) { return last_error().c_str(); }

spdpp_status spdpp_spectrum_create(const double* values, std::size_t n,
                                   spdpp_spectrum** out) {
  return guard([&] {
    require(out, "out");
    if (n > 0) require(values, "values");
    *out = new spdpp_spectrum{spdpp::Spectrum(std::vector<double>(values, values + n))};
  });
}

spdpp_status spdpp_spectrum_from_spec(const char* spec, std::size_t n,
                                      std::uint64_t seed, double tau,
                                      spdpp_spectrum** out) {
  return guard([&] {
    require(spec, "spec");
    require(out, "out");
    *out = new spdpp_spectrum{
        spdpp::make_spectrum(spdpp::parse_spectrum_spec(spec), n, seed, tau)};
  });
}

void spdpp_spectrum_destroy(spdpp_spectrum* spectrum) { delete spectrum; }

std::size_t spdpp_spectrum_size(const spdpp_spectrum* spectrum) {
  return spectrum ? spectrum->value.size() : 0;
}

spdpp_status spdpp_spectrum_values(const spdpp_spectrum* spectrum, double* out,
                                   std::size_t capacity) {
  return guard([&] {
    require(spectrum, "spectrum");
    copy_out(spectrum->value.values(), out, capacity);
  });
}

spdpp_status spdpp_log_esp_exact(const spdpp_spectrum* spectrum, double* out,
                                 std::size_t capacity) {
  return guard([&] {
    require(spectrum, "spectrum");
    copy_out(spdpp::esp_exact(spectrum->value).values, out, capacity);
  });
}

spdpp_status spdpp_log_esp_saddlepoint(const spdpp_spectrum* spectrum, int k,
                                       double* log_esp, double* nu_star) {
  return guard([&] {
    require(spectrum, "spectrum");
    require(log_esp, "log_esp");
    const auto estimate = spdpp::esp_saddlepoint(spectrum->value, k);
    *log_esp = estimate.log_esp;
    if (nu_star) *nu_star = estimate.solution.nu_star;
  });
}

spdpp_status spdpp_esp_unguarded_overflow(const spdpp_spectrum* spectrum,
                                          int* first_overflow) {
  return guard([&] {
    require(spectrum, "spectrum");
    require(first_overflow, "first_overflow");
    *first_overflow = spdpp::esp_unguarded(spectrum->value).first_overflow.value_or(-1);
  });
}

spdpp_status spdpp_diagonal_inclusion(const spdpp_spectrum* spectrum, int k,
                                      const std::size_t* alpha, std::size_t m,
                                      spdpp_method method, double* probability) {
  return guard([&] {
    require(spectrum, "spectrum");
    require(probability, "probability");
    const auto a = indices(alpha, m);
    switch (to_method(method)) {
      case spdpp::InclusionMethod::exact:
        *probability = spdpp::inclusion_exact(spectrum->value, k, a);
        break;
      case spdpp::InclusionMethod::basic: {
        const auto sorted = spdpp::checked_subset(a, spectrum->value.size());
        const auto pi = spdpp::inclusion_basic(spectrum->value, k).probabilities;
        double p = 1.0;
        for (std::size_t i : sorted) p *= pi[i];
        *probability = p;
        break;
      }
      default:
        *probability = spdpp::inclusion_corrected(spectrum->value, k, a).probability;
        break;
    }
  });
}

spdpp_status spdpp_ensemble_from_matrix(const double* matrix, std::size_t n,
                                        spdpp_ensemble** out) {
  return guard([&] {
    require(out, "out");
    *out = new spdpp_ensemble{spdpp::LEnsemble::from_matrix(row_major(matrix, n, n))};
  });
}

spdpp_status spdpp_ensemble_from_csv(const char* path, spdpp_ensemble** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new spdpp_ensemble{spdpp::LEnsemble::from_matrix(spdpp::read_csv_matrix(path))};
  });
}

spdpp_status spdpp_ensemble_diagonal(const spdpp_spectrum* spectrum,
                                     spdpp_ensemble** out) {
  return guard([&] {
    require(spectrum, "spectrum");
    require(out, "out");
    const auto values = spectrum->value.values();
    const Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(
        values.data(), static_cast<Eigen::Index>(values.size()));
    *out = new spdpp_ensemble{spdpp::LEnsemble::from_matrix(diag.asDiagonal())};
  });
}

spdpp_status spdpp_ensemble_gaussian(const double* points, std::size_t n,
                                     std::size_t dimension, double tau,
                                     spdpp_ensemble** out) {
  return guard([&] {
    require(out, "out");
    const spdpp::PointCloud cloud(row_major(points, n, dimension));
    *out = new spdpp_ensemble{spdpp::gaussian_l_ensemble(cloud, tau)};
  });
}

spdpp_status spdpp_ensemble_gaussian_cloud(std::size_t n, std::uint64_t seed,
                                           double tau, spdpp_ensemble** out) {
  return guard([&] {
    require(out, "out");
    spdpp::Rng rng = spdpp::Rng::stream(seed, spdpp::Stream::cloud);
    const auto cloud = spdpp::gaussian_cloud(n, spdpp::kCloudDimension, rng);
    *out = new spdpp_ensemble{spdpp::gaussian_l_ensemble(cloud, tau)};
  });
}

void spdpp_ensemble_destroy(spdpp_ensemble* ensemble) { delete ensemble; }

std::size_t spdpp_ensemble_size(const spdpp_ensemble* ensemble) {
  return ensemble ? ensemble->value.size() : 0;
}

std::size_t spdpp_ensemble_rank(const spdpp_ensemble* ensemble) {
  return ensemble ? ensemble->value.rank() : 0;
}

// Effective spectrum: values under the rank tolerance are reported as 0.
spdpp_status spdpp_ensemble_spectrum(const spdpp_ensemble* ensemble,
                                     spdpp_spectrum** out) {
  return guard([&] {
    require(ensemble, "ensemble");
    require(out, "out");
    *out = new spdpp_spectrum{ensemble->value.effective_spectrum()};
  });
}

spdpp_status spdpp_match_dpp(const spdpp_ensemble* ensemble, int k, double* nu,
                             double* kernel, std::size_t capacity) {
  return guard([&] {
    require(ensemble, "ensemble");
    const auto matched = spdpp::match_dpp(ensemble->value, k);
    if (kernel) {
      const std::size_t n = ensemble->value.size();
      require_capacity(n * n, capacity);
      Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                               Eigen::RowMajor>>(kernel, static_cast<Eigen::Index>(n),
                                                 static_cast<Eigen::Index>(n)) =
          matched.matrix;
    }
    if (nu) *nu = matched.nu;
  });
}

spdpp_status spdpp_first_order_inclusion(const spdpp_ensemble* ensemble, int k,
                                         spdpp_method method, double* out,
                                         std::size_t capacity) {
  return guard([&] {
    require(ensemble, "ensemble");
    copy_out(spdpp::first_order_inclusion(ensemble->value, k, to_method(method)),
             out, capacity);
  });
}

spdpp_status spdpp_high_order_inclusion(const spdpp_ensemble* ensemble, int k,
                                        const std::size_t* alpha, std::size_t m,
                                        int corrected, double* probability) {
  return guard([&] {
    require(ensemble, "ensemble");
    require(probability, "probability");
    *probability = spdpp::high_order_inclusion(ensemble->value, k,
                                               indices(alpha, m), corrected != 0);
  });
}

spdpp_status spdpp_oracle_inclusion(const spdpp_ensemble* ensemble, int k,
                                    int m, double* out, std::size_t capacity) {
  return guard([&] {
    require(ensemble, "ensemble");
    const auto measure =
        spdpp::exact_inclusion(spdpp::enumerate_kdpp(ensemble->value, k), m);
    copy_out(measure.values(), out, capacity);
  });
}

spdpp_status spdpp_rng_create(std::uint64_t seed, spdpp_rng** out) {
  return guard([&] {
    require(out, "out");
    *out = new spdpp_rng{spdpp::Rng::stream(seed, spdpp::Stream::eigen_step),
                         spdpp::Rng::stream(seed, spdpp::Stream::projection_step)};
  });
}

void spdpp_rng_destroy(spdpp_rng* rng) { delete rng; }

spdpp_status spdpp_sampler_create(const spdpp_ensemble* ensemble, int k,
                                  spdpp_rule rule, spdpp_sampler** out) {
  return guard([&] {
    require(ensemble, "ensemble");
    require(out, "out");
    *out = new spdpp_sampler{spdpp::KdppSampler(ensemble->value, k, to_rule(rule)),
                             static_cast<std::size_t>(k)};
  });
}

void spdpp_sampler_destroy(spdpp_sampler* sampler) { delete sampler; }

spdpp_status spdpp_sampler_draw(const spdpp_sampler* sampler, spdpp_rng* rng,
                                std::size_t* out, std::size_t capacity) {
  return guard([&] {
    require(sampler, "sampler");
    require(rng, "rng");
    require(out, "out");
    require_capacity(sampler->k, capacity);
    const auto x = sampler->value.sample(rng->eigen, rng->projection);
    std::copy(x.indices().begin(), x.indices().end(), out);
  });
}

spdpp_status spdpp_loglik_kdpp(const spdpp_ensemble* ensemble,
                               const std::size_t* observed, std::size_t k,
                               spdpp_esp_eval esp, double* value, int* feasible) {
  return guard([&] {
    require(ensemble, "ensemble");
    require(value, "value");
    const spdpp::SampleSet x(indices(observed, k), ensemble->value.size());
    const auto ll = spdpp::loglik_kdpp(ensemble->value, x, to_esp(esp));
    *value = ll.value;
    if (feasible) *feasible = ll.feasible ? 1 : 0;
  });
}

spdpp_status spdpp_profile_loglik_dpp(const spdpp_ensemble* ensemble,
                                      const std::size_t* observed, std::size_t k,
                                      double* value, int* feasible) {
  return guard([&] {
    require(ensemble, "ensemble");
    require(value, "value");
    const spdpp::SampleSet x(indices(observed, k), ensemble->value.size());
    const auto ll = spdpp::profile_loglik_dpp(ensemble->value, x);
    *value = ll.value;
    if (feasible) *feasible = ll.feasible ? 1 : 0;
  });
}

void spdpp_table_destroy(spdpp_table* table) { delete table; }

std::size_t spdpp_table_rows(const spdpp_table* table) {
  return table ? table->text.size() : 0;
}

std::size_t spdpp_table_columns(const spdpp_table* table) {
  return table ? table->names.size() : 0;
}

const char* spdpp_table_column_name(const spdpp_table* table, std::size_t column) {
  if (!table || column >= table->names.size()) return nullptr;
  return table->names[column].c_str();
}

spdpp_status spdpp_table_value(const spdpp_table* table, std::size_t row,
                               std::size_t column, double* value) {
  return guard([&] {
    require(table, "table");
    require(value, "value");
    if (row >= table->numbers.size() || column >= table->names.size())
      throw Error(ErrorCode::input, "table cell out of range");
    *value = table->numbers[row][column];
  });
}

const char* spdpp_table_text(const spdpp_table* table, std::size_t row,
                             std::size_t column) {
  if (!table || row >= table->text.size() || column >= table->names.size())
    return nullptr;
  return table->text[row][column].c_str();
}

spdpp_status spdpp_table_scalar(const spdpp_table* table, const char* name,
                                double* value) {
  return guard([&] {
    require(table, "table");
    require(name, "name");
    require(value, "value");
    const auto it = table->scalars.find(name);
    if (it == table->scalars.end())
      throw Error(ErrorCode::input, std::string("no scalar named ") + name);
    *value = it->second;
  });
}

spdpp_status spdpp_table_write_csv(const spdpp_table* table, const char* path) {
  return guard([&] {
    require(table, "table");
    const bool to_stdout = path == nullptr || std::string(path) == "-";
    std::ofstream file;
    if (!to_stdout) {
      file.open(path, std::ios::binary);
      if (!file) throw Error(ErrorCode::io, std::string("cannot open ") + path);
    }
    std::ostream& out = to_stdout ? std::cout : file;
    auto write_row = [&out](const std::vector<std::string>& cells) {
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c) out << ',';
        out << cells[c];
      }
      out << '\n';
    };
    write_row(table->names);
    for (const auto& row : table->text) write_row(row);
    out.flush();
    if (!out) throw Error(ErrorCode::io, "write failed");
  });
}

spdpp_status spdpp_run_esp(const spdpp_spectrum* spectrum, spdpp_table** out) {
  return guard([&] {
    require(spectrum, "spectrum");
    require(out, "out");
    const auto cmp = spdpp::compare_esp(spectrum->value);
    TableBuilder table({"k", "log_esp_exact", "log_esp_saddle", "ratio",
                        "feasible", "overflowed"});
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    std::size_t excluded = 0;
    for (const auto& row : cmp.rows) {
      table.number(row.k).number(row.log_exact).number(row.log_saddle)
          .number(row.ratio).number(row.feasible ? 1 : 0)
          .number(row.overflowed ? 1 : 0).end_row();
      if (row.feasible) {
        lo = std::min(lo, row.ratio);
        hi = std::max(hi, row.ratio);
      } else {
        ++excluded;
      }
    }
    table.scalar("first_overflow", cmp.first_overflow.value_or(-1));
    table.scalar("min_ratio", lo);
    table.scalar("max_ratio", hi);
    table.scalar("infeasible_rows", static_cast<double>(excluded));
    *out = table.release();
  });
}

spdpp_status spdpp_run_rates(const std::size_t* ns, std::size_t count,
                             std::size_t repeats, std::uint64_t seed, double lo,
                             double hi, spdpp_table** out) {
  return guard([&] {
    require(out, "out");
    const auto study = spdpp::convergence_rates(indices(ns, count), repeats, seed, lo, hi);
    TableBuilder table({"n", "k", "error_basic", "error_corrected"});
    for (const auto& row : study.rows)
      table.number(static_cast<double>(row.n)).number(row.k)
          .number(row.error_basic).number(row.error_corrected).end_row();
    table.scalar("slope_basic", study.slope_basic);
    table.scalar("slope_corrected", study.slope_corrected);
    *out = table.release();
  });
}

spdpp_status spdpp_run_inclusion(const spdpp_ensemble* ensemble, int k, int m,
                                 std::size_t subsets, std::size_t draws,
                                 std::uint64_t seed, spdpp_table** out) {
  return guard([&] {
    require(ensemble, "ensemble");
    require(out, "out");
    if (m < 1) throw Error(ErrorCode::input, "order m must be >= 1");
    const auto& ens = ensemble->value;

    std::vector<spdpp::SubsetInclusionRow> rows;
    bool monte_carlo = false;
    if (m == 1) {
      const auto exact = spdpp::first_order_inclusion(ens, k, spdpp::InclusionMethod::exact);
      const auto basic = spdpp::first_order_inclusion(ens, k, spdpp::InclusionMethod::basic);
      const auto corr = spdpp::first_order_inclusion(ens, k, spdpp::InclusionMethod::corrected);
      for (std::size_t i = 0; i < ens.size(); ++i)
        rows.push_back({{i}, exact[i], 0.0, basic[i], corr[i]});
    } else {
      const auto alphas = spdpp::random_subsets(ens.size(), static_cast<std::size_t>(m),
                                                subsets, seed);
      auto study = spdpp::subset_inclusion_study(ens, k, alphas, draws, seed);
      monte_carlo = study.reference_method == spdpp::InclusionMethod::empirical;
      rows = std::move(study.rows);
    }
    std::stable_sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
      return a.reference < b.reference;
    });

    TableBuilder table({"item_or_subset", "exact_or_mc", "basic", "corrected", "std_error"});
    double mad_basic = 0.0, mad_corrected = 0.0;
    std::size_t within = 0;
    for (const auto& row : rows) {
      table.text(spdpp::format_subset(row.subset)).number(row.reference)
          .number(row.basic).number(row.corrected).number(row.reference_se).end_row();
      mad_basic += std::abs(row.basic - row.reference);
      mad_corrected += std::abs(row.corrected - row.reference);
      if (!monte_carlo || std::abs(row.corrected - row.reference) <= 3.0 * row.reference_se)
        ++within;
    }
    const auto count = static_cast<double>(std::max<std::size_t>(rows.size(), 1));
    table.scalar("monte_carlo", monte_carlo ? 1 : 0);
    table.scalar("draws", monte_carlo ? static_cast<double>(draws) : 0.0);
    table.scalar("mad_basic", mad_basic / count);
    table.scalar("mad_corrected", mad_corrected / count);
    table.scalar("within_3se", static_cast<double>(within));
    *out = table.release();
  });
}

spdpp_status spdpp_run_infer(std::size_t n, int k, double tau_true,
                             double grid_lo, double grid_hi,
                             std::size_t grid_points, std::uint64_t seed,
                             spdpp_table** out) {
  return guard([&] {
    require(out, "out");
    const auto grid = spdpp::log_grid(grid_lo, grid_hi, grid_points);
    const auto study = spdpp::inference_study(n, k, tau_true, grid, seed);
    const auto& curve = study.curve;
    TableBuilder table({"tau", "loglik_kdpp", "loglik_dpp_profile", "feasible",
                        "gap_residual"});
    double max_gap = 0.0;
    for (std::size_t g = 0; g < curve.taus.size(); ++g) {
      table.number(curve.taus[g]).number(curve.kdpp_ll[g])
          .number(curve.dpp_profile_ll[g]).number(curve.feasible[g] ? 1 : 0)
          .number(curve.gap_residual[g]).end_row();
      if (curve.feasible[g]) max_gap = std::max(max_gap, std::abs(curve.gap_residual[g]));
    }
    table.scalar("argmax_kdpp", static_cast<double>(curve.argmax_kdpp));
    table.scalar("argmax_dpp", static_cast<double>(curve.argmax_dpp));
    table.scalar("max_abs_gap_residual", max_gap);
    *out = table.release();
  });
}

spdpp_status spdpp_run_tv(const std::size_t* ns, std::size_t count,
                          std::size_t repeats, std::uint64_t seed, double lo,
                          double hi, spdpp_table** out) {
  return guard([&] {
    require(out, "out");
    const auto rows = spdpp::tv_trend(indices(ns, count), repeats, seed, lo, hi);
    TableBuilder table({"n", "k", "mean_tv"});
    bool decreasing = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      table.number(static_cast<double>(rows[i].n)).number(rows[i].k)
          .number(rows[i].mean_distance).end_row();
      if (i > 0 && !(rows[i].mean_distance < rows[i - 1].mean_distance))
        decreasing = false;
    }
    table.scalar("decreasing", decreasing ? 1 : 0);
    *out = table.release();
  });
}

}  // extern "C"
