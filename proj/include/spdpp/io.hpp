#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace spdpp {

// Reads a numeric CSV (no header, comma separated) into a dense matrix. Every
// row must have the same number of columns.
Eigen::MatrixXd read_csv_matrix(const std::string& path);

// One value per line; blank lines are skipped.
std::vector<double> read_value_list(const std::string& path);

// %.17g, with "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double x);

// Hyphen-joined one-based indices, e.g. {0, 4} -> "1-5".
std::string format_subset(std::span<const std::size_t> subset);

}  // namespace spdpp
