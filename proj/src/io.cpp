#include "spdpp/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "spdpp/error.hpp"

namespace spdpp {

namespace {

double parse_number(const std::string& token, const std::string& path,
                    std::size_t line) {
  std::size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(token, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used])))
    ++used;
  if (used == 0 || used != token.size())
    throw Error(ErrorCode::io, path + ":" + std::to_string(line) +
                                   ": cannot parse '" + token + "'");
  return value;
}

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

Eigen::MatrixXd read_csv_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string token;
    while (std::getline(ss, token, ','))
      row.push_back(parse_number(token, path, line_no));
    if (!rows.empty() && row.size() != rows.front().size())
      throw Error(ErrorCode::io, path + ":" + std::to_string(line_no) +
                                     ": inconsistent column count");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw Error(ErrorCode::io, path + ": no data");

  Eigen::MatrixXd out(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) out(i, j) = rows[i][j];
  return out;
}

std::vector<double> read_value_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::io, "cannot open " + path);
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    values.push_back(parse_number(line, path, line_no));
  }
  return values;
}

std::string format_double(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_subset(std::span<const std::size_t> subset) {
  std::string out;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (i) out += '-';
    out += std::to_string(subset[i] + 1);
  }
  return out;
}

}  // namespace spdpp
