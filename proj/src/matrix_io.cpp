#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "buyhold/errors.hpp"
#include "buyhold/matrix_io.hpp"
#include "buyhold/report.hpp"

namespace buyhold {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

}  // namespace

PayoffMatrix<double> load_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::vector<std::size_t> line_of_row;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<double> row;
    std::size_t start = 0, column = 0;
    for (;;) {
      ++column;
      const auto comma = line.find(',', start);
      const auto field = trim(std::string_view(line).substr(
          start, comma == std::string::npos ? std::string::npos : comma - start));
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (field.empty() || ec != std::errc() || ptr != field.data() + field.size() ||
          !std::isfinite(v)) {
        throw ParseError(line_no, column, "invalid number '" + std::string(field) + "'");
      }
      if (!(v > 0.0)) throw NonPositiveEntry(line_no, column, "payoff entries must be positive");
      row.push_back(v);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError(line_no, row.size(),
                       "expected " + std::to_string(rows.front().size()) + " columns");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ParseError(line_no + 1, 1, "empty matrix");

  MatrixX<double> m(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return PayoffMatrix<double>(std::move(m));
}

void write_matrix_csv(std::ostream& out, const MatrixX<double>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_number(m(i, j));
    }
    out << '\n';
  }
}

}  // namespace buyhold
