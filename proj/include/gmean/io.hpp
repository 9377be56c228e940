#pragma once

// Text formats used by the command line tool.
//
// Matrix files: first non-comment line is "rows cols", followed by the
// entries row by row, whitespace separated. Lines whose first non-blank
// character is '#' are comments. Writes use 17 significant digits in
// scientific notation so a write/read round trip is exact in double.
//
// Trace CSV: fixed header "case,alg,step,rel_error,gamma,seconds". All
// columns except seconds are deterministic for a given build and command.

#include <gmean/types.hpp>

#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace gmean {

namespace detail {

// Strips comments and concatenates the remaining payload so the matrix body
// can flow across lines arbitrarily.
inline std::string strip_comments(std::istream& in) {
  std::string out, line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    out += line;
    out += ' ';
  }
  return out;
}

}  // namespace detail

template <typename Scalar = double>
DenseMatrix<Scalar> read_matrix(std::istream& in) {
  std::istringstream body(detail::strip_comments(in));
  long long rows = 0, cols = 0;
  if (!(body >> rows >> cols)) throw InvalidMatrix("matrix file: missing 'rows cols' header line");
  if (rows < 1 || cols < 1 || rows > 100000 || cols > 100000)
    throw InvalidMatrix("matrix file: dimensions out of range");
  DenseMatrix<Scalar> m(rows, cols);
  for (long long i = 0; i < rows; ++i)
    for (long long j = 0; j < cols; ++j) {
      Scalar v;
      if (!(body >> v)) throw InvalidMatrix("matrix file: fewer entries than rows*cols");
      m(i, j) = v;
    }
  Scalar extra;
  if (body >> extra) throw InvalidMatrix("matrix file: more entries than rows*cols");
  return m;
}

template <typename Scalar = double>
DenseMatrix<Scalar> read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidMatrix("cannot open matrix file: " + path);
  return read_matrix<Scalar>(in);
}

template <typename Scalar>
void write_matrix(std::ostream& out, const DenseMatrix<Scalar>& m) {
  out << m.rows() << ' ' << m.cols() << '\n';
  out << std::scientific << std::setprecision(16);
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) out << (j ? " " : "") << m(i, j);
    out << '\n';
  }
}

template <typename Scalar>
void write_matrix_file(const std::string& path, const DenseMatrix<Scalar>& m) {
  std::ofstream out(path);
  if (!out) throw InvalidMatrix("cannot open output file: " + path);
  write_matrix(out, m);
}

struct TraceRow {
  std::string case_name;
  std::string alg;
  int step = 0;
  double rel_error = std::numeric_limits<double>::quiet_NaN();
  double gamma = std::numeric_limits<double>::quiet_NaN();
  double seconds = 0;
};

inline constexpr const char* kTraceHeader = "case,alg,step,rel_error,gamma,seconds";

namespace detail {

inline void write_csv_value(std::ostream& out, double v) {
  if (std::isnan(v)) {
    out << "nan";
    return;
  }
  out << std::scientific << std::setprecision(16) << v;
}

}  // namespace detail

inline void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& rows) {
  out << kTraceHeader << '\n';
  for (const TraceRow& r : rows) {
    out << r.case_name << ',' << r.alg << ',' << r.step << ',';
    detail::write_csv_value(out, r.rel_error);
    out << ',';
    detail::write_csv_value(out, r.gamma);
    out << ',';
    detail::write_csv_value(out, r.seconds);
    out << '\n';
  }
}

inline void write_trace_csv_file(const std::string& path, const std::vector<TraceRow>& rows) {
  std::ofstream out(path);
  if (!out) throw InvalidMatrix("cannot open output file: " + path);
  write_trace_csv(out, rows);
}

}  // namespace gmean
