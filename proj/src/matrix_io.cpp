#include "curkit/matrix_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "curkit/errors.hpp"

namespace curkit {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

bool parse_double(const std::string& cell, double& out) {
  std::string t = trim(cell);
  if (t.empty()) return false;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  if (*first == '+') ++first;  // from_chars rejects a leading '+'
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last) return false;
  return std::isfinite(out);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  cells.push_back(cur);
  return cells;
}

// A cell is "data-like" if it parses as a finite double, or is a missing
// marker while missing values are allowed.
bool is_data_cell(const std::string& cell, const LoadOptions& opt) {
  double v;
  if (parse_double(cell, v)) return true;
  if (opt.allow_missing) {
    std::string t = trim(cell);
    return t.empty() || t == opt.missing_marker;
  }
  return false;
}

double cell_value(const std::string& cell, const LoadOptions& opt,
                  std::size_t line_no) {
  double v;
  if (parse_double(cell, v)) return v;
  std::string t = trim(cell);
  if (opt.allow_missing && (t.empty() || t == opt.missing_marker))
    return std::numeric_limits<double>::quiet_NaN();
  throw DataError("csv: non-numeric cell '" + t + "' at line " +
                  std::to_string(line_no));
}

void format_value(std::string& out, double v) {
  if (std::isnan(v)) return;  // missing cells are written empty
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  out += buf;
}

}  // namespace

LabeledMatrix load_matrix_csv(std::istream& in, const LoadOptions& opt) {
  std::vector<std::vector<std::string>> raw;
  std::vector<std::size_t> line_numbers;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    raw.push_back(split_csv_line(line));
    line_numbers.push_back(line_no);
  }
  if (raw.empty()) throw DataError("csv: empty input");

  // Header row: any cell in the first row that is not data-like.
  bool header = std::any_of(raw[0].begin(), raw[0].end(), [&](const auto& c) {
    return !is_data_cell(c, opt);
  });
  if (header && raw.size() == 1) throw DataError("csv: header row but no data");
  const std::size_t first_data = header ? 1 : 0;

  // Leading label column: every data row starts with a non-data cell.
  bool label_col = true;
  for (std::size_t r = first_data; r < raw.size(); ++r) {
    if (raw[r].empty() || is_data_cell(raw[r][0], opt)) {
      label_col = false;
      break;
    }
  }

  const std::size_t col0 = label_col ? 1 : 0;
  if (raw[first_data].size() <= col0)
    throw DataError("csv: no data columns at line " +
                    std::to_string(line_numbers[first_data]));
  const std::size_t width = raw[first_data].size() - col0;

  LabeledMatrix out;
  out.matrix.resize(static_cast<Index>(raw.size() - first_data),
                    static_cast<Index>(width));
  for (std::size_t r = first_data; r < raw.size(); ++r) {
    const auto& cells = raw[r];
    if (cells.size() - col0 != width)
      throw DataError("csv: inconsistent row length at line " +
                      std::to_string(line_numbers[r]) + " (expected " +
                      std::to_string(width) + " values, got " +
                      std::to_string(cells.size() - col0) + ")");
    if (label_col) out.row_labels.push_back(trim(cells[0]));
    for (std::size_t c = 0; c < width; ++c)
      out.matrix(static_cast<Index>(r - first_data), static_cast<Index>(c)) =
          cell_value(cells[col0 + c], opt, line_numbers[r]);
  }

  if (header) {
    const auto& h = raw[0];
    std::size_t skip = 0;
    if (label_col && h.size() == width + 1) skip = 1;
    if (h.size() - skip != width)
      throw DataError("csv: header has " + std::to_string(h.size() - skip) +
                      " labels for " + std::to_string(width) + " columns");
    for (std::size_t c = skip; c < h.size(); ++c)
      out.col_labels.push_back(trim(h[c]));
  }
  return out;
}

LabeledMatrix load_matrix_mm(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("mtx: empty input");
  std::istringstream banner(line);
  std::string tag, object, format, field, symmetry;
  banner >> tag >> object >> format >> field >> symmetry;
  if (tag != "%%MatrixMarket" || object != "matrix")
    throw DataError("mtx: bad banner at line 1");
  if (format != "coordinate" && format != "array")
    throw DataError("mtx: unsupported format '" + format + "'");
  if (field != "real" && field != "integer")
    throw DataError("mtx: unsupported field '" + field + "' (real only)");
  if (symmetry.empty()) symmetry = "general";
  if (symmetry != "general" && symmetry != "symmetric" &&
      symmetry != "skew-symmetric")
    throw DataError("mtx: unsupported symmetry '" + symmetry + "'");

  std::size_t line_no = 1;
  auto next_content_line = [&]() -> std::string {
    while (std::getline(in, line)) {
      ++line_no;
      std::string t = trim(line);
      if (t.empty() || t[0] == '%') continue;
      return t;
    }
    return "";
  };

  std::string size_line = next_content_line();
  if (size_line.empty()) throw DataError("mtx: missing size line");
  std::istringstream szs(size_line);
  long long m = 0, n = 0, nnz = 0;
  if (format == "coordinate") {
    if (!(szs >> m >> n >> nnz))
      throw DataError("mtx: bad size line at line " + std::to_string(line_no));
  } else {
    if (!(szs >> m >> n))
      throw DataError("mtx: bad size line at line " + std::to_string(line_no));
  }
  if (m <= 0 || n <= 0)
    throw DataError("mtx: non-positive dimensions at line " +
                    std::to_string(line_no));

  LabeledMatrix out;
  out.matrix = DenseMatrix::Zero(static_cast<Index>(m), static_cast<Index>(n));

  if (format == "coordinate") {
    for (long long k = 0; k < nnz; ++k) {
      std::string entry = next_content_line();
      if (entry.empty())
        throw DataError("mtx: expected " + std::to_string(nnz) +
                        " entries, got " + std::to_string(k));
      std::istringstream es(entry);
      long long i = 0, j = 0;
      double v = 0;
      if (!(es >> i >> j >> v) || !std::isfinite(v))
        throw DataError("mtx: bad entry at line " + std::to_string(line_no));
      if (i < 1 || i > m || j < 1 || j > n)
        throw DataError("mtx: index out of range at line " +
                        std::to_string(line_no));
      out.matrix(i - 1, j - 1) += v;
      if (i != j) {
        if (symmetry == "symmetric") out.matrix(j - 1, i - 1) += v;
        if (symmetry == "skew-symmetric") out.matrix(j - 1, i - 1) -= v;
      }
    }
  } else {
    // Array format: dense values in column-major order.
    for (long long j = 0; j < n; ++j) {
      for (long long i = 0; i < m; ++i) {
        std::string entry = next_content_line();
        if (entry.empty()) throw DataError("mtx: truncated array data");
        double v = 0;
        if (!parse_double(entry, v))
          throw DataError("mtx: bad value at line " + std::to_string(line_no));
        out.matrix(i, j) = v;
      }
    }
  }
  return out;
}

LabeledMatrix load_matrix(const std::string& path, MatrixFormat format,
                          const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  if (format == MatrixFormat::Csv) return load_matrix_csv(in, options);
  return load_matrix_mm(in);
}

void save_matrix_csv(std::ostream& out, const LabeledMatrix& m) {
  const Index rows = m.rows(), cols = m.cols();
  std::string line;
  if (!m.col_labels.empty()) {
    line.clear();
    if (!m.row_labels.empty()) line += ',';
    for (Index c = 0; c < cols; ++c) {
      if (c > 0) line += ',';
      line += m.col_labels[static_cast<std::size_t>(c)];
    }
    out << line << '\n';
  }
  for (Index r = 0; r < rows; ++r) {
    line.clear();
    if (!m.row_labels.empty()) {
      line += m.row_labels[static_cast<std::size_t>(r)];
      line += ',';
    }
    for (Index c = 0; c < cols; ++c) {
      if (c > 0) line += ',';
      format_value(line, m.matrix(r, c));
    }
    out << line << '\n';
  }
}

void save_matrix_csv(const std::string& path, const LabeledMatrix& m) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot open file for writing: " + path);
  save_matrix_csv(out, m);
}

DenseMatrix mean_center_rows(const DenseMatrix& m) {
  if (m.rows() < 1) throw DataError("mean_center_rows: matrix has no rows");
  DenseMatrix out = m;
  out.colwise() -= m.rowwise().mean();
  return out;
}

DenseMatrix min_max_normalize_cols(const DenseMatrix& m) {
  DenseMatrix out = m;
  for (Index c = 0; c < m.cols(); ++c) {
    const double lo = m.col(c).minCoeff();
    const double hi = m.col(c).maxCoeff();
    const double range = hi - lo;
    if (range == 0.0) {
      out.col(c).setZero();
    } else {
      out.col(c) = (m.col(c).array() - lo) / range;
    }
  }
  return out;
}

LabeledMatrix fill_missing_by_class_mean(const LabeledMatrix& m) {
  if (m.class_of_row.size() != static_cast<std::size_t>(m.rows()))
    throw DataError("fill_missing_by_class_mean: class_of_row missing or "
                    "wrong length");
  LabeledMatrix out = m;

  std::map<std::string, std::vector<Index>> by_class;
  for (Index r = 0; r < m.rows(); ++r)
    by_class[m.class_of_row[static_cast<std::size_t>(r)]].push_back(r);

  for (const auto& [cls, rows] : by_class) {
    for (Index c = 0; c < m.cols(); ++c) {
      double sum = 0;
      Index count = 0;
      bool any_missing = false;
      for (Index r : rows) {
        const double v = m.matrix(r, c);
        if (std::isnan(v)) {
          any_missing = true;
        } else {
          sum += v;
          ++count;
        }
      }
      if (!any_missing) continue;
      if (count == 0)
        throw DataError("fill_missing_by_class_mean: class '" + cls +
                        "' column " + std::to_string(c) +
                        " has no observed values");
      const double mean = sum / static_cast<double>(count);
      for (Index r : rows)
        if (std::isnan(m.matrix(r, c))) out.matrix(r, c) = mean;
    }
  }
  return out;
}

bool all_finite(const DenseMatrix& m) { return m.allFinite(); }

}  // namespace curkit
