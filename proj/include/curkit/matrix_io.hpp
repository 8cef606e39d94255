#pragma once

#include <iosfwd>
#include <string>

#include "curkit/dense_matrix.hpp"

namespace curkit {

enum class MatrixFormat { Csv, MatrixMarket };

struct LoadOptions {
  /// When true, empty cells and cells equal to missing_marker parse as NaN
  /// (to be filled later); otherwise they are a parse error.
  bool allow_missing = false;
  std::string missing_marker = "NA";
};

/// Load a matrix from disk. CSV files may carry a single header row and/or a
/// leading label column (detected by non-numeric content). Matrix Market
/// files may be in coordinate or array format with a real or integer field;
/// sparse entries are expanded to dense.
///
/// Throws DataError on parse failures (with the offending line number),
/// non-numeric cells, or inconsistent row lengths.
LabeledMatrix load_matrix(const std::string& path, MatrixFormat format,
                          const LoadOptions& options = {});

LabeledMatrix load_matrix_csv(std::istream& in, const LoadOptions& options = {});
LabeledMatrix load_matrix_mm(std::istream& in);

/// Write as CSV with 17-significant-digit formatting so that load -> save ->
/// load round-trips bit-identically. Labels are emitted when present.
void save_matrix_csv(const std::string& path, const LabeledMatrix& m);
void save_matrix_csv(std::ostream& out, const LabeledMatrix& m);

/// Subtract its mean from every row.
DenseMatrix mean_center_rows(const DenseMatrix& m);

/// Affinely map each column onto [0,1]; constant columns map to all zeros.
DenseMatrix min_max_normalize_cols(const DenseMatrix& m);

/// Replace each NaN cell with the mean of the non-NaN cells in the same
/// column restricted to rows of the same class. Requires class_of_row.
/// Throws DataError if some (class, column) pair is entirely missing.
LabeledMatrix fill_missing_by_class_mean(const LabeledMatrix& m);

/// True if the matrix contains no NaN/Inf entries.
bool all_finite(const DenseMatrix& m);

}  // namespace curkit
