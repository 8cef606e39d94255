#pragma once

#include <map>
#include <string>
#include <vector>

#include "curkit/dense_matrix.hpp"
#include "curkit/sf_solver.hpp"

namespace curkit {

/// A CUR factorization: actual column and row indices of the source matrix
/// plus the link matrix U (|col_indices| x |row_indices|).
struct CurDecomposition {
  IndexList col_indices;
  IndexList row_indices;
  DenseMatrix U;
  std::string method;
  std::map<std::string, double> params;
};

struct BisectionRecord {
  double lambda = 0.0;
  Index selected = 0;
};

/// Everything observed while bisecting on the regularization weight. The
/// records make non-monotone count sequences visible instead of hidden.
struct BisectionTrace {
  std::vector<BisectionRecord> records;
  double accepted_lambda = 0.0;
  int iterations = 0;
  Index achieved = 0;
  bool exact = false;
};

struct SelectionResult {
  IndexList indices;
  BisectionTrace trace;
};

struct SfCurTraces {
  BisectionTrace columns;
  BisectionTrace rows;
};

/// Smallest lambda that forces the column-problem solution to zero:
/// 2 * max_i ||M(i,:)||_1 with M = X^T X X^T.
double critical_lambda_cols(const DenseMatrix& X);

/// Row-problem analog: 2 * max_j ||N(:,j)||_1 with N = C^T X X^T.
double critical_lambda_rows(const DenseMatrix& X, const DenseMatrix& C);

/// Bisection on lambda in [0, lambda*] driving the SF solver until exactly
/// c nonzero rows survive. When the count is unreachable within the cap the
/// nearest achieved count is returned (larger preferred) with
/// trace.exact = false, unless cfg.strict_count raises instead.
SelectionResult select_columns(const DenseMatrix& X, Index c,
                               const SfConfig& cfg = {});

/// Row analog of select_columns, solving the C-anchored problem with a
/// per-column penalty.
SelectionResult select_rows(const DenseMatrix& X, const DenseMatrix& C,
                            Index r, const SfConfig& cfg = {});

/// U = pinv(C) * X * pinv(R) for the given index sets.
DenseMatrix build_U(const DenseMatrix& X, const IndexList& col_indices,
                    const IndexList& row_indices, double rank_tol = -1.0);

/// Full pipeline: column selection, row selection, then U. Deterministic for
/// fixed input and config.
CurDecomposition sf_cur(const DenseMatrix& X, Index c, Index r,
                        const SfConfig& cfg = {},
                        SfCurTraces* traces = nullptr);

/// Extract the given columns (rows) of a matrix in the given order.
DenseMatrix gather_columns(const DenseMatrix& X, const IndexList& indices);
DenseMatrix gather_rows(const DenseMatrix& X, const IndexList& indices);

}  // namespace curkit
