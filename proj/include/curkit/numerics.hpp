#pragma once

#include "curkit/dense_matrix.hpp"

namespace curkit {

/// Thin SVD truncated to the leading k singular triplets. Columns of U and V
/// are orthonormal; S is non-increasing and non-negative.
struct SvdResult {
  DenseMatrix U;  // m x k
  Vector S;       // k
  DenseMatrix V;  // n x k
};

/// Businger-Golub QR with column pivoting. pivot_order is a permutation of
/// the column indices: position t holds the column eliminated at step t,
/// columns beyond the last elimination step follow in ascending index order.
/// A(:, pivot_order) = Q * R with |diag(R)| non-increasing.
struct PivotedQr {
  IndexList pivot_order;  // length n
  DenseMatrix Q;          // m x min(m,n)
  DenseMatrix R;          // min(m,n) x n
};

/// Best rank-k approximation factors. Throws ConfigError if k is out of
/// range.
SvdResult truncated_svd(const DenseMatrix& m, Index k);

/// Full thin SVD (k = min(rows, cols)).
SvdResult full_svd(const DenseMatrix& m);

/// Largest singular value.
double spectral_norm(const DenseMatrix& m);

/// SVD-based Moore-Penrose pseudoinverse. Singular values at or below
/// rank_tol * sigma_max are treated as zero. A negative rank_tol selects the
/// default max(rows, cols) * machine epsilon.
DenseMatrix pseudoinverse(const DenseMatrix& m, double rank_tol = -1.0);

/// Default pseudoinverse rank tolerance for a matrix of the given shape.
double default_rank_tol(Index rows, Index cols);

/// Column-pivoted QR; at each step the remaining column of largest residual
/// norm is eliminated, ties broken by lowest column index.
PivotedQr pivoted_qr(const DenseMatrix& m);

}  // namespace curkit
