#include "curkit/sf_cur.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "curkit/errors.hpp"
#include "curkit/numerics.hpp"
#include "curkit/prox.hpp"

namespace curkit {

namespace {

IndexList nonzero_slices(const DenseMatrix& W, PenaltyAxis axis,
                         double zero_threshold) {
  IndexList out;
  if (axis == PenaltyAxis::Rows) {
    for (Index i = 0; i < W.rows(); ++i)
      if (W.row(i).lpNorm<Eigen::Infinity>() > zero_threshold)
        out.push_back(i);
  } else {
    for (Index j = 0; j < W.cols(); ++j)
      if (W.col(j).lpNorm<Eigen::Infinity>() > zero_threshold)
        out.push_back(j);
  }
  return out;
}

SelectionResult run_bisection(const SfOperator& op, PenaltyAxis axis,
                              double lambda_star, Index want,
                              const SfConfig& cfg, const char* what) {
  if (want < 1 || want > op.slice_count())
    throw ConfigError(std::string("sf selection: requested ") + what +
                      " count " + std::to_string(want) + " out of range [1, " +
                      std::to_string(op.slice_count()) + "]");

  SfConfig inner = cfg;
  inner.record_history = false;

  SelectionResult result;
  BisectionTrace& trace = result.trace;

  double lo = 0.0, hi = lambda_star;
  double accepted = std::numeric_limits<double>::quiet_NaN();
  bool have_best = false;
  Index best_count = 0;
  double best_lambda = 0.0;

  DenseMatrix warm;
  bool have_warm = false;

  for (int it = 0; it < cfg.bisection_max_iterations && hi > lo; ++it) {
    const double mid = 0.5 * (lo + hi);
    const SfState state =
        op.solve(mid, inner, cfg.warm_start && have_warm ? &warm : nullptr);
    const Index count = op.count_nonzero_slices(state.W, cfg.zero_threshold);
    trace.records.push_back({mid, count});
    if (cfg.warm_start) {
      warm = state.W;
      have_warm = true;
    }

    const bool better =
        !have_best || std::abs(count - want) < std::abs(best_count - want) ||
        (std::abs(count - want) == std::abs(best_count - want) &&
         count > best_count);
    if (better) {
      have_best = true;
      best_count = count;
      best_lambda = mid;
    }

    if (count == want) {
      accepted = mid;
      break;
    }
    // Larger lambda forces more slices to zero, so too few selected means
    // the weight must shrink.
    if (count < want)
      hi = mid;
    else
      lo = mid;
  }
  trace.iterations = static_cast<int>(trace.records.size());

  if (std::isnan(accepted)) accepted = best_lambda;
  trace.accepted_lambda = accepted;

  // Stabilizing solve at the accepted lambda, always from W = 0.
  SfConfig final_cfg = inner;
  final_cfg.max_iterations = cfg.final_max_iterations;
  final_cfg.tolerance = cfg.final_tolerance;
  const SfState final_state = op.solve(accepted, final_cfg);
  result.indices =
      nonzero_slices(final_state.W, axis, cfg.zero_threshold);
  trace.achieved = static_cast<Index>(result.indices.size());
  trace.exact = trace.achieved == want;

  if (!trace.exact && cfg.strict_count)
    throw NumericalError(
        std::string("sf selection: could not reach exactly ") +
        std::to_string(want) + " " + what + "(s); nearest achieved " +
        std::to_string(trace.achieved) + " at lambda " +
        std::to_string(accepted));
  return result;
}

}  // namespace

double critical_lambda_cols(const DenseMatrix& X) {
  // M = X^T X X^T, grouped through the small X X^T factor exactly as the
  // solver builds its constant term, so the two agree bitwise.
  DenseMatrix m;
  m.noalias() = X.transpose() * (X * X.transpose());
  double max_row_sum = 0.0;
  for (Index i = 0; i < m.rows(); ++i)
    max_row_sum = std::max(max_row_sum, l1_norm_compensated(m.row(i)));
  return 2.0 * max_row_sum;
}

double critical_lambda_rows(const DenseMatrix& X, const DenseMatrix& C) {
  if (C.rows() != X.rows())
    throw DataError("critical_lambda_rows: C must hold columns of X");
  DenseMatrix n;
  n.noalias() = C.transpose() * (X * X.transpose());
  double max_col_sum = 0.0;
  for (Index j = 0; j < n.cols(); ++j)
    max_col_sum = std::max(max_col_sum, l1_norm_compensated(n.col(j)));
  return 2.0 * max_col_sum;
}

SelectionResult select_columns(const DenseMatrix& X, Index c,
                               const SfConfig& cfg) {
  SfOperator op(X, X, X, PenaltyAxis::Rows, PenaltyKind::LInf, 0.0,
                cfg.mu_scale);
  return run_bisection(op, PenaltyAxis::Rows, critical_lambda_cols(X), c, cfg,
                       "column");
}

SelectionResult select_rows(const DenseMatrix& X, const DenseMatrix& C,
                            Index r, const SfConfig& cfg) {
  SfOperator op(C, X, X, PenaltyAxis::Cols, PenaltyKind::LInf, 0.0,
                cfg.mu_scale);
  return run_bisection(op, PenaltyAxis::Cols, critical_lambda_rows(X, C), r,
                       cfg, "row");
}

DenseMatrix gather_columns(const DenseMatrix& X, const IndexList& indices) {
  DenseMatrix out(X.rows(), static_cast<Index>(indices.size()));
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const Index j = indices[k];
    if (j < 0 || j >= X.cols())
      throw ConfigError("column index out of range: " + std::to_string(j));
    out.col(static_cast<Index>(k)) = X.col(j);
  }
  return out;
}

DenseMatrix gather_rows(const DenseMatrix& X, const IndexList& indices) {
  DenseMatrix out(static_cast<Index>(indices.size()), X.cols());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const Index i = indices[k];
    if (i < 0 || i >= X.rows())
      throw ConfigError("row index out of range: " + std::to_string(i));
    out.row(static_cast<Index>(k)) = X.row(i);
  }
  return out;
}

DenseMatrix build_U(const DenseMatrix& X, const IndexList& col_indices,
                    const IndexList& row_indices, double rank_tol) {
  const DenseMatrix c = gather_columns(X, col_indices);
  const DenseMatrix r = gather_rows(X, row_indices);
  DenseMatrix u;
  u.noalias() = (pseudoinverse(c, rank_tol) * X) * pseudoinverse(r, rank_tol);
  return u;
}

CurDecomposition sf_cur(const DenseMatrix& X, Index c, Index r,
                        const SfConfig& cfg, SfCurTraces* traces) {
  if (c < 1 || c > X.cols() || r < 1 || r > X.rows())
    throw ConfigError("sf_cur: requested counts out of range");

  const double sigma_x = spectral_norm(X);

  SfOperator col_op(X, X, X, PenaltyAxis::Rows, PenaltyKind::LInf, 0.0,
                    cfg.mu_scale, sigma_x, sigma_x);
  SelectionResult cols = run_bisection(col_op, PenaltyAxis::Rows,
                                       critical_lambda_cols(X), c, cfg,
                                       "column");

  const DenseMatrix c_mat = gather_columns(X, cols.indices);
  SfOperator row_op(c_mat, X, X, PenaltyAxis::Cols, PenaltyKind::LInf, 0.0,
                    cfg.mu_scale, -1.0, sigma_x);
  SelectionResult rows = run_bisection(row_op, PenaltyAxis::Cols,
                                       critical_lambda_rows(X, c_mat), r, cfg,
                                       "row");

  CurDecomposition dec;
  dec.col_indices = cols.indices;
  dec.row_indices = rows.indices;
  dec.U = build_U(X, dec.col_indices, dec.row_indices);
  dec.method = "sf";
  dec.params["c"] = static_cast<double>(c);
  dec.params["r"] = static_cast<double>(r);
  dec.params["achieved_c"] = static_cast<double>(cols.trace.achieved);
  dec.params["achieved_r"] = static_cast<double>(rows.trace.achieved);
  dec.params["lambda_c"] = cols.trace.accepted_lambda;
  dec.params["lambda_r"] = rows.trace.accepted_lambda;
  dec.params["mu_scale"] = cfg.mu_scale;
  dec.params["exact"] =
      (cols.trace.exact && rows.trace.exact) ? 1.0 : 0.0;
  if (traces != nullptr) {
    traces->columns = cols.trace;
    traces->rows = rows.trace;
  }
  return dec;
}

}  // namespace curkit
