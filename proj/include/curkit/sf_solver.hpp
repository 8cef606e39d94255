#pragma once

#include <vector>

#include "curkit/dense_matrix.hpp"

namespace curkit {

/// Which slices of the iterate carry the group penalty.
enum class PenaltyAxis { Rows, Cols };

/// Norm applied to each penalized slice.
enum class PenaltyKind { LInf, L1, L2 };

/// Solver and bisection knobs.
struct SfConfig {
  /// mu = mu_scale * (||A||_2 * ||B||_2)^2 when no explicit mu is given.
  double mu_scale = 1.01;
  /// Inner iteration cap; a small cap is the operative regime inside
  /// bisection, the tolerance matters mostly for standalone solves.
  int max_iterations = 20;
  /// Stop when ||W^k - W^{k-1}||_F <= tolerance * max(1, ||W^{k-1}||_F).
  double tolerance = 1e-8;
  /// A slice counts as nonzero when its max-abs entry exceeds this. The
  /// l_inf prox emits exact zeros, so 0 is a sound default.
  double zero_threshold = 0.0;
  int bisection_max_iterations = 60;
  /// Raise instead of returning the nearest achievable selection count.
  bool strict_count = false;
  /// Reuse the previous bisection iterate as the starting point (never used
  /// for the final solve at the accepted lambda).
  bool warm_start = false;
  /// Iteration cap and tolerance for the stabilizing solve at the accepted
  /// lambda.
  int final_max_iterations = 500;
  double final_tolerance = 1e-12;
  /// Record J(W^k) per iteration (costs one extra residual per iteration).
  bool record_history = false;
};

/// One regularized least-squares instance: minimize
///   ||target - left * W * right||_F^2 + lambda * sum over slices of |slice|
/// where the slices are rows or columns of W per penalty_axis and |.| is the
/// penalty_kind norm.
struct SfProblem {
  DenseMatrix left;    // A
  DenseMatrix right;   // B
  DenseMatrix target;  // X
  double lambda = 0.0;
  /// 0 means: derive as mu_scale * (||A||_2 ||B||_2)^2. An explicit value
  /// must exceed that bound or the solver refuses to run.
  double mu = 0.0;
  PenaltyAxis penalty_axis = PenaltyAxis::Rows;
  PenaltyKind penalty_kind = PenaltyKind::LInf;
};

struct SfState {
  DenseMatrix W;
  int iterations = 0;
  double objective = 0.0;
  double delta = 0.0;  // ||W^k - W^{k-1}||_F at exit
  bool converged = false;
  std::vector<double> objective_history;  // J(W^0), J(W^1), ... when recorded
  std::vector<double> delta_history;      // ||W^k - W^{k-1}||_F per step
};

/// The fixed-point map behind the iteration, with the products that stay
/// constant across iterations (and across bisection steps) computed once at
/// construction: P = A^T * target * B^T, the Gram factors, and mu.
class SfOperator {
 public:
  SfOperator(DenseMatrix left, DenseMatrix right, DenseMatrix target,
             PenaltyAxis axis, PenaltyKind kind, double mu = 0.0,
             double mu_scale = 1.01, double left_norm_hint = -1.0,
             double right_norm_hint = -1.0);
  explicit SfOperator(const SfProblem& p, double mu_scale = 1.01);

  /// One step of the map: build L(Z) and apply the slice prox with
  /// threshold lambda / (2 mu).
  DenseMatrix apply(const DenseMatrix& Z, double lambda) const;

  /// Full objective value for an iterate.
  double objective(const DenseMatrix& W, double lambda) const;

  /// Iterate from W^0 = 0 (or the warm start) until the step norm falls
  /// under tolerance or the iteration cap.
  SfState solve(double lambda, const SfConfig& cfg,
                const DenseMatrix* warm_start = nullptr) const;

  /// Slices whose max-abs entry exceeds the threshold.
  Index count_nonzero_slices(const DenseMatrix& W,
                             double zero_threshold) const;

  double mu() const { return mu_; }
  double mu_bound() const { return mu_bound_; }
  Index slice_count() const;
  Index iterate_rows() const { return left_.cols(); }
  Index iterate_cols() const { return right_.rows(); }

 private:
  DenseMatrix left_, right_, target_;
  Eigen::MatrixXd p_;           // A^T * target * B^T
  Eigen::MatrixXd gram_right_;  // B * B^T
  Eigen::MatrixXd gram_left_;   // A^T * A, only when materialized
  bool have_gram_left_ = false;
  double mu_ = 0.0;
  double mu_bound_ = 0.0;
  PenaltyAxis axis_;
  PenaltyKind kind_;
};

/// Convenience wrappers; each constructs a fresh SfOperator.
double objective(const SfProblem& p, const DenseMatrix& W);
DenseMatrix apply_T(const SfProblem& p, const DenseMatrix& Z);
SfState solve(const SfProblem& p, const SfConfig& cfg);

}  // namespace curkit
