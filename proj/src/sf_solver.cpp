#include "curkit/sf_solver.hpp"

#include <algorithm>
#include <cmath>

#include "curkit/errors.hpp"
#include "curkit/numerics.hpp"
#include "curkit/prox.hpp"

namespace curkit {

namespace {

Vector slice_prox(const Vector& x, double alpha, PenaltyKind kind) {
  switch (kind) {
    case PenaltyKind::LInf:
      return prox_linf(x, alpha);
    case PenaltyKind::L1:
      return prox_l1(x, alpha);
    case PenaltyKind::L2:
      return prox_l2(x, alpha);
  }
  throw ConfigError("unknown penalty kind");
}

double slice_norm(const Vector& x, PenaltyKind kind) {
  switch (kind) {
    case PenaltyKind::LInf:
      return x.size() > 0 ? x.lpNorm<Eigen::Infinity>() : 0.0;
    case PenaltyKind::L1:
      return x.lpNorm<1>();
    case PenaltyKind::L2:
      return x.norm();
  }
  throw ConfigError("unknown penalty kind");
}

}  // namespace

SfOperator::SfOperator(DenseMatrix left, DenseMatrix right, DenseMatrix target,
                       PenaltyAxis axis, PenaltyKind kind, double mu,
                       double mu_scale, double left_norm_hint,
                       double right_norm_hint)
    : left_(std::move(left)),
      right_(std::move(right)),
      target_(std::move(target)),
      axis_(axis),
      kind_(kind) {
  if (target_.rows() != left_.rows() || target_.cols() != right_.cols())
    throw DataError("sf: shape mismatch between target and factors");

  const double sa =
      left_norm_hint >= 0 ? left_norm_hint : spectral_norm(left_);
  const double sb =
      right_norm_hint >= 0 ? right_norm_hint : spectral_norm(right_);
  mu_bound_ = (sa * sb) * (sa * sb);
  if (mu == 0.0) {
    mu_ = mu_bound_ > 0 ? mu_scale * mu_bound_ : 1.0;
  } else {
    if (mu <= mu_bound_)
      throw NumericalError("sf: mu = " + std::to_string(mu) +
                           " does not exceed the convergence bound " +
                           std::to_string(mu_bound_));
    mu_ = mu;
  }

  // Constant products, computed once. P is grouped through the small
  // (target * B^T) factor so no n x n intermediate is ever formed.
  p_.noalias() = left_.transpose() * (target_ * right_.transpose());
  gram_right_.noalias() = right_ * right_.transpose();

  // A^T A is worth materializing only when the iterate's row count is
  // moderate; otherwise apply A^T (A .) per step, which is cheaper when the
  // penalized dimension dominates.
  const Index n = left_.cols();
  const Index m = right_.rows();
  if (n <= std::max<Index>(2 * m, 512) && n <= 8192) {
    gram_left_.noalias() = left_.transpose() * left_;
    have_gram_left_ = true;
  }
}

SfOperator::SfOperator(const SfProblem& p, double mu_scale)
    : SfOperator(p.left, p.right, p.target, p.penalty_axis, p.penalty_kind,
                 p.mu, mu_scale) {}

Index SfOperator::slice_count() const {
  return axis_ == PenaltyAxis::Rows ? iterate_rows() : iterate_cols();
}

DenseMatrix SfOperator::apply(const DenseMatrix& Z, double lambda) const {
  if (Z.rows() != iterate_rows() || Z.cols() != iterate_cols())
    throw DataError("sf: iterate shape mismatch");
  if (lambda < 0) throw ConfigError("sf: negative lambda");

  // L^T = mu Z + P - A^T A Z B B^T
  Eigen::MatrixXd lt;
  if (have_gram_left_) {
    lt.noalias() = gram_left_ * (Z * gram_right_);
  } else {
    lt.noalias() = left_.transpose() * (left_ * (Z * gram_right_));
  }
  lt = mu_ * Z + p_ - lt;

  // Slice prox with threshold lambda / (2 mu), evaluated on the unscaled
  // slice via positive homogeneity:
  //   prox_{(lambda/2mu) f}(l / mu) = (1/mu) prox_{(lambda/2) f}(l).
  // This keeps the zero test comparing the same compensated row sums the
  // critical-lambda values are built from.
  const double threshold = 0.5 * lambda;
  DenseMatrix W(Z.rows(), Z.cols());
  if (axis_ == PenaltyAxis::Rows) {
    for (Index i = 0; i < W.rows(); ++i) {
      const Vector l = lt.row(i).transpose();
      W.row(i) = (slice_prox(l, threshold, kind_) / mu_).transpose();
    }
  } else {
    for (Index j = 0; j < W.cols(); ++j) {
      const Vector l = lt.col(j);
      W.col(j) = slice_prox(l, threshold, kind_) / mu_;
    }
  }
  return W;
}

double SfOperator::objective(const DenseMatrix& W, double lambda) const {
  if (W.rows() != iterate_rows() || W.cols() != iterate_cols())
    throw DataError("sf: iterate shape mismatch");
  DenseMatrix residual = target_ - left_ * W * right_;
  double penalty = 0.0;
  if (axis_ == PenaltyAxis::Rows) {
    for (Index i = 0; i < W.rows(); ++i)
      penalty += slice_norm(W.row(i).transpose(), kind_);
  } else {
    for (Index j = 0; j < W.cols(); ++j)
      penalty += slice_norm(W.col(j), kind_);
  }
  return residual.squaredNorm() + lambda * penalty;
}

SfState SfOperator::solve(double lambda, const SfConfig& cfg,
                          const DenseMatrix* warm_start) const {
  SfState state;
  state.W = warm_start != nullptr
                ? *warm_start
                : DenseMatrix::Zero(iterate_rows(), iterate_cols());
  if (cfg.record_history)
    state.objective_history.push_back(objective(state.W, lambda));

  for (int k = 0; k < cfg.max_iterations; ++k) {
    const double prev_norm = state.W.norm();
    DenseMatrix next = apply(state.W, lambda);
    state.delta = (next - state.W).norm();
    state.delta_history.push_back(state.delta);
    state.W = std::move(next);
    state.iterations = k + 1;
    if (cfg.record_history)
      state.objective_history.push_back(objective(state.W, lambda));
    if (state.delta <= cfg.tolerance * std::max(1.0, prev_norm)) {
      state.converged = true;
      break;
    }
  }
  state.objective = objective(state.W, lambda);
  return state;
}

Index SfOperator::count_nonzero_slices(const DenseMatrix& W,
                                       double zero_threshold) const {
  Index count = 0;
  if (axis_ == PenaltyAxis::Rows) {
    for (Index i = 0; i < W.rows(); ++i)
      if (W.row(i).lpNorm<Eigen::Infinity>() > zero_threshold) ++count;
  } else {
    for (Index j = 0; j < W.cols(); ++j)
      if (W.col(j).lpNorm<Eigen::Infinity>() > zero_threshold) ++count;
  }
  return count;
}

double objective(const SfProblem& p, const DenseMatrix& W) {
  return SfOperator(p).objective(W, p.lambda);
}

DenseMatrix apply_T(const SfProblem& p, const DenseMatrix& Z) {
  return SfOperator(p).apply(Z, p.lambda);
}

SfState solve(const SfProblem& p, const SfConfig& cfg) {
  return SfOperator(p, cfg.mu_scale).solve(p.lambda, cfg);
}

}  // namespace curkit
