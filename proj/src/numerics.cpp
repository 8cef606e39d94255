#include "curkit/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "curkit/errors.hpp"

namespace curkit {

SvdResult full_svd(const DenseMatrix& m) {
  return truncated_svd(m, std::min(m.rows(), m.cols()));
}

SvdResult truncated_svd(const DenseMatrix& m, Index k) {
  if (k < 1 || k > std::min(m.rows(), m.cols()))
    throw ConfigError("truncated_svd: k = " + std::to_string(k) +
                      " out of range for " + std::to_string(m.rows()) + "x" +
                      std::to_string(m.cols()) + " matrix");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU |
                                            Eigen::ComputeThinV);
  SvdResult out;
  out.U = svd.matrixU().leftCols(k);
  out.S = svd.singularValues().head(k);
  out.V = svd.matrixV().leftCols(k);
  return out;
}

double spectral_norm(const DenseMatrix& m) {
  // Largest eigenvalue of the Gram matrix on the smaller side; accurate for
  // the top singular value and much cheaper than a full SVD when one
  // dimension dominates.
  Eigen::MatrixXd gram;
  if (m.rows() <= m.cols())
    gram.noalias() = m * m.transpose();
  else
    gram.noalias() = m.transpose() * m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram,
                                                    Eigen::EigenvaluesOnly);
  const double lmax = es.eigenvalues().maxCoeff();
  return std::sqrt(std::max(0.0, lmax));
}

double default_rank_tol(Index rows, Index cols) {
  return static_cast<double>(std::max(rows, cols)) *
         std::numeric_limits<double>::epsilon();
}

DenseMatrix pseudoinverse(const DenseMatrix& m, double rank_tol) {
  if (rank_tol < 0) rank_tol = default_rank_tol(m.rows(), m.cols());
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU |
                                            Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double cutoff = s.size() > 0 ? rank_tol * s(0) : 0.0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  for (Index i = 0; i < s.size(); ++i)
    if (s(i) > cutoff && s(i) > 0.0) inv(i) = 1.0 / s(i);
  DenseMatrix out = svd.matrixV() * inv.asDiagonal() *
                    svd.matrixU().transpose();
  return out;
}

PivotedQr pivoted_qr(const DenseMatrix& m) {
  const Index rows = m.rows(), cols = m.cols();
  const Index steps = std::min(rows, cols);

  Eigen::MatrixXd work = m;  // column-major working copy
  IndexList perm(static_cast<std::size_t>(cols));
  std::iota(perm.begin(), perm.end(), Index{0});

  std::vector<Eigen::VectorXd> reflectors(static_cast<std::size_t>(steps));
  Eigen::VectorXd betas = Eigen::VectorXd::Zero(steps);

  for (Index t = 0; t < steps; ++t) {
    // Recompute residual norms of the trailing columns; the first maximum
    // wins, so exact ties resolve to the lowest column index.
    Index pivot = t;
    double best = work.col(t).tail(rows - t).norm();
    for (Index j = t + 1; j < cols; ++j) {
      const double nj = work.col(j).tail(rows - t).norm();
      if (nj > best) {
        best = nj;
        pivot = j;
      }
    }
    if (pivot != t) {
      work.col(t).swap(work.col(pivot));
      std::swap(perm[static_cast<std::size_t>(t)],
                perm[static_cast<std::size_t>(pivot)]);
    }

    // Householder reflector annihilating column t below the diagonal.
    const Index len = rows - t;
    Eigen::VectorXd v = work.col(t).tail(len);
    const double normx = v.norm();
    if (normx == 0.0) continue;  // beta stays 0: identity reflector

    const double alpha = v(0) >= 0 ? -normx : normx;
    v(0) -= alpha;
    const double vsq = v.squaredNorm();
    const double beta = vsq > 0 ? 2.0 / vsq : 0.0;
    if (beta > 0 && t + 1 < cols) {
      auto block = work.bottomRightCorner(len, cols - t - 1);
      Eigen::RowVectorXd w = v.transpose() * block;
      block.noalias() -= beta * v * w;
    }
    work(t, t) = alpha;
    if (len > 1) work.col(t).tail(len - 1).setZero();

    betas(t) = beta;
    reflectors[static_cast<std::size_t>(t)] = std::move(v);
  }

  // Columns never eliminated keep ascending original-index order; reorder
  // the trailing part of R to match.
  if (steps < cols) {
    const std::size_t tail = static_cast<std::size_t>(cols - steps);
    std::vector<std::size_t> order(tail);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return perm[static_cast<std::size_t>(steps) + a] <
             perm[static_cast<std::size_t>(steps) + b];
    });
    Eigen::MatrixXd tail_cols = work.rightCols(cols - steps);
    IndexList tail_perm(perm.begin() + steps, perm.end());
    for (std::size_t k = 0; k < tail; ++k) {
      work.col(steps + static_cast<Index>(k)) =
          tail_cols.col(static_cast<Index>(order[k]));
      perm[static_cast<std::size_t>(steps) + k] = tail_perm[order[k]];
    }
  }

  PivotedQr out;
  out.pivot_order = std::move(perm);
  out.R = work.topRows(steps);

  // Accumulate the thin Q by applying the reflectors to the identity.
  Eigen::MatrixXd q = Eigen::MatrixXd::Identity(rows, steps);
  for (Index t = steps - 1; t >= 0; --t) {
    if (betas(t) == 0.0) continue;
    const Index len = rows - t;
    const Eigen::VectorXd& v = reflectors[static_cast<std::size_t>(t)];
    auto block = q.bottomRows(len);
    Eigen::RowVectorXd w = v.transpose() * block;
    block.noalias() -= betas(t) * v * w;
  }
  out.Q = q;
  return out;
}

}  // namespace curkit
