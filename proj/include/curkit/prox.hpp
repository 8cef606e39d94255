#pragma once

#include "curkit/dense_matrix.hpp"

namespace curkit {

/// Compensated (Neumaier) sum of |x_i|; shared by the l1-ball projection and
/// the critical-lambda computations so that equal inputs produce bitwise
/// equal sums.
double l1_norm_compensated(const Eigen::Ref<const Eigen::RowVectorXd>& x);

/// Euclidean projection onto { y : ||y||_1 <= radius }, computed by sorting
/// |x| and soft-thresholding at the water-filling level. Returns x unchanged
/// (bitwise) when it is already inside the ball.
Vector project_l1_ball(const Eigen::Ref<const Vector>& x, double radius);

/// prox of alpha * ||.||_inf via the Moreau decomposition
/// x - project_l1_ball(x, alpha). Returns the exact zero vector whenever
/// ||x||_1 <= alpha.
Vector prox_linf(const Eigen::Ref<const Vector>& x, double alpha);

/// Componentwise soft threshold sign(x_i) * max(|x_i| - alpha, 0).
Vector prox_l1(const Eigen::Ref<const Vector>& x, double alpha);

/// Block soft threshold max(0, 1 - alpha/||x||_2) * x; zero at x = 0.
Vector prox_l2(const Eigen::Ref<const Vector>& x, double alpha);

}  // namespace curkit
