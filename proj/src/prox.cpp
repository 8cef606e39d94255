#include "curkit/prox.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "curkit/errors.hpp"

namespace curkit {

namespace {

// Neumaier compensated accumulation.
struct CompensatedSum {
  double sum = 0.0;
  double comp = 0.0;

  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v))
      comp += (sum - t) + v;
    else
      comp += (v - t) + sum;
    sum = t;
  }

  double value() const { return sum + comp; }
};

}  // namespace

double l1_norm_compensated(const Eigen::Ref<const Eigen::RowVectorXd>& x) {
  CompensatedSum acc;
  for (Index i = 0; i < x.size(); ++i) acc.add(std::abs(x(i)));
  return acc.value();
}

Vector project_l1_ball(const Eigen::Ref<const Vector>& x, double radius) {
  if (radius < 0) throw ConfigError("project_l1_ball: negative radius");
  if (radius == 0.0) return Vector::Zero(x.size());
  if (l1_norm_compensated(x.transpose()) <= radius) return x;

  std::vector<double> mags(static_cast<std::size_t>(x.size()));
  for (Index i = 0; i < x.size(); ++i)
    mags[static_cast<std::size_t>(i)] = std::abs(x(i));
  std::sort(mags.begin(), mags.end(), std::greater<>());

  // Water filling: theta solves sum_i max(|x_i| - theta, 0) = radius.
  CompensatedSum prefix;
  double theta = 0.0;
  for (std::size_t j = 0; j < mags.size(); ++j) {
    prefix.add(mags[j]);
    const double candidate =
        (prefix.value() - radius) / static_cast<double>(j + 1);
    if (mags[j] > candidate)
      theta = candidate;
    else
      break;
  }

  Vector y(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    const double shrunk = std::abs(x(i)) - theta;
    y(i) = shrunk > 0 ? std::copysign(shrunk, x(i)) : 0.0;
  }
  return y;
}

Vector prox_linf(const Eigen::Ref<const Vector>& x, double alpha) {
  if (alpha < 0) throw ConfigError("prox_linf: negative alpha");
  if (alpha == 0.0) return x;
  // Inside the dual l1 ball the prox is identically zero; return an exact
  // zero vector so downstream nonzero-row tests are bit-reliable.
  if (l1_norm_compensated(x.transpose()) <= alpha)
    return Vector::Zero(x.size());
  return x - project_l1_ball(x, alpha);
}

Vector prox_l1(const Eigen::Ref<const Vector>& x, double alpha) {
  if (alpha < 0) throw ConfigError("prox_l1: negative alpha");
  Vector y(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    const double shrunk = std::abs(x(i)) - alpha;
    y(i) = shrunk > 0 ? std::copysign(shrunk, x(i)) : 0.0;
  }
  return y;
}

Vector prox_l2(const Eigen::Ref<const Vector>& x, double alpha) {
  if (alpha < 0) throw ConfigError("prox_l2: negative alpha");
  const double norm = x.norm();
  if (norm <= alpha) return Vector::Zero(x.size());
  return (1.0 - alpha / norm) * x;
}

}  // namespace curkit
