#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <vector>

namespace dbtopo {

template <typename Scalar>
struct Ball {
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> center;
  Scalar radius = -1;  ///< negative for the empty ball

  template <typename Derived>
  bool contains(const Eigen::MatrixBase<Derived>& p, Scalar slack) const {
    if (radius < 0) return false;
    return (p.transpose() - center).norm() <= radius + slack;
  }
};

namespace detail {

/// Smallest ball with every support point on its boundary (circumsphere inside the
/// affine hull of the support).
template <typename Scalar, typename PointMatrix>
Ball<Scalar> ball_on_boundary(const PointMatrix& points, const std::vector<Eigen::Index>& support) {
  using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  Ball<Scalar> ball;
  const auto dim = points.cols();
  if (support.empty()) {
    ball.center = Vec::Zero(dim);
    return ball;
  }
  Vec origin = points.row(support[0]).transpose();
  if (support.size() == 1) {
    ball.center = origin;
    ball.radius = 0;
    return ball;
  }
  const auto m = static_cast<Eigen::Index>(support.size()) - 1;
  Mat offsets(dim, m);
  for (Eigen::Index i = 0; i < m; ++i)
    offsets.col(i) = points.row(support[static_cast<std::size_t>(i + 1)]).transpose() - origin;
  // center = origin + offsets * lambda with 2 (V^T V) lambda = diag(V^T V).
  Mat gram = offsets.transpose() * offsets;
  Vec rhs = gram.diagonal();
  Vec lambda = (Scalar(2) * gram).colPivHouseholderQr().solve(rhs);
  ball.center = origin + offsets * lambda;
  ball.radius = (ball.center - origin).norm();
  return ball;
}

template <typename Scalar, typename PointMatrix>
Ball<Scalar> welzl(const PointMatrix& points, std::vector<Eigen::Index>& pending, std::vector<Eigen::Index>& support,
                   Scalar slack) {
  if (pending.empty() || static_cast<Eigen::Index>(support.size()) == points.cols() + 1)
    return ball_on_boundary<Scalar>(points, support);
  Eigen::Index p = pending.back();
  pending.pop_back();
  Ball<Scalar> ball = welzl<Scalar>(points, pending, support, slack);
  if (!ball.contains(points.row(p), slack)) {
    support.push_back(p);
    ball = welzl<Scalar>(points, pending, support, slack);
    support.pop_back();
  }
  pending.push_back(p);
  return ball;
}

}  // namespace detail

/// Smallest enclosing ball of the selected rows of `points` (Welzl's recursion).
template <typename PointMatrix>
Ball<typename PointMatrix::Scalar> smallest_enclosing_ball(const PointMatrix& points,
                                                           std::vector<Eigen::Index> rows) {
  using Scalar = typename PointMatrix::Scalar;
  std::vector<Eigen::Index> support;
  Scalar scale = 0;
  for (auto r : rows) scale = std::max(scale, points.row(r).cwiseAbs().maxCoeff());
  Scalar slack = Scalar(64) * std::numeric_limits<Scalar>::epsilon() * std::max(Scalar(1), scale);
  return detail::welzl<Scalar>(points, rows, support, slack);
}

}  // namespace dbtopo
