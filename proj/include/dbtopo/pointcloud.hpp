#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <iosfwd>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dbtopo/core.hpp"

namespace dbtopo {

/// Points in R^d (one per row) with an integer class tag per point.
///
/// Row order is the stable point id. At most two distinct labels may occur; whether
/// both classes are present is checked by the graph builders, not here.
template <typename Scalar>
class LabeledPointCloud {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

  LabeledPointCloud() = default;

  LabeledPointCloud(Matrix points, std::vector<int> labels)
      : points_(std::move(points)), labels_(std::move(labels)) {
    if (static_cast<std::size_t>(points_.rows()) != labels_.size())
      throw ValidationError("point count " + std::to_string(points_.rows()) +
                            " does not match label count " + std::to_string(labels_.size()));
    if (points_.rows() > 0 && points_.cols() < 1)
      throw ValidationError("points must have dimension >= 1");
    if (classes().size() > 2)
      throw ValidationError("a labeled cloud may carry at most two distinct labels");
  }

  Index size() const { return static_cast<Index>(points_.rows()); }
  Index dim() const { return static_cast<Index>(points_.cols()); }
  bool empty() const { return points_.rows() == 0; }

  const Matrix& points() const { return points_; }
  const std::vector<int>& labels() const { return labels_; }
  int label(Index i) const { return labels_[static_cast<std::size_t>(i)]; }
  auto point(Index i) const { return points_.row(i); }

  /// Distinct labels in ascending order.
  std::vector<int> classes() const {
    std::vector<int> out = labels_;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  Index count(int label) const {
    return static_cast<Index>(std::count(labels_.begin(), labels_.end(), label));
  }

  /// Cloud whose point i is this cloud's point perm[i].
  LabeledPointCloud permuted(std::span<const Index> perm) const {
    Matrix p(points_.rows(), points_.cols());
    std::vector<int> l(labels_.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
      p.row(static_cast<Index>(i)) = points_.row(perm[i]);
      l[i] = labels_[static_cast<std::size_t>(perm[i])];
    }
    return LabeledPointCloud(std::move(p), std::move(l));
  }

  LabeledPointCloud scaled(Scalar factor) const {
    return LabeledPointCloud(Matrix(points_ * factor), labels_);
  }

  /// Points carrying `label`, together with their ids in this cloud.
  std::pair<Matrix, std::vector<Index>> class_points(int label) const {
    std::vector<Index> ids;
    for (Index i = 0; i < size(); ++i)
      if (labels_[static_cast<std::size_t>(i)] == label) ids.push_back(i);
    Matrix sub(static_cast<Index>(ids.size()), points_.cols());
    for (std::size_t r = 0; r < ids.size(); ++r) sub.row(static_cast<Index>(r)) = points_.row(ids[r]);
    return {std::move(sub), std::move(ids)};
  }

 private:
  Matrix points_;
  std::vector<int> labels_;
};

using PointCloud = LabeledPointCloud<double>;

/// Pairwise distances over a cloud: either Euclidean on the coordinates or a
/// user-supplied symmetric matrix (for feature spaces computed elsewhere).
template <typename Scalar>
class DistanceOracle {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  using PointMatrix = typename LabeledPointCloud<Scalar>::Matrix;

  static DistanceOracle euclidean(const LabeledPointCloud<Scalar>& cloud) {
    DistanceOracle oracle;
    oracle.points_ = cloud.points();
    oracle.n_ = cloud.size();
    return oracle;
  }

  static DistanceOracle precomputed(Matrix distances) {
    if (distances.rows() != distances.cols())
      throw ValidationError("distance matrix must be square");
    for (Index i = 0; i < distances.rows(); ++i) {
      if (distances(i, i) != Scalar(0))
        throw ValidationError("distance matrix diagonal must be zero (row " + std::to_string(i) + ")");
      for (Index j = 0; j < i; ++j) {
        if (!(distances(i, j) >= Scalar(0)))
          throw ValidationError("distance matrix entries must be nonnegative");
        if (distances(i, j) != distances(j, i))
          throw ValidationError("distance matrix is not symmetric at (" + std::to_string(i) + ", " +
                                std::to_string(j) + ")");
      }
    }
    DistanceOracle oracle;
    oracle.n_ = static_cast<Index>(distances.rows());
    oracle.matrix_ = std::move(distances);
    oracle.precomputed_ = true;
    return oracle;
  }

  Index size() const { return n_; }
  bool is_precomputed() const { return precomputed_; }

  Scalar distance(Index i, Index j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_)
      throw std::out_of_range("distance index out of range");
    return (*this)(i, j);
  }

  /// Unchecked. The lower id is always the left operand so that d(i, j) and d(j, i)
  /// are the same floating-point value.
  Scalar operator()(Index i, Index j) const {
    if (precomputed_) return matrix_(i, j);
    if (i > j) std::swap(i, j);
    return (points_.row(i) - points_.row(j)).norm();
  }

 private:
  DistanceOracle() = default;

  Index n_ = 0;
  bool precomputed_ = false;
  PointMatrix points_;
  Matrix matrix_;
};

enum class CsvHeader { Auto, Present, Absent };

/// Reads `x0,...,x{d-1},label` rows. Row order becomes the point ids.
PointCloud load_cloud(std::istream& in, CsvHeader header = CsvHeader::Auto);
PointCloud load_cloud_file(const std::string& path, CsvHeader header = CsvHeader::Auto);

/// Writes a header line and one row per point with round-trip-exact floats.
void save_cloud(std::ostream& out, const PointCloud& cloud);

/// n x n comma-separated matrix, no header.
Eigen::MatrixXd load_distance_matrix(std::istream& in);

}  // namespace dbtopo
