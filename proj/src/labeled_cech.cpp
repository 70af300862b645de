#include "dbtopo/labeled_cech.hpp"

#include <algorithm>

#include "dbtopo/miniball.hpp"

namespace dbtopo {

std::vector<Simplex> labeled_cech(const Eigen::MatrixXd& support_points, const Eigen::MatrixXd& reference_points,
                                  const LabeledCechParams& params, int max_dim) {
  if (!(params.epsilon > 0)) throw ValidationError("epsilon must be > 0");
  if (!(params.gamma >= 0)) throw ValidationError("gamma must be >= 0");
  if (max_dim < 0) throw ValidationError("max_dim must be >= 0");
  const Index n = static_cast<Index>(support_points.rows());
  if (n > kCechMaxPoints)
    throw OracleScaleExceeded("oracle scale exceeded: labeled Cech supports at most " +
                              std::to_string(kCechMaxPoints) + " points, got " + std::to_string(n));
  if (n > 0 && support_points.cols() > kCechMaxAmbientDim)
    throw OracleScaleExceeded("oracle scale exceeded: labeled Cech supports ambient dimension <= " +
                              std::to_string(kCechMaxAmbientDim));
  if (reference_points.rows() > 0 && n > 0 && reference_points.cols() != support_points.cols())
    throw ValidationError("support and reference points differ in dimension");

  std::vector<Index> covered;
  for (Index i = 0; i < n; ++i) {
    bool near = false;
    for (Index w = 0; w < reference_points.rows() && !near; ++w)
      near = (support_points.row(i) - reference_points.row(w)).norm() <= params.gamma;
    if (near) covered.push_back(i);
  }

  const Value slack = 1e-12 * std::max(Value(1), params.epsilon);
  std::vector<Simplex> out;
  const auto m = static_cast<Index>(covered.size());
  const Index max_size = std::min<Index>(m, max_dim + 1);
  // Subsets of the covered vertices, grown only from included simplices: a ball
  // enclosing a set encloses each subset, so exclusion is inherited by cofaces.
  std::vector<std::vector<Index>> frontier;
  for (Index i = 0; i < m; ++i) {
    out.push_back({{covered[static_cast<std::size_t>(i)]}, 0});
    frontier.push_back({i});
  }
  for (Index size = 2; size <= max_size; ++size) {
    std::vector<std::vector<Index>> next;
    for (const auto& local : frontier) {
      for (Index j = local.back() + 1; j < m; ++j) {
        std::vector<Eigen::Index> rows;
        for (Index l : local) rows.push_back(covered[static_cast<std::size_t>(l)]);
        rows.push_back(covered[static_cast<std::size_t>(j)]);
        auto ball = smallest_enclosing_ball(support_points, rows);
        if (ball.radius <= params.epsilon + slack) {
          auto grown = local;
          grown.push_back(j);
          std::vector<Index> ids(rows.begin(), rows.end());
          out.push_back({std::move(ids), ball.radius});
          next.push_back(std::move(grown));
        }
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), filtration_less);
  return out;
}

std::vector<Simplex> labeled_cech(const PointCloud& cloud, CechOrientation orientation,
                                  const LabeledCechParams& params, int max_dim) {
  auto classes = cloud.classes();
  if (classes.size() != 2) throw ValidationError("labeled Cech needs two nonempty classes");
  auto one_side = [&](int support_label, int reference_label) {
    auto [support, ids] = cloud.class_points(support_label);
    auto [reference, unused] = cloud.class_points(reference_label);
    auto local = labeled_cech(Eigen::MatrixXd(support), Eigen::MatrixXd(reference), params, max_dim);
    for (auto& s : local)
      for (auto& v : s.vertices) v = ids[static_cast<std::size_t>(v)];
    for (auto& s : local) std::sort(s.vertices.begin(), s.vertices.end());
    return local;
  };
  std::vector<Simplex> out;
  if (orientation != CechOrientation::Class1OverClass0) out = one_side(classes[0], classes[1]);
  if (orientation != CechOrientation::Class0OverClass1) {
    auto other = one_side(classes[1], classes[0]);
    out.insert(out.end(), other.begin(), other.end());
  }
  std::sort(out.begin(), out.end(), filtration_less);
  return out;
}

}  // namespace dbtopo
