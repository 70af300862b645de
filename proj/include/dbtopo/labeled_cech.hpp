#pragma once

#include <Eigen/Dense>

#include <vector>

#include "dbtopo/filtration.hpp"
#include "dbtopo/pointcloud.hpp"

namespace dbtopo {

/// Ball radius and reference proximity.
struct LabeledCechParams {
  Value epsilon = 1;
  Value gamma = kInfinity;
};

/// Exhaustive search is exact and cheap only at these sizes.
inline constexpr Index kCechMaxPoints = 16;
inline constexpr Index kCechMaxAmbientDim = 3;

/// Simplices on the rows of `support_points` whose vertices have a common point in
/// their epsilon-balls (smallest enclosing ball radius <= epsilon; tangency counts)
/// and each lie within gamma of some row of `reference_points`. A simplex's value is
/// its enclosing-ball radius. Output is in filtration order.
std::vector<Simplex> labeled_cech(const Eigen::MatrixXd& support_points, const Eigen::MatrixXd& reference_points,
                                  const LabeledCechParams& params, int max_dim);

enum class CechOrientation { Class0OverClass1, Class1OverClass0, Both };

/// Cloud-level wrapper: one class spans the complex, the other is the reference
/// set. Vertex ids are cloud ids; `Both` is the union of the two orientations.
std::vector<Simplex> labeled_cech(const PointCloud& cloud, CechOrientation orientation,
                                  const LabeledCechParams& params, int max_dim);

}  // namespace dbtopo
