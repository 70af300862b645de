#pragma once

#include <string>

#include "dbtopo/filtration.hpp"
#include "dbtopo/pointcloud.hpp"

namespace dbtopo {

struct RenderOptions {
  int size = 640;  ///< square canvas side in pixels
  int margin = 20;
  double point_radius = 2.5;
};

/// SVG of complex_at(filtration, theta) over a planar cloud: filled triangles, edges,
/// then points colored by class. Throws ValidationError unless the cloud is 2-D.
std::string render_svg(const PointCloud& cloud, const SimplicialFiltration& filtration, Value theta,
                       const RenderOptions& options = {});

/// "<prefix>_theta_<value with 6 decimals>.svg"
std::string snapshot_filename(const std::string& prefix, Value theta);

}  // namespace dbtopo
