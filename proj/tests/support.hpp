#pragma once

#include <set>
#include <string>
#include <vector>

#include "dbtopo/complexity.hpp"
#include "dbtopo/filtration.hpp"
#include "dbtopo/pointcloud.hpp"
#include "oracles.hpp"

#ifndef DBTOPO_DATA_DIR
#define DBTOPO_DATA_DIR "data"
#endif

namespace support {

inline std::string data_path(const std::string& rel) { return std::string(DBTOPO_DATA_DIR) + "/" + rel; }

inline dbtopo::PointCloud to_cloud(const oracle::Cloud& c) {
  const int dim = c.n() ? static_cast<int>(c.pts[0].size()) : 2;
  dbtopo::PointCloud::Matrix m(c.n(), dim);
  for (int i = 0; i < c.n(); ++i)
    for (int t = 0; t < dim; ++t) m(i, t) = c.pts[i][t];
  return {m, c.labels};
}

inline dbtopo::PointCloud cloud_2d(std::initializer_list<std::tuple<double, double, int>> rows) {
  dbtopo::PointCloud::Matrix m(static_cast<Eigen::Index>(rows.size()), 2);
  std::vector<int> labels;
  Eigen::Index i = 0;
  for (auto [x, y, l] : rows) {
    m(i, 0) = x;
    m(i, 1) = y;
    labels.push_back(l);
    ++i;
  }
  return {m, labels};
}

inline std::set<oracle::Set> simplex_sets(const dbtopo::SimplicialFiltration& f) {
  std::set<oracle::Set> out;
  for (std::size_t i = 0; i < f.size(); ++i) {
    auto s = f[i];
    out.insert(oracle::Set(s.vertices.begin(), s.vertices.end()));
  }
  return out;
}

inline std::set<oracle::Set> simplex_sets(const std::vector<dbtopo::Simplex>& v) {
  std::set<oracle::Set> out;
  for (const auto& s : v) out.insert(oracle::Set(s.vertices.begin(), s.vertices.end()));
  return out;
}

/// Full pipeline without a neighbor cap in effect (cap larger than any class).
inline dbtopo::PipelineResult pipeline(const dbtopo::PointCloud& cloud, dbtopo::GraphMode mode, int k = 5,
                                       int max_dim = 2, int cap = 20) {
  dbtopo::PipelineOptions o;
  o.mode = mode;
  o.k = k;
  o.cap = cap;
  o.max_dim = max_dim;
  return dbtopo::run_pipeline(cloud, dbtopo::DistanceOracle<double>::euclidean(cloud), o);
}

}  // namespace support
