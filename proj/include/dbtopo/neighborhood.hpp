#pragma once

#include <algorithm>
#include <cmath>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "dbtopo/core.hpp"
#include "dbtopo/parallel.hpp"
#include "dbtopo/pointcloud.hpp"

namespace dbtopo {

inline constexpr Index kDefaultNeighborCap = 20;
inline constexpr Index kDefaultScaleNeighbors = 5;

/// Undirected edge, stored with u < v.
struct WeightedEdge {
  Index u = 0;
  Index v = 0;
  Value value = 0;

  friend bool operator==(const WeightedEdge&, const WeightedEdge&) = default;
};

/// Canonical edge order: (value, u, v).
inline bool canonical_less(const WeightedEdge& a, const WeightedEdge& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.u != b.u) return a.u < b.u;
  return a.v < b.v;
}

/// rho[i] is the distance from point i to its k-th nearest point of the other class.
struct LocalScales {
  std::vector<Value> rho;
  Index k = kDefaultScaleNeighbors;
};

/// Bipartite neighborhood graph: every edge joins points of different classes and
/// carries the filtration value at which it appears.
struct CrossClassGraph {
  Index n = 0;
  GraphMode mode = GraphMode::Plain;
  Index cap = kDefaultNeighborCap;
  std::vector<WeightedEdge> edges;  ///< canonical order, finite values only
};

struct GraphOptions {
  GraphMode mode = GraphMode::Plain;
  Index cap = kDefaultNeighborCap;
  unsigned threads = 1;
};

namespace detail {

template <typename Scalar>
void require_two_classes(const LabeledPointCloud<Scalar>& cloud) {
  if (cloud.classes().size() != 2)
    throw ValidationError("cross-class constructions need two nonempty classes; the cloud has " +
                          std::to_string(cloud.classes().size()));
}

/// Locally scaled edge value. Coincident points join at 0; a zero scale at distinct
/// points means the edge never enters a finite filtration.
inline Value scaled_value(Value d, Value rho_i, Value rho_j) {
  if (d == 0) return 0;
  Value prod = rho_i * rho_j;
  if (prod == 0) return kInfinity;
  return d / std::sqrt(prod);
}

}  // namespace detail

template <typename Scalar>
LocalScales local_scales(const LabeledPointCloud<Scalar>& cloud, const DistanceOracle<Scalar>& oracle,
                         Index k, unsigned threads = 1) {
  detail::require_two_classes(cloud);
  if (k < 1) throw ValidationError("k must be >= 1");
  if (oracle.size() != cloud.size()) throw ValidationError("distance oracle size does not match cloud");
  for (int c : cloud.classes()) {
    Index opposite = cloud.size() - cloud.count(c);
    if (k > opposite)
      throw ValidationError("k = " + std::to_string(k) + " exceeds the " + std::to_string(opposite) +
                            " points opposite class " + std::to_string(c));
  }
  LocalScales out;
  out.k = k;
  out.rho.assign(static_cast<std::size_t>(cloud.size()), 0);
  parallel_for(cloud.size(), threads, [&](Index i) {
    std::vector<Value> d;
    for (Index j = 0; j < cloud.size(); ++j)
      if (cloud.label(j) != cloud.label(i)) d.push_back(static_cast<Value>(oracle(i, j)));
    std::nth_element(d.begin(), d.begin() + (k - 1), d.end());
    out.rho[static_cast<std::size_t>(i)] = d[static_cast<std::size_t>(k - 1)];
  });
  return out;
}

/// Per point, keep its `cap` nearest opposite-class points under the mode's edge value
/// (all ties at the cap boundary are kept), then symmetrize by union.
template <typename Scalar>
CrossClassGraph build_graph(const LabeledPointCloud<Scalar>& cloud, const DistanceOracle<Scalar>& oracle,
                            const GraphOptions& options, const LocalScales* scales = nullptr) {
  detail::require_two_classes(cloud);
  if (options.cap < 1) throw ValidationError("neighbor cap must be >= 1");
  if (oracle.size() != cloud.size()) throw ValidationError("distance oracle size does not match cloud");
  const bool scaled = options.mode == GraphMode::LocallyScaled;
  if (scaled && (scales == nullptr || scales->rho.size() != static_cast<std::size_t>(cloud.size())))
    throw ValidationError("locally-scaled graphs need local scales for every point");

  const Index n = cloud.size();
  std::vector<std::vector<WeightedEdge>> candidates(static_cast<std::size_t>(n));
  parallel_for(n, options.threads, [&](Index i) {
    std::vector<std::pair<Value, Index>> row;
    for (Index j = 0; j < n; ++j) {
      if (cloud.label(j) == cloud.label(i)) continue;
      Value d = static_cast<Value>(oracle(i, j));
      Value v = scaled ? detail::scaled_value(d, scales->rho[static_cast<std::size_t>(i)],
                                              scales->rho[static_cast<std::size_t>(j)])
                       : d;
      if (std::isfinite(v)) row.emplace_back(v, j);
    }
    std::size_t keep = row.size();
    if (static_cast<std::size_t>(options.cap) < row.size()) {
      auto nth = row.begin() + (options.cap - 1);
      std::nth_element(row.begin(), nth, row.end());
      Value boundary = nth->first;
      auto tail = std::partition(row.begin() + options.cap, row.end(),
                                 [boundary](const auto& e) { return e.first == boundary; });
      keep = static_cast<std::size_t>(tail - row.begin());
    }
    auto& out = candidates[static_cast<std::size_t>(i)];
    out.reserve(keep);
    for (std::size_t t = 0; t < keep; ++t) {
      Index j = row[t].second;
      out.push_back({std::min(i, j), std::max(i, j), row[t].first});
    }
  });

  CrossClassGraph graph;
  graph.n = n;
  graph.mode = options.mode;
  graph.cap = options.cap;
  for (auto& list : candidates) graph.edges.insert(graph.edges.end(), list.begin(), list.end());
  std::sort(graph.edges.begin(), graph.edges.end(), canonical_less);
  graph.edges.erase(std::unique(graph.edges.begin(), graph.edges.end(),
                                [](const WeightedEdge& a, const WeightedEdge& b) { return a.u == b.u && a.v == b.v; }),
                    graph.edges.end());
  return graph;
}

/// Graph edges with value <= theta (a prefix of the canonical order).
std::vector<WeightedEdge> edges_up_to(const CrossClassGraph& graph, Value theta);

}  // namespace dbtopo
