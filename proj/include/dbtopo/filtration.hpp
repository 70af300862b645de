#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "dbtopo/core.hpp"
#include "dbtopo/neighborhood.hpp"

namespace dbtopo {

inline constexpr int kDefaultMaxDim = 2;

/// Owning simplex: strictly increasing vertex ids and a filtration value.
struct Simplex {
  std::vector<Index> vertices;
  Value value = 0;

  int dim() const { return static_cast<int>(vertices.size()) - 1; }
  friend bool operator==(const Simplex&, const Simplex&) = default;
};

/// (value, dim, lexicographic vertices).
bool filtration_less(const Simplex& a, const Simplex& b);

/// Simplices in filtration order, stored flat with a fixed vertex stride.
class SimplicialFiltration {
 public:
  struct View {
    std::span<const Index> vertices;
    Value value;
    int dim() const { return static_cast<int>(vertices.size()) - 1; }
  };

  SimplicialFiltration() = default;

  /// Sorts into canonical filtration order.
  static SimplicialFiltration from_simplices(std::vector<Simplex> simplices, Index vertex_count);
  /// Keeps the given order as is; persistence validates it.
  static SimplicialFiltration from_ordered(const std::vector<Simplex>& simplices, Index vertex_count);
  /// Flat buffers: simplex i owns vertices[offsets[i], offsets[i + 1]). Sorted when `sort`.
  static SimplicialFiltration from_flat(Index vertex_count, const std::vector<Index>& vertices,
                                        const std::vector<std::size_t>& offsets, std::vector<Value> values,
                                        bool sort, int declared_max_dim = -1);
  /// Fixed-stride buffers: simplex i owns vertices[i * (max_dim + 1), ...) of which the
  /// first dims[i] + 1 are used. Sorted in place when `sort`.
  static SimplicialFiltration from_strided(Index vertex_count, int max_dim, std::vector<Index> vertices,
                                           std::vector<std::uint8_t> dims, std::vector<Value> values, bool sort);

  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }
  Index vertex_count() const { return vertex_count_; }
  int max_dim() const { return max_dim_; }

  View operator[](std::size_t i) const {
    return {std::span<const Index>(vertices_.data() + i * stride_, std::size_t{dims_[i]} + 1), values_[i]};
  }
  Value value(std::size_t i) const { return values_[i]; }
  int dim(std::size_t i) const { return dims_[i]; }
  std::size_t count(int dim) const;

  std::vector<Simplex> simplices() const;

  /// Prefix of simplices with value <= theta. Requires value-sorted order.
  SimplicialFiltration prefix_up_to(Value theta) const;

 private:
  Index vertex_count_ = 0;
  int max_dim_ = 0;
  std::size_t stride_ = 1;
  std::vector<Index> vertices_;
  std::vector<std::uint8_t> dims_;
  std::vector<Value> values_;
};

/// Cross-class edges plus same-class edges for length-2 walks.
struct OneSkeleton {
  Index n = 0;
  std::vector<WeightedEdge> edges;  ///< canonical order
};

/// Adds an edge {a, b} for every pair sharing a cross-class neighbor w, valued at
/// min over w of max(value(a, w), value(w, b)). Edges above `threshold` are dropped.
OneSkeleton one_skeleton(const CrossClassGraph& graph, Value threshold = kInfinity);

/// Clique expansion up to `max_dim`; a simplex's value is the max of its edge values.
SimplicialFiltration expand(const OneSkeleton& skeleton, int max_dim = kDefaultMaxDim,
                            Value threshold = kInfinity);

/// All simplices with value <= theta.
inline SimplicialFiltration complex_at(const SimplicialFiltration& filtration, Value theta) {
  return filtration.prefix_up_to(theta);
}

/// Rows `value,v0,v1,...` in filtration order.
void write_filtration_csv(std::ostream& out, const SimplicialFiltration& filtration);
void write_graph_csv(std::ostream& out, const std::vector<WeightedEdge>& edges);

}  // namespace dbtopo
