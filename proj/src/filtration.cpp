#include "dbtopo/filtration.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

#include "dbtopo/format.hpp"

namespace dbtopo {

bool filtration_less(const Simplex& a, const Simplex& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.vertices.size() != b.vertices.size()) return a.vertices.size() < b.vertices.size();
  return a.vertices < b.vertices;
}

SimplicialFiltration SimplicialFiltration::from_strided(Index vertex_count, int max_dim, std::vector<Index> vertices,
                                                        std::vector<std::uint8_t> dims, std::vector<Value> values,
                                                        bool sort) {
  SimplicialFiltration f;
  f.vertex_count_ = vertex_count;
  f.max_dim_ = std::max(max_dim, 0);
  f.stride_ = static_cast<std::size_t>(f.max_dim_) + 1;
  const std::size_t count = values.size();
  if (dims.size() != count || vertices.size() != count * f.stride_)
    throw ValidationError("strided filtration buffers have inconsistent sizes");
  f.vertices_ = std::move(vertices);
  f.dims_ = std::move(dims);
  f.values_ = std::move(values);
  if (!sort) return f;

  const std::size_t stride = f.stride_;
  std::vector<std::uint32_t> order(count);
  std::iota(order.begin(), order.end(), std::uint32_t{0});
  const Index* v = f.vertices_.data();
  std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) {
    if (f.values_[a] != f.values_[b]) return f.values_[a] < f.values_[b];
    if (f.dims_[a] != f.dims_[b]) return f.dims_[a] < f.dims_[b];
    return std::lexicographical_compare(v + a * stride, v + a * stride + f.dims_[a] + 1, v + b * stride,
                                        v + b * stride + f.dims_[b] + 1);
  });

  // Apply the permutation in place, one cycle at a time: slot j receives record order[j].
  std::vector<Index> saved(stride);
  for (std::size_t i = 0; i < count; ++i) {
    if (order[i] == i) continue;
    std::copy_n(f.vertices_.begin() + static_cast<std::ptrdiff_t>(i * stride), stride, saved.begin());
    std::uint8_t saved_dim = f.dims_[i];
    Value saved_value = f.values_[i];
    std::size_t j = i;
    while (true) {
      std::size_t k = order[j];
      order[j] = static_cast<std::uint32_t>(j);
      auto dst = f.vertices_.begin() + static_cast<std::ptrdiff_t>(j * stride);
      if (k == i) {
        std::copy(saved.begin(), saved.end(), dst);
        f.dims_[j] = saved_dim;
        f.values_[j] = saved_value;
        break;
      }
      std::copy_n(f.vertices_.begin() + static_cast<std::ptrdiff_t>(k * stride), stride, dst);
      f.dims_[j] = f.dims_[k];
      f.values_[j] = f.values_[k];
      j = k;
    }
  }
  return f;
}

SimplicialFiltration SimplicialFiltration::from_flat(Index vertex_count, const std::vector<Index>& vertices,
                                                     const std::vector<std::size_t>& offsets, std::vector<Value> values,
                                                     bool sort, int declared_max_dim) {
  const std::size_t count = values.size();
  if (offsets.size() != count + 1) throw ValidationError("flat filtration needs size + 1 offsets");
  int max_dim = std::max(declared_max_dim, 0);
  for (std::size_t i = 0; i < count; ++i) {
    if (offsets[i + 1] <= offsets[i]) throw ValidationError("a simplex needs at least one vertex");
    max_dim = std::max(max_dim, static_cast<int>(offsets[i + 1] - offsets[i]) - 1);
  }
  if (max_dim > 255) throw ValidationError("simplex dimension above 255");
  const auto stride = static_cast<std::size_t>(max_dim) + 1;
  std::vector<Index> strided(count * stride, -1);
  std::vector<std::uint8_t> dims(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::copy(vertices.begin() + static_cast<std::ptrdiff_t>(offsets[i]),
              vertices.begin() + static_cast<std::ptrdiff_t>(offsets[i + 1]),
              strided.begin() + static_cast<std::ptrdiff_t>(i * stride));
    dims[i] = static_cast<std::uint8_t>(offsets[i + 1] - offsets[i] - 1);
  }
  return from_strided(vertex_count, max_dim, std::move(strided), std::move(dims), std::move(values), sort);
}

namespace {

SimplicialFiltration flatten(const std::vector<Simplex>& simplices, Index vertex_count, bool sort) {
  std::vector<Index> vertices;
  std::vector<std::size_t> offsets{0};
  std::vector<Value> values;
  for (const auto& s : simplices) {
    if (s.vertices.empty()) throw ValidationError("a simplex needs at least one vertex");
    for (std::size_t i = 0; i < s.vertices.size(); ++i) {
      if (s.vertices[i] < 0 || s.vertices[i] >= vertex_count)
        throw ValidationError("simplex vertex " + std::to_string(s.vertices[i]) + " out of range");
      if (i > 0 && s.vertices[i] <= s.vertices[i - 1])
        throw ValidationError("simplex vertices must be strictly increasing");
    }
    vertices.insert(vertices.end(), s.vertices.begin(), s.vertices.end());
    offsets.push_back(vertices.size());
    values.push_back(s.value);
  }
  return SimplicialFiltration::from_flat(vertex_count, vertices, offsets, std::move(values), sort);
}

}  // namespace

SimplicialFiltration SimplicialFiltration::from_simplices(std::vector<Simplex> simplices, Index vertex_count) {
  return flatten(simplices, vertex_count, true);
}

SimplicialFiltration SimplicialFiltration::from_ordered(const std::vector<Simplex>& simplices, Index vertex_count) {
  return flatten(simplices, vertex_count, false);
}

std::size_t SimplicialFiltration::count(int dim) const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < size(); ++i)
    if (this->dim(i) == dim) ++c;
  return c;
}

std::vector<Simplex> SimplicialFiltration::simplices() const {
  std::vector<Simplex> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) {
    auto s = (*this)[i];
    out.push_back({std::vector<Index>(s.vertices.begin(), s.vertices.end()), s.value});
  }
  return out;
}

SimplicialFiltration SimplicialFiltration::prefix_up_to(Value theta) const {
  auto end = static_cast<std::size_t>(std::upper_bound(values_.begin(), values_.end(), theta) - values_.begin());
  SimplicialFiltration f;
  f.vertex_count_ = vertex_count_;
  f.max_dim_ = max_dim_;
  f.stride_ = stride_;
  f.values_.assign(values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(end));
  f.dims_.assign(dims_.begin(), dims_.begin() + static_cast<std::ptrdiff_t>(end));
  f.vertices_.assign(vertices_.begin(), vertices_.begin() + static_cast<std::ptrdiff_t>(end * stride_));
  return f;
}

OneSkeleton one_skeleton(const CrossClassGraph& graph, Value threshold) {
  const auto n = static_cast<std::size_t>(graph.n);
  std::vector<std::vector<std::pair<Index, Value>>> adjacency(n);
  OneSkeleton out;
  out.n = graph.n;
  for (const auto& e : graph.edges) {
    if (e.value > threshold) continue;
    adjacency[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.value);
    adjacency[static_cast<std::size_t>(e.v)].emplace_back(e.u, e.value);
    out.edges.push_back(e);
  }

  // Every pair of neighbors of a witness is a length-2 walk; neighbors of one vertex
  // in a bipartite graph share a class.
  std::vector<WeightedEdge> walks;
  for (auto& nbrs : adjacency) {
    std::sort(nbrs.begin(), nbrs.end());
    for (std::size_t a = 0; a < nbrs.size(); ++a)
      for (std::size_t b = a + 1; b < nbrs.size(); ++b)
        walks.push_back({nbrs[a].first, nbrs[b].first, std::max(nbrs[a].second, nbrs[b].second)});
  }
  std::sort(walks.begin(), walks.end(), [](const WeightedEdge& x, const WeightedEdge& y) {
    if (x.u != y.u) return x.u < y.u;
    if (x.v != y.v) return x.v < y.v;
    return x.value < y.value;
  });
  for (std::size_t i = 0; i < walks.size(); ++i)
    if (i == 0 || walks[i].u != walks[i - 1].u || walks[i].v != walks[i - 1].v) out.edges.push_back(walks[i]);

  std::sort(out.edges.begin(), out.edges.end(), canonical_less);
  return out;
}

namespace {

struct CliqueExpander {
  using Neighbors = std::vector<std::pair<Index, Value>>;

  const std::vector<Neighbors>& upper;  // neighbors with larger id, sorted by id
  int max_dim;
  std::vector<Index>& vertices;  // stride max_dim + 1, padded with -1
  std::vector<std::uint8_t>& dims;
  std::vector<Value>& values;
  std::vector<Index> clique;
  bool counting = false;
  std::size_t counted = 0;

  void emit(Value value) {
    if (counting) {
      ++counted;
      return;
    }
    vertices.insert(vertices.end(), clique.begin(), clique.end());
    vertices.resize(vertices.size() + static_cast<std::size_t>(max_dim) + 1 - clique.size(), -1);
    dims.push_back(static_cast<std::uint8_t>(clique.size() - 1));
    values.push_back(value);
  }

  // `candidates` are common upper neighbors of the clique, each carrying the max
  // edge value from the clique to it.
  void extend(Value value, const Neighbors& candidates) {
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      auto [w, wv] = candidates[c];
      Value nv = std::max(value, wv);
      clique.push_back(w);
      emit(nv);
      if (static_cast<int>(clique.size()) <= max_dim && c + 1 < candidates.size()) {
        Neighbors next;
        const auto& wn = upper[static_cast<std::size_t>(w)];
        auto it = wn.begin();
        for (std::size_t d = c + 1; d < candidates.size(); ++d) {
          auto [x, xv] = candidates[d];
          while (it != wn.end() && it->first < x) ++it;
          if (it == wn.end()) break;
          if (it->first == x) next.emplace_back(x, std::max(xv, it->second));
        }
        if (!next.empty()) extend(nv, next);
      }
      clique.pop_back();
    }
  }
};

}  // namespace

SimplicialFiltration expand(const OneSkeleton& skeleton, int max_dim, Value threshold) {
  if (max_dim < 1) throw ValidationError("max_dim must be >= 1");
  const auto n = static_cast<std::size_t>(skeleton.n);
  std::vector<CliqueExpander::Neighbors> upper(n);
  for (const auto& e : skeleton.edges)
    if (e.value <= threshold) upper[static_cast<std::size_t>(e.u)].emplace_back(e.v, e.value);
  for (auto& list : upper) std::sort(list.begin(), list.end());

  if (max_dim > 255) throw ValidationError("max_dim must be <= 255");
  std::vector<Index> vertices;
  std::vector<std::uint8_t> dims;
  std::vector<Value> values;
  CliqueExpander expander{upper, max_dim, vertices, dims, values, {}};
  // A counting pass first, so the buffers are allocated once at their final size.
  for (bool counting : {true, false}) {
    expander.counting = counting;
    for (std::size_t v = 0; v < n; ++v) {
      expander.clique = {static_cast<Index>(v)};
      expander.emit(0);
      expander.extend(0, upper[v]);
    }
    if (counting) {
      vertices.reserve(expander.counted * (static_cast<std::size_t>(max_dim) + 1));
      dims.reserve(expander.counted);
      values.reserve(expander.counted);
    }
  }
  return SimplicialFiltration::from_strided(skeleton.n, max_dim, std::move(vertices), std::move(dims),
                                            std::move(values), true);
}

void write_filtration_csv(std::ostream& out, const SimplicialFiltration& filtration) {
  for (std::size_t i = 0; i < filtration.size(); ++i) {
    auto s = filtration[i];
    out << format_value(s.value);
    for (Index v : s.vertices) out << ',' << v;
    out << '\n';
  }
}

void write_graph_csv(std::ostream& out, const std::vector<WeightedEdge>& edges) {
  out << "i,j,value\n";
  for (const auto& e : edges) out << e.u << ',' << e.v << ',' << format_value(e.value) << '\n';
}

}  // namespace dbtopo
