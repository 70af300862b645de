#include "dbtopo/persistence.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <numeric>
#include <ostream>
#include <unordered_map>

#include "dbtopo/format.hpp"

namespace dbtopo {

const char* to_string(H0Convention convention) {
  return convention == H0Convention::All ? "all" : "nontrivial-h0";
}

H0Convention parse_h0_convention(const std::string& text) {
  if (text == "all") return H0Convention::All;
  if (text == "nontrivial-h0" || text == "nontrivial") return H0Convention::NontrivialH0;
  throw ValidationError("unknown H0 convention '" + text + "' (expected all or nontrivial-h0)");
}

std::vector<PersistencePair> PersistenceDiagram::in_dim(int dim) const {
  std::vector<PersistencePair> out;
  for (const auto& p : pairs)
    if (p.dim == dim) out.push_back(p);
  return out;
}

namespace {

using Column = std::vector<Index>;

std::string describe(const SimplicialFiltration& f, std::size_t i) {
  auto s = f[i];
  std::string text = "#" + std::to_string(i) + " {";
  for (std::size_t k = 0; k < s.vertices.size(); ++k) {
    if (k) text += ",";
    text += std::to_string(s.vertices[k]);
  }
  return text + "} @ " + format_value(s.value);
}

[[noreturn]] void order_error(const SimplicialFiltration& f, std::size_t face, std::size_t coface,
                              const char* problem) {
  throw FiltrationOrderError(std::string("invalid filtration: ") + problem + ": face " + describe(f, face) +
                             ", coface " + describe(f, coface));
}

/// Packs a short vertex tuple into a 128-bit key.
class SimplexKeys {
 public:
  SimplexKeys(Index vertex_count, int max_vertices) {
    bits_ = 1;
    while ((Index{1} << bits_) <= vertex_count && bits_ < 31) ++bits_;
    if (bits_ * max_vertices > 128)
      throw ValidationError("filtration too large for facet lookup (" + std::to_string(vertex_count) +
                            " vertices at dimension " + std::to_string(max_vertices - 1) + ")");
  }

  template <typename Range>
  unsigned __int128 key(const Range& vertices, std::size_t skip = static_cast<std::size_t>(-1)) const {
    unsigned __int128 k = 0;
    std::size_t pos = 0;
    for (Index v : vertices) {
      if (pos++ == skip) continue;
      k = (k << bits_) | static_cast<unsigned __int128>(static_cast<std::uint32_t>(v) + 1u);
    }
    return k;
  }

 private:
  int bits_;
};

struct KeyHash {
  std::size_t operator()(unsigned __int128 k) const noexcept {
    auto lo = static_cast<std::uint64_t>(k);
    auto hi = static_cast<std::uint64_t>(k >> 64);
    std::uint64_t h = lo * 0x9e3779b97f4a7c15ULL ^ (hi + 0x632be59bd9b4e019ULL + (lo << 6) + (lo >> 2));
    return static_cast<std::size_t>(h ^ (h >> 31));
  }
};

struct UnionFind {
  std::vector<Index> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), Index{0}); }
  Index find(Index x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      auto& p = parent[static_cast<std::size_t>(x)];
      p = parent[static_cast<std::size_t>(p)];
      x = p;
    }
    return x;
  }
};

void xor_into(Column& target, const Column& other, Column& scratch) {
  scratch.clear();
  std::set_symmetric_difference(target.begin(), target.end(), other.begin(), other.end(),
                                std::back_inserter(scratch));
  target.swap(scratch);
}

}  // namespace

PersistenceDiagram persistent_homology(const SimplicialFiltration& f, int max_hom_dim, H0Convention convention) {
  if (max_hom_dim < 0) throw ValidationError("max_hom_dim must be >= 0");
  PersistenceDiagram diagram;
  diagram.convention = convention;
  diagram.max_hom_dim = max_hom_dim;
  const std::size_t count = f.size();
  const auto n = static_cast<std::size_t>(f.vertex_count());

  for (std::size_t i = 1; i < count; ++i)
    if (f.value(i) < f.value(i - 1)) order_error(f, i - 1, i, "values decrease along the order");

  // H0: elder-rule union-find over edges in filtration order.
  std::vector<Index> vertex_pos(n, -1);
  std::vector<Value> birth(n, kInfinity);
  std::vector<std::size_t> birth_order(n, count);
  std::vector<char> seen(n, 0);
  std::vector<char> positive_edge(count, 0);
  std::size_t positive_edges = 0;
  UnionFind components(n);

  for (std::size_t i = 0; i < count; ++i) {
    auto s = f[i];
    if (s.dim() == 0) {
      auto v = static_cast<std::size_t>(s.vertices[0]);
      vertex_pos[v] = static_cast<Index>(i);
      if (convention == H0Convention::All) {
        birth[v] = s.value;
        birth_order[v] = i;
        seen[v] = 1;
      }
      continue;
    }
    if (s.dim() != 1) continue;
    for (Index endpoint : s.vertices) {
      auto v = static_cast<std::size_t>(endpoint);
      if (vertex_pos[v] < 0) {
        throw FiltrationOrderError("invalid filtration: edge " + describe(f, i) + " precedes its vertex " +
                                   std::to_string(endpoint));
      }
      if (f.value(static_cast<std::size_t>(vertex_pos[v])) > s.value)
        order_error(f, static_cast<std::size_t>(vertex_pos[v]), i, "face value exceeds coface value");
      if (!seen[v]) {
        seen[v] = 1;
        birth[v] = s.value;
        birth_order[v] = i;
      }
    }
    Index a = components.find(s.vertices[0]);
    Index b = components.find(s.vertices[1]);
    if (a == b) {
      positive_edge[i] = 1;
      ++positive_edges;
      continue;
    }
    auto older = [&](Index x, Index y) {
      auto xs = static_cast<std::size_t>(x), ys = static_cast<std::size_t>(y);
      if (birth[xs] != birth[ys]) return birth[xs] < birth[ys];
      if (birth_order[xs] != birth_order[ys]) return birth_order[xs] < birth_order[ys];
      return x < y;
    };
    Index keep = older(a, b) ? a : b;
    Index die = keep == a ? b : a;
    diagram.pairs.push_back({0, birth[static_cast<std::size_t>(die)], s.value});
    components.parent[static_cast<std::size_t>(die)] = keep;
  }
  for (std::size_t v = 0; v < n; ++v)
    if (vertex_pos[v] >= 0 && seen[v] && components.find(static_cast<Index>(v)) == static_cast<Index>(v))
      diagram.pairs.push_back({0, birth[v], kInfinity});

  if (max_hom_dim >= 1) {
    const int top = std::min(max_hom_dim + 1, f.max_dim());
    SimplexKeys keys(f.vertex_count(), std::max(top, 1));
    std::vector<char> cleared(count, 0);
    std::vector<char> paired_as_birth(count, 0);
    std::vector<PersistencePair> higher;

    for (int d = top; d >= 2; --d) {
      std::unordered_map<unsigned __int128, Index, KeyHash> facet_index;
      facet_index.reserve(f.count(d - 1));
      for (std::size_t i = 0; i < count; ++i)
        if (f.dim(i) == d - 1) facet_index.emplace(keys.key(f[i].vertices), static_cast<Index>(i));

      std::vector<Index> pivot_slot(count, -1);
      std::vector<Column> reduced;
      Column column, scratch;
      // Once every cycle-creating edge is paired, the remaining triangle columns
      // must reduce to zero.
      std::size_t pairs_found = 0;
      for (std::size_t c = 0; c < count; ++c) {
        if (f.dim(c) != d || cleared[c]) continue;
        auto s = f[c];
        column.clear();
        for (std::size_t skip = 0; skip < s.vertices.size(); ++skip) {
          auto it = facet_index.find(keys.key(s.vertices, skip));
          if (it == facet_index.end())
            throw FiltrationOrderError("invalid filtration: simplex " + describe(f, c) + " is missing a facet");
          auto face = static_cast<std::size_t>(it->second);
          if (face > c) order_error(f, face, c, "face appears after coface");
          if (f.value(face) > s.value) order_error(f, face, c, "face value exceeds coface value");
          column.push_back(it->second);
        }
        if (d == 2 && pairs_found == positive_edges) {
          if (d <= max_hom_dim) higher.push_back({d, s.value, kInfinity});
          continue;
        }
        std::sort(column.begin(), column.end());
        while (!column.empty()) {
          Index slot = pivot_slot[static_cast<std::size_t>(column.back())];
          if (slot < 0) break;
          xor_into(column, reduced[static_cast<std::size_t>(slot)], scratch);
        }
        if (column.empty()) {
          if (d <= max_hom_dim) higher.push_back({d, s.value, kInfinity});
          continue;
        }
        auto low = static_cast<std::size_t>(column.back());
        pivot_slot[low] = static_cast<Index>(reduced.size());
        reduced.push_back(column);
        cleared[low] = 1;
        paired_as_birth[low] = 1;
        higher.push_back({d - 1, f.value(low), s.value});
        if (d == 2) ++pairs_found;
      }
    }
    for (std::size_t i = 0; i < count; ++i)
      if (positive_edge[i] && !paired_as_birth[i]) diagram.pairs.push_back({1, f.value(i), kInfinity});
    diagram.pairs.insert(diagram.pairs.end(), higher.begin(), higher.end());
  }

  std::stable_sort(diagram.pairs.begin(), diagram.pairs.end(), [](const PersistencePair& a, const PersistencePair& b) {
    if (a.dim != b.dim) return a.dim < b.dim;
    if (a.birth != b.birth) return a.birth < b.birth;
    return a.death < b.death;
  });
  return diagram;
}

ScaleGrid::ScaleGrid(Value start_, Value stop_, Index steps_) : start(start_), stop(stop_), steps(steps_) {
  if (!(start <= stop)) throw ValidationError("grid start must be <= stop");
  if (steps < 1) throw ValidationError("grid steps must be >= 1");
  if (steps == 1 && start != stop) throw ValidationError("a one-step grid needs start == stop");
}

Value ScaleGrid::at(Index t) const {
  if (steps == 1) return start;
  if (t == steps - 1) return stop;
  return start + (stop - start) * static_cast<Value>(t) / static_cast<Value>(steps - 1);
}

std::vector<Value> ScaleGrid::values() const {
  std::vector<Value> out(static_cast<std::size_t>(steps));
  for (Index t = 0; t < steps; ++t) out[static_cast<std::size_t>(t)] = at(t);
  return out;
}

ScaleGrid default_grid(GraphMode mode) {
  return mode == GraphMode::Plain ? ScaleGrid(0.0, 10.0, 100) : ScaleGrid(0.5, 1.5, 100);
}

Index BettiCurve::total() const { return std::accumulate(counts.begin(), counts.end(), Index{0}); }

Index betti_at(const PersistenceDiagram& diagram, Value theta, int dim) {
  Index c = 0;
  for (const auto& p : diagram.pairs)
    if (p.dim == dim && p.birth <= theta && theta < p.death) ++c;
  return c;
}

BettiCurve betti_curve(const PersistenceDiagram& diagram, const ScaleGrid& grid, int dim) {
  BettiCurve curve;
  curve.dim = dim;
  curve.grid = grid;
  auto values = grid.values();
  curve.counts.assign(values.size(), 0);
  for (const auto& p : diagram.pairs) {
    if (p.dim != dim) continue;
    auto lo = std::lower_bound(values.begin(), values.end(), p.birth);
    auto hi = std::lower_bound(values.begin(), values.end(), p.death);
    for (auto it = lo; it < hi; ++it) ++curve.counts[static_cast<std::size_t>(it - values.begin())];
  }
  return curve;
}

void write_diagram_json(std::ostream& out, const PersistenceDiagram& diagram) {
  nlohmann::json pairs = nlohmann::json::array();
  for (const auto& p : diagram.pairs) {
    nlohmann::json death = p.essential() ? nlohmann::json("inf") : nlohmann::json(p.death);
    pairs.push_back({{"dim", p.dim}, {"birth", p.birth}, {"death", death}});
  }
  out << pairs.dump(2) << '\n';
}

void write_betti_csv(std::ostream& out, const std::vector<BettiCurve>& curves) {
  out << "theta";
  for (const auto& c : curves) out << ",beta" << c.dim;
  out << '\n';
  if (curves.empty()) return;
  auto values = curves.front().grid.values();
  for (std::size_t t = 0; t < values.size(); ++t) {
    out << format_value(values[t]);
    for (const auto& c : curves) out << ',' << c.counts[t];
    out << '\n';
  }
}

}  // namespace dbtopo
