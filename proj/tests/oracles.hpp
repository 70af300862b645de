#pragma once
// Brute-force reference implementations. None of these call into the library's
// graph, filtration or persistence code.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Set = std::vector<int>;

struct Cloud {
  std::vector<std::vector<double>> pts;
  std::vector<int> labels;
  int n() const { return static_cast<int>(pts.size()); }
};

inline double dist(const Cloud& c, int i, int j) {
  double s = 0;
  for (std::size_t t = 0; t < c.pts[i].size(); ++t) {
    double d = c.pts[i][t] - c.pts[j][t];
    s += d * d;
  }
  return std::sqrt(s);
}

/// k-th smallest opposite-class distance, by full sort.
inline std::vector<double> rho(const Cloud& c, int k) {
  std::vector<double> out(c.n());
  for (int i = 0; i < c.n(); ++i) {
    std::vector<double> d;
    for (int j = 0; j < c.n(); ++j)
      if (c.labels[j] != c.labels[i]) d.push_back(dist(c, i, j));
    std::sort(d.begin(), d.end());
    out[i] = d[k - 1];
  }
  return out;
}

/// Cross-edge value with no neighbor cap; +inf when the edge never appears.
inline double edge_value(const Cloud& c, int i, int j, bool scaled, const std::vector<double>& r) {
  double d = dist(c, i, j);
  if (!scaled) return d;
  if (d == 0) return 0;
  double p = r[i] * r[j];
  if (p == 0) return std::numeric_limits<double>::infinity();
  return d / std::sqrt(p);
}

/// Clique complex at theta of the one-skeleton made of cross edges with value <= theta
/// plus same-class pairs that share a neighbor at theta. Sets are sorted vertex lists.
inline std::set<Set> complex_at(const Cloud& c, bool scaled, int k, double theta, int max_dim) {
  std::vector<double> r;
  if (scaled) r = rho(c, k);
  const int n = c.n();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  std::vector<std::vector<char>> cross(n, std::vector<char>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && c.labels[i] != c.labels[j] && edge_value(c, i, j, scaled, r) <= theta) cross[i][j] = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (cross[i][j]) adj[i][j] = 1;
      if (c.labels[i] == c.labels[j])
        for (int w = 0; w < n; ++w)
          if (cross[i][w] && cross[w][j]) adj[i][j] = 1;
    }
  std::set<Set> out;
  Set cur;
  auto grow = [&](auto&& self, int from) -> void {
    if (!cur.empty()) out.insert(cur);
    if (static_cast<int>(cur.size()) == max_dim + 1) return;
    for (int v = from; v < n; ++v) {
      bool ok = true;
      for (int u : cur)
        if (!adj[u][v]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  grow(grow, 0);
  return out;
}

/// Rank over GF(2) by Gaussian elimination on bit-packed rows.
inline int rank_gf2(std::vector<std::vector<std::uint64_t>> m, int cols) {
  int rank = 0;
  const int rows = static_cast<int>(m.size());
  for (int col = 0; col < cols && rank < rows; ++col) {
    const std::size_t w = static_cast<std::size_t>(col) / 64;
    const std::uint64_t bit = std::uint64_t{1} << (col % 64);
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][w] & bit) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[pivot], m[rank]);
    for (int r = rank + 1; r < rows; ++r)
      if (m[r][w] & bit)
        for (std::size_t t = w; t < m[r].size(); ++t) m[r][t] ^= m[rank][t];
    ++rank;
  }
  return rank;
}

/// Boundary matrix of dimension p (rows: p-simplices, cols: their faces).
inline int boundary_rank(const std::set<Set>& complex, int p) {
  if (p == 0) return 0;
  std::map<Set, int> lower;
  std::vector<Set> upper;
  for (const auto& s : complex) {
    if (static_cast<int>(s.size()) == p) lower.emplace(s, static_cast<int>(lower.size()));
    if (static_cast<int>(s.size()) == p + 1) upper.push_back(s);
  }
  if (lower.empty() || upper.empty()) return 0;
  const int cols = static_cast<int>(lower.size());
  std::vector<std::vector<std::uint64_t>> m(upper.size(), std::vector<std::uint64_t>((cols + 63) / 64, 0));
  for (std::size_t r = 0; r < upper.size(); ++r)
    for (std::size_t skip = 0; skip < upper[r].size(); ++skip) {
      Set f;
      for (std::size_t t = 0; t < upper[r].size(); ++t)
        if (t != skip) f.push_back(upper[r][t]);
      int c = lower.at(f);
      m[r][static_cast<std::size_t>(c) / 64] ^= std::uint64_t{1} << (c % 64);
    }
  return rank_gf2(std::move(m), cols);
}

/// Betti number p. `nontrivial` drops vertices without an edge first.
inline int betti(std::set<Set> complex, int p, bool nontrivial) {
  if (nontrivial) {
    std::set<int> touched;
    for (const auto& s : complex)
      if (s.size() >= 2) touched.insert(s.begin(), s.end());
    for (auto it = complex.begin(); it != complex.end();)
      it = (it->size() == 1 && !touched.count((*it)[0])) ? complex.erase(it) : std::next(it);
  }
  int count = 0;
  for (const auto& s : complex)
    if (static_cast<int>(s.size()) == p + 1) ++count;
  return count - boundary_rank(complex, p) - boundary_rank(complex, p + 1);
}

/// Smallest enclosing circle of planar points by trying every pair and triple.
inline double enclosing_radius_2d(const std::vector<Eigen::Vector2d>& p) {
  if (p.size() == 1) return 0;
  auto covers = [&](const Eigen::Vector2d& c, double r) {
    for (const auto& q : p)
      if ((q - c).norm() > r * (1 + 1e-12) + 1e-12) return false;
    return true;
  };
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = a + 1; b < p.size(); ++b) {
      Eigen::Vector2d c = (p[a] + p[b]) / 2;
      double r = (p[a] - c).norm();
      if (r < best && covers(c, r)) best = r;
      for (std::size_t d = b + 1; d < p.size(); ++d) {
        Eigen::Vector2d u = p[b] - p[a], v = p[d] - p[a];
        double den = 2 * (u.x() * v.y() - u.y() * v.x());
        if (std::abs(den) < 1e-14) continue;
        double uu = u.squaredNorm(), vv = v.squaredNorm();
        Eigen::Vector2d off((v.y() * uu - u.y() * vv) / den, (u.x() * vv - v.x() * uu) / den);
        Eigen::Vector2d cc = p[a] + off;
        double rr = off.norm();
        if (rr < best && covers(cc, rr)) best = rr;
      }
    }
  return best;
}

/// Every subset of S (up to max_dim + 1 points) whose enclosing radius is <= eps and
/// whose points each have a reference point within gamma.
inline std::set<Set> labeled_cech(const std::vector<Eigen::Vector2d>& S, const std::vector<Eigen::Vector2d>& W,
                                  double eps, double gamma, int max_dim) {
  std::set<Set> out;
  const int n = static_cast<int>(S.size());
  std::vector<char> near(n, 0);
  for (int i = 0; i < n; ++i)
    for (const auto& w : W)
      if ((S[i] - w).norm() <= gamma) near[i] = 1;
  for (int mask = 1; mask < (1 << n); ++mask) {
    Set s;
    std::vector<Eigen::Vector2d> pts;
    bool ok = true;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1) {
        if (!near[i]) ok = false;
        s.push_back(i);
        pts.push_back(S[i]);
      }
    if (!ok || static_cast<int>(s.size()) > max_dim + 1) continue;
    if (enclosing_radius_2d(pts) <= eps) out.insert(s);
  }
  return out;
}

/// Random labeled cloud with both classes holding at least `min_class` points.
inline Cloud random_cloud(std::mt19937_64& rng, int n, int dim, int min_class) {
  std::uniform_real_distribution<double> u(0, 1);
  Cloud c;
  while (true) {
    c.pts.assign(n, std::vector<double>(dim));
    c.labels.assign(n, 0);
    int ones = 0;
    for (int i = 0; i < n; ++i) {
      for (int t = 0; t < dim; ++t) c.pts[i][t] = u(rng);
      c.labels[i] = u(rng) < 0.5;
      ones += c.labels[i];
    }
    if (ones >= min_class && n - ones >= min_class) return c;
  }
}

}  // namespace oracle
