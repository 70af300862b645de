#include <doctest.h>

#include <random>

#include "dbtopo/filtration.hpp"
#include "dbtopo/persistence.hpp"
#include "dbtopo/synthetic.hpp"
#include "support.hpp"

using namespace dbtopo;

namespace {

CrossClassGraph manual_graph(Index n, std::vector<WeightedEdge> edges) {
  CrossClassGraph g;
  g.n = n;
  std::sort(edges.begin(), edges.end(), canonical_less);
  g.edges = std::move(edges);
  return g;
}

Value edge_value(const OneSkeleton& s, Index u, Index v) {
  for (const auto& e : s.edges)
    if (e.u == u && e.v == v) return e.value;
  return -1;
}

PointCloud unit_square() { return support::cloud_2d({{0, 0, 0}, {1, 0, 1}, {1, 1, 0}, {0, 1, 1}}); }

}  // namespace

TEST_CASE("single witness: the 2-hop edge takes the larger value") {
  // a = 0, b = 2 in one class, w = 1 in the other.
  auto s = one_skeleton(manual_graph(3, {{0, 1, 1}, {1, 2, 3}}));
  CHECK(edge_value(s, 0, 2) == 3);
}

TEST_CASE("two witnesses: the 2-hop edge takes the smaller max") {
  auto s = one_skeleton(manual_graph(4, {{0, 1, 1}, {1, 2, 3}, {0, 3, 2}, {2, 3, 1}}));
  CHECK(edge_value(s, 0, 2) == 2);
}

TEST_CASE("unit square: sides at 1, both diagonals at 1 through 2-hop walks") {
  auto cloud = unit_square();
  auto d = DistanceOracle<double>::euclidean(cloud);
  auto g = build_graph(cloud, d, {GraphMode::Plain, 20, 1});
  CHECK(g.edges.size() == 4);
  for (const auto& e : g.edges) CHECK(e.value == 1);
  auto s = one_skeleton(g);
  CHECK(s.edges.size() == 6);
  CHECK(edge_value(s, 0, 2) == 1);
  CHECK(edge_value(s, 1, 3) == 1);

  auto f = expand(s, 3);
  CHECK(f.size() == 15);
  CHECK(f.count(3) == 1);
  CHECK(f.value(f.size() - 1) == 1);
  CHECK(f.dim(f.size() - 1) == 3);
}

TEST_CASE("triangle value is the max of its edges") {
  OneSkeleton s{3, {{0, 1, 1}, {1, 2, 2}, {0, 2, 3}}};
  std::sort(s.edges.begin(), s.edges.end(), canonical_less);
  auto f = expand(s, 2);
  REQUIRE(f.count(2) == 1);
  CHECK(f.value(f.size() - 1) == 3);
  CHECK(f.dim(f.size() - 1) == 2);
}

TEST_CASE("empty edge set gives the vertices only") {
  auto f = expand(OneSkeleton{5, {}}, 2);
  CHECK(f.size() == 5);
  CHECK(f.count(0) == 5);
}

TEST_CASE("complex_at below the first edge and at infinity") {
  auto cloud = unit_square();
  auto r = support::pipeline(cloud, GraphMode::Plain, 1, 3);
  CHECK(complex_at(r.filtration, 0.5).size() == 4);
  CHECK(complex_at(r.filtration, kInfinity).size() == r.filtration.size());
}

TEST_CASE("filtration order is valid and canonical") {
  std::mt19937_64 rng(41);
  auto cloud = support::to_cloud(oracle::random_cloud(rng, 40, 2, 10));
  auto f = support::pipeline(cloud, GraphMode::LocallyScaled).filtration;
  auto simplices = f.simplices();
  CHECK(std::is_sorted(simplices.begin(), simplices.end(), filtration_less));
  std::map<oracle::Set, Value> value;
  for (const auto& s : simplices) {
    value[s.vertices] = s.value;
    if (s.dim() == 0) continue;
    for (std::size_t skip = 0; skip < s.vertices.size(); ++skip) {
      oracle::Set face;
      for (std::size_t t = 0; t < s.vertices.size(); ++t)
        if (t != skip) face.push_back(s.vertices[t]);
      REQUIRE(value.count(face));
      CHECK(value[face] <= s.value);
    }
  }
}

TEST_CASE("2-hop edges join same-class vertices") {
  std::mt19937_64 rng(43);
  auto c = oracle::random_cloud(rng, 30, 2, 8);
  auto cloud = support::to_cloud(c);
  auto d = DistanceOracle<double>::euclidean(cloud);
  auto g = build_graph(cloud, d, {GraphMode::Plain, 20, 1});
  auto s = one_skeleton(g);
  std::set<std::pair<int, int>> cross;
  for (const auto& e : g.edges) cross.insert({e.u, e.v});
  for (const auto& e : s.edges)
    if (!cross.count({e.u, e.v})) CHECK(c.labels[e.u] == c.labels[e.v]);
}

TEST_CASE("complex at every theta equals the clique complex built from scratch") {
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<int> size(3, 9);
  for (int trial = 0; trial < 20; ++trial) {
    auto c = oracle::random_cloud(rng, size(rng), 2, 1);
    auto cloud = support::to_cloud(c);
    for (GraphMode mode : {GraphMode::Plain, GraphMode::LocallyScaled}) {
      const bool scaled = mode == GraphMode::LocallyScaled;
      auto f = support::pipeline(cloud, mode, 1, 3).filtration;
      for (double t : {0.05, 0.2, 0.4, 0.7, 0.9, 1.0, 1.2, 1.6, 3.0}) {
        auto expected = oracle::complex_at(c, scaled, 1, t, 3);
        CHECK(support::simplex_sets(complex_at(f, t)) == expected);
      }
    }
  }
}

TEST_CASE("threshold only removes simplices above it") {
  std::mt19937_64 rng(53);
  auto cloud = support::to_cloud(oracle::random_cloud(rng, 30, 2, 8));
  auto d = DistanceOracle<double>::euclidean(cloud);
  auto g = build_graph(cloud, d, {GraphMode::Plain, 20, 1});
  auto full = expand(one_skeleton(g), 2);
  auto cut = expand(one_skeleton(g, 0.3), 2, 0.3);
  CHECK(support::simplex_sets(cut) == support::simplex_sets(complex_at(full, 0.3)));
}

TEST_CASE("two-circles fixture at kappa 1.005 has two components and two loops") {
  auto cloud = generate(SyntheticSpec::defaults(Shape::TwoCircles));
  auto r = support::pipeline(cloud, GraphMode::LocallyScaled);
  CHECK(betti_at(r.diagram, 1.005, 0) == 2);
  CHECK(betti_at(r.diagram, 1.005, 1) == 2);
}
