#include "dbtopo/neighborhood.hpp"

namespace dbtopo {

std::vector<WeightedEdge> edges_up_to(const CrossClassGraph& graph, Value theta) {
  auto end = std::upper_bound(graph.edges.begin(), graph.edges.end(), theta,
                              [](Value t, const WeightedEdge& e) { return t < e.value; });
  return {graph.edges.begin(), end};
}

}  // namespace dbtopo
