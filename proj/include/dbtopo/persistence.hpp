#pragma once

#include <iosfwd>
#include <vector>

#include "dbtopo/core.hpp"
#include "dbtopo/filtration.hpp"

namespace dbtopo {

struct PersistencePair {
  int dim = 0;
  Value birth = 0;
  Value death = kInfinity;  ///< +inf when the class is never killed inside the filtration

  bool essential() const { return death == kInfinity; }
  bool zero_persistence() const { return birth == death; }
  Value lifetime() const { return death - birth; }
  friend bool operator==(const PersistencePair&, const PersistencePair&) = default;
};

/// `All` counts every vertex from 0. `NontrivialH0` ignores singleton components:
/// each vertex is born at its first incident edge, and a vertex with no edge never
/// carries a class.
enum class H0Convention { All, NontrivialH0 };

const char* to_string(H0Convention convention);
H0Convention parse_h0_convention(const std::string& text);

struct PersistenceDiagram {
  std::vector<PersistencePair> pairs;
  H0Convention convention = H0Convention::NontrivialH0;
  int max_hom_dim = 1;

  std::vector<PersistencePair> in_dim(int dim) const;
};

/// Z/2 persistent homology through dimension `max_hom_dim`. H0 comes from a union-find
/// sweep over edges (elder rule); each higher dimension from left-to-right reduction of
/// the boundary matrix, highest dimension first so that paired columns are cleared.
/// Throws FiltrationOrderError if a face is missing, or appears after or above a coface.
PersistenceDiagram persistent_homology(const SimplicialFiltration& filtration, int max_hom_dim = 1,
                                       H0Convention convention = H0Convention::NontrivialH0);

/// Inclusive linear grid of `steps` values from start to stop.
struct ScaleGrid {
  Value start = 0;
  Value stop = 1;
  Index steps = 100;

  ScaleGrid() = default;
  ScaleGrid(Value start, Value stop, Index steps);

  Value at(Index t) const;
  std::vector<Value> values() const;
  Index size() const { return steps; }
};

ScaleGrid default_grid(GraphMode mode);

struct BettiCurve {
  int dim = 0;
  ScaleGrid grid;
  std::vector<Index> counts;

  Index total() const;
};

/// Pairs of dimension `dim` alive at theta, i.e. birth <= theta < death.
Index betti_at(const PersistenceDiagram& diagram, Value theta, int dim);
BettiCurve betti_curve(const PersistenceDiagram& diagram, const ScaleGrid& grid, int dim);

/// JSON array of {dim, birth, death} with death "inf" for essential classes.
void write_diagram_json(std::ostream& out, const PersistenceDiagram& diagram);
/// Header `theta,beta0,...` and one row per grid value.
void write_betti_csv(std::ostream& out, const std::vector<BettiCurve>& curves);

}  // namespace dbtopo
