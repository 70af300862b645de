#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "dbtopo/core.hpp"
#include "dbtopo/filtration.hpp"
#include "dbtopo/neighborhood.hpp"
#include "dbtopo/persistence.hpp"
#include "dbtopo/pointcloud.hpp"

namespace dbtopo {

struct PipelineOptions {
  GraphMode mode = GraphMode::LocallyScaled;
  Index k = kDefaultScaleNeighbors;
  Index cap = kDefaultNeighborCap;
  int max_dim = kDefaultMaxDim;
  int max_hom_dim = 1;
  H0Convention convention = H0Convention::NontrivialH0;
  /// Simplices above this value are never built. Grid counts at or below it are unaffected.
  Value threshold = kInfinity;
  unsigned threads = 1;
};

struct PipelineResult {
  std::optional<LocalScales> scales;
  CrossClassGraph graph;
  SimplicialFiltration filtration;
  PersistenceDiagram diagram;
};

/// graph -> one-skeleton -> clique expansion -> persistence. An empty cloud gives an
/// empty result; otherwise both classes must be present.
PipelineResult run_pipeline(const PointCloud& cloud, const DistanceOracle<double>& oracle,
                            const PipelineOptions& options);

struct ComplexityRecord {
  Index h0_total = 0;
  Index h1_total = 0;
  Index combined = 0;
  ScaleGrid grid;
  GraphMode mode = GraphMode::LocallyScaled;
  Index k = kDefaultScaleNeighbors;
  Index cap = kDefaultNeighborCap;
};

ComplexityRecord complexity_from_diagram(const PersistenceDiagram& diagram, const ScaleGrid& grid,
                                         const PipelineOptions& options);

/// Sum of beta0 and beta1 over the grid (nontrivial H0 unless options say otherwise).
/// The filtration is cut at the last grid value.
ComplexityRecord complexity(const PointCloud& cloud, const DistanceOracle<double>& oracle, const ScaleGrid& grid,
                            PipelineOptions options);

void write_complexity_json(std::ostream& out, const ComplexityRecord& record);

struct SampleBoundInputs {
  double q = 0.5;
  double alpha_x = 0.1;
  double alpha_y = 0.1;
  double l_a = 1;
  double l_b = 1;
  double delta = 0.05;
};

/// Real-valued right-hand side max((ln 2l_a + ln 1/delta)/(alpha_x q), (ln 2l_b + ln 1/delta)/(alpha_y (1-q))).
double sample_bound_value(const SampleBoundInputs& in);
/// Smallest integer n with n >= sample_bound_value.
long long sample_bound(const SampleBoundInputs& in);

/// Covering-number form for a manifold boundary: l_a, l_b are N_{r/2}, N_{s/2} and the
/// masses k_{r/2}, k_{s/2}. The inequality is strict, so the result is the smallest
/// integer strictly above the bound.
struct ManifoldBoundInputs {
  double q = 0.5;
  double k_r = 0.1;
  double k_s = 0.1;
  double n_r = 1;
  double n_s = 1;
  double delta = 0.05;
};

double manifold_sample_bound_value(const ManifoldBoundInputs& in);
long long manifold_sample_bound(const ManifoldBoundInputs& in);

struct ManifoldConditionInputs {
  double tau = 1;
  double r = 0.1;
  double s = 0.1;
};

struct EpsilonWindow {
  double lower = 0;
  double upper = 0;
  bool real = true;        ///< false when r^2 + tau^2 - 6 tau r < 0 and the endpoints are not real
  bool degenerate = true;  ///< both printed endpoints are the same expression
};

struct ManifoldConditions {
  bool r_ok = false;  ///< r < (sqrt 9 - sqrt 8) tau
  double r_limit = 0;
  EpsilonWindow printed_epsilon_window;
};

ManifoldConditions manifold_conditions(const ManifoldConditionInputs& in);

}  // namespace dbtopo
