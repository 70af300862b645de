#include "dbtopo/complexity.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <ostream>

namespace dbtopo {

PipelineResult run_pipeline(const PointCloud& cloud, const DistanceOracle<double>& oracle,
                            const PipelineOptions& options) {
  PipelineResult result;
  result.diagram.convention = options.convention;
  result.diagram.max_hom_dim = options.max_hom_dim;
  result.graph.mode = options.mode;
  result.graph.cap = options.cap;
  if (cloud.empty()) return result;

  GraphOptions graph_options{options.mode, options.cap, options.threads};
  if (options.mode == GraphMode::LocallyScaled) {
    result.scales = local_scales(cloud, oracle, options.k, options.threads);
    result.graph = build_graph(cloud, oracle, graph_options, &*result.scales);
  } else {
    result.graph = build_graph(cloud, oracle, graph_options);
  }
  OneSkeleton skeleton = one_skeleton(result.graph, options.threshold);
  result.filtration = expand(skeleton, options.max_dim, options.threshold);
  result.diagram = persistent_homology(result.filtration, options.max_hom_dim, options.convention);
  return result;
}

ComplexityRecord complexity_from_diagram(const PersistenceDiagram& diagram, const ScaleGrid& grid,
                                         const PipelineOptions& options) {
  ComplexityRecord record;
  record.grid = grid;
  record.mode = options.mode;
  record.k = options.k;
  record.cap = options.cap;
  record.h0_total = betti_curve(diagram, grid, 0).total();
  record.h1_total = betti_curve(diagram, grid, 1).total();
  record.combined = record.h0_total + record.h1_total;
  return record;
}

ComplexityRecord complexity(const PointCloud& cloud, const DistanceOracle<double>& oracle, const ScaleGrid& grid,
                            PipelineOptions options) {
  options.max_hom_dim = std::max(options.max_hom_dim, 1);
  options.threshold = std::min(options.threshold, grid.stop);
  auto result = run_pipeline(cloud, oracle, options);
  return complexity_from_diagram(result.diagram, grid, options);
}

void write_complexity_json(std::ostream& out, const ComplexityRecord& record) {
  nlohmann::json j = {
      {"h0_total", record.h0_total},
      {"h1_total", record.h1_total},
      {"combined", record.combined},
      {"mode", to_string(record.mode)},
      {"k", record.k},
      {"cap", record.cap},
      {"grid", {{"start", record.grid.start}, {"stop", record.grid.stop}, {"steps", record.grid.steps}}},
  };
  out << j.dump(2) << '\n';
}

namespace {

void require_open_unit(double x, const char* name) {
  if (!(x > 0 && x < 1)) throw ValidationError(std::string(name) + " must lie in (0, 1)");
}

void require_mass(double x, const char* name) {
  if (!(x > 0 && x <= 1)) throw ValidationError(std::string(name) + " must lie in (0, 1]");
}

void require_count(double x, const char* name) {
  if (!(x >= 1) || !std::isfinite(x)) throw ValidationError(std::string(name) + " must be >= 1");
}

double two_term_bound(double q, double mass_a, double mass_b, double count_a, double count_b, double delta) {
  double log_delta = std::log(1 / delta);
  double a = (std::log(2 * count_a) + log_delta) / (mass_a * q);
  double b = (std::log(2 * count_b) + log_delta) / (mass_b * (1 - q));
  return std::max(a, b);
}

}  // namespace

double sample_bound_value(const SampleBoundInputs& in) {
  require_open_unit(in.q, "q");
  require_mass(in.alpha_x, "alpha_x");
  require_mass(in.alpha_y, "alpha_y");
  require_count(in.l_a, "l_a");
  require_count(in.l_b, "l_b");
  require_mass(in.delta, "delta");
  return two_term_bound(in.q, in.alpha_x, in.alpha_y, in.l_a, in.l_b, in.delta);
}

long long sample_bound(const SampleBoundInputs& in) {
  return static_cast<long long>(std::ceil(sample_bound_value(in)));
}

double manifold_sample_bound_value(const ManifoldBoundInputs& in) {
  require_open_unit(in.q, "q");
  require_mass(in.k_r, "k_r");
  require_mass(in.k_s, "k_s");
  require_count(in.n_r, "n_r");
  require_count(in.n_s, "n_s");
  require_mass(in.delta, "delta");
  return two_term_bound(in.q, in.k_r, in.k_s, in.n_r, in.n_s, in.delta);
}

long long manifold_sample_bound(const ManifoldBoundInputs& in) {
  return static_cast<long long>(std::floor(manifold_sample_bound_value(in))) + 1;
}

ManifoldConditions manifold_conditions(const ManifoldConditionInputs& in) {
  if (!(in.tau > 0) || !(in.r > 0) || !(in.s > 0)) throw ValidationError("tau, r and s must be > 0");
  ManifoldConditions out;
  out.r_limit = (std::sqrt(9.0) - std::sqrt(8.0)) * in.tau;
  out.r_ok = in.r < out.r_limit;
  double disc = in.r * in.r + in.tau * in.tau - 6 * in.tau * in.r;
  auto& w = out.printed_epsilon_window;
  w.real = disc >= 0;
  double root = w.real ? std::sqrt(disc) : std::nan("");
  w.lower = ((in.r + in.tau) + root) / 2;
  w.upper = ((in.r + in.tau) + root) / 2;
  w.degenerate = true;
  return out;
}

}  // namespace dbtopo
