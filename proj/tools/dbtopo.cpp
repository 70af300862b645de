// dbtopo: persistent homology of decision boundaries from labeled point clouds.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dbtopo/complexity.hpp"
#include "dbtopo/format.hpp"
#include "dbtopo/render.hpp"
#include "dbtopo/selection.hpp"
#include "dbtopo/synthetic.hpp"

using namespace dbtopo;

namespace {

bool g_error_json = false;

int fail(int code, const std::string& message) {
  if (g_error_json)
    std::cerr << nlohmann::json{{"error", message}, {"exit_code", code}}.dump() << '\n';
  else
    std::cerr << "dbtopo: " << message << '\n';
  return code;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Writes only after the content is complete, so failures never leave partial files.
void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ValidationError("cannot write '" + path + "'");
  out << content;
}

CsvHeader parse_header(const std::string& text) {
  if (text == "auto") return CsvHeader::Auto;
  if (text == "yes" || text == "present") return CsvHeader::Present;
  if (text == "no" || text == "absent") return CsvHeader::Absent;
  throw ValidationError("--header must be auto, yes or no");
}

struct CloudArgs {
  std::string cloud;
  std::string distances;
  std::string header = "auto";
};

struct PipelineArgs {
  std::string mode = "locally-scaled";
  Index k = kDefaultScaleNeighbors;
  Index cap = kDefaultNeighborCap;
  int max_dim = kDefaultMaxDim;
  int max_hom_dim = 1;
  std::string convention = "nontrivial-h0";
  std::optional<double> start, stop;
  Index steps = 100;
  unsigned threads = 1;

  PipelineOptions options() const {
    PipelineOptions o;
    o.mode = parse_graph_mode(mode);
    o.k = k;
    o.cap = cap;
    o.max_dim = max_dim;
    o.max_hom_dim = max_hom_dim;
    o.convention = parse_h0_convention(convention);
    o.threads = threads;
    return o;
  }

  ScaleGrid grid() const {
    ScaleGrid d = default_grid(parse_graph_mode(mode));
    return ScaleGrid(start.value_or(d.start), stop.value_or(d.stop), steps);
  }
};

void add_cloud_args(CLI::App* cmd, CloudArgs& a, bool required = true) {
  auto* opt = cmd->add_option("--cloud", a.cloud, "labeled point cloud CSV (x0,...,label)");
  if (required) opt->required();
  cmd->add_option("--distances", a.distances, "precomputed n x n distance matrix CSV (overrides Euclidean)");
  cmd->add_option("--header", a.header, "cloud CSV header: auto, yes, no")->capture_default_str();
}

void add_pipeline_args(CLI::App* cmd, PipelineArgs& a) {
  cmd->add_option("--mode", a.mode, "plain or locally-scaled")->capture_default_str();
  cmd->add_option("--k", a.k, "opposite-class neighbors for the local scale")->capture_default_str();
  cmd->add_option("--cap", a.cap, "cross-class candidates per point")->capture_default_str();
  cmd->add_option("--max-dim", a.max_dim, "largest simplex dimension")->capture_default_str();
  cmd->add_option("--max-hom-dim", a.max_hom_dim, "largest homology dimension")->capture_default_str();
  cmd->add_option("--convention", a.convention, "H0 convention: nontrivial-h0 or all")->capture_default_str();
  cmd->add_option("--grid-start", a.start, "first grid value (default 0 plain, 0.5 locally-scaled)");
  cmd->add_option("--grid-stop", a.stop, "last grid value (default 10 plain, 1.5 locally-scaled)");
  cmd->add_option("--grid-steps", a.steps, "grid size")->capture_default_str();
}

PointCloud load(const CloudArgs& a) { return load_cloud_file(a.cloud, parse_header(a.header)); }

DistanceOracle<double> oracle_for(const PointCloud& cloud, const CloudArgs& a) {
  if (a.distances.empty()) return DistanceOracle<double>::euclidean(cloud);
  std::ifstream in(a.distances);
  if (!in) throw ValidationError("cannot open distance matrix '" + a.distances + "'");
  auto oracle = DistanceOracle<double>::precomputed(load_distance_matrix(in));
  if (oracle.size() != cloud.size())
    throw ValidationError("distance matrix has " + std::to_string(oracle.size()) + " rows but the cloud has " +
                          std::to_string(cloud.size()) + " points");
  return oracle;
}

std::string betti_text(BettiPair b) {
  return "(\xCE\xB2" "0, \xCE\xB2" "1) = (" + std::to_string(b.b0) + ", " + std::to_string(b.b1) + ")";
}

std::vector<Subgroup> parse_subgroups(const std::vector<std::string>& names) {
  std::vector<Subgroup> out;
  for (const auto& n : names) out.push_back(parse_subgroup(n));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Persistent homology of classifier decision boundaries"};
  app.require_subcommand(1);
  app.add_flag("--error-json", g_error_json, "report errors as JSON on stderr");
  unsigned threads = 1;
  app.add_option("--threads", threads, "worker threads (results do not depend on it)")->capture_default_str();

  // generate
  auto* gen = app.add_subcommand("generate", "write a synthetic labeled cloud");
  std::string spec_path, shape_name, gen_out;
  std::optional<std::uint64_t> seed;
  bool dump_spec = false;
  gen->add_option("--spec", spec_path, "JSON spec file");
  gen->add_option("--shape", shape_name, "two-circles, twenty-five-circles, noisy-circle, counterexample");
  gen->add_option("--seed", seed, "override the spec seed");
  gen->add_option("--out,-o", gen_out, "output CSV (default stdout)");
  gen->add_flag("--print-spec", dump_spec, "write the resolved spec JSON instead of points");

  // persistence
  auto* pers = app.add_subcommand("persistence", "persistence diagram and Betti curves");
  CloudArgs pers_cloud;
  PipelineArgs pers_pipe;
  std::string diagram_out, betti_out, graph_out, filtration_out;
  add_cloud_args(pers, pers_cloud);
  add_pipeline_args(pers, pers_pipe);
  pers->add_option("--diagram", diagram_out, "diagram JSON output")->required();
  pers->add_option("--betti", betti_out, "Betti curve CSV output")->required();
  pers->add_option("--graph", graph_out, "cross-class graph CSV output");
  pers->add_option("--filtration", filtration_out, "filtration CSV output");

  // complexity
  auto* comp = app.add_subcommand("complexity", "total-lifetime complexity record");
  CloudArgs comp_cloud;
  PipelineArgs comp_pipe;
  std::string comp_out, table_path, table_pair;
  add_cloud_args(comp, comp_cloud, false);
  add_pipeline_args(comp, comp_pipe);
  comp->add_option("--out,-o", comp_out, "record JSON (default stdout)");
  comp->add_option("--table", table_path, "read totals from a complexity table instead of computing");
  comp->add_option("--pair", table_pair, "table row id, e.g. 0v4");

  // select
  auto* sel = app.add_subcommand("select", "closest/farthest model selection");
  std::string catalog_path, datasets_path, accuracy_path, sel_out, measure = "combined", ci = "normal", dataset_id;
  std::vector<std::string> subgroups{"all", "lower", "higher"};
  Index m = 5;
  bool exclude_self = false;
  sel->add_option("--catalog", catalog_path, "model complexity CSV")->required();
  sel->add_option("--datasets", datasets_path, "dataset complexity CSV (default: the catalog)");
  sel->add_option("--accuracy", accuracy_path, "accuracy CSV model_id,dataset_id,accuracy");
  sel->add_option("--dataset", dataset_id, "rank models for this dataset only");
  sel->add_option("--measure", measure, "combined, h0 or h1")->capture_default_str();
  sel->add_option("--m", m, "models per list")->capture_default_str();
  sel->add_option("--subgroup", subgroups, "all, lower, higher (repeatable)");
  sel->add_flag("--exclude-self", exclude_self, "drop the model whose id equals the dataset id");
  sel->add_option("--ci", ci, "normal or t")->capture_default_str();
  sel->add_option("--out,-o", sel_out, "report JSON (default stdout)");

  // render
  auto* ren = app.add_subcommand("render", "SVG snapshots of the complex (2-D clouds)");
  CloudArgs ren_cloud;
  PipelineArgs ren_pipe;
  std::vector<double> thetas;
  Index count = 20;
  std::string out_dir = ".", prefix = "complex";
  add_cloud_args(ren, ren_cloud);
  add_pipeline_args(ren, ren_pipe);
  ren->add_option("--theta", thetas, "scale values (default: --count values spread over the grid)")->delimiter(',');
  ren->add_option("--count", count, "number of evenly spaced snapshots")->capture_default_str();
  ren->add_option("--out-dir", out_dir, "output directory")->capture_default_str();
  ren->add_option("--prefix", prefix, "file name prefix")->capture_default_str();

  // bound
  auto* bnd = app.add_subcommand("bound", "sample-size bound and manifold conditions");
  SampleBoundInputs sb;
  ManifoldBoundInputs mb;
  ManifoldConditionInputs mc;
  bool manifold = false, conditions = false;
  bnd->add_option("--q", sb.q, "mixture probability")->capture_default_str();
  bnd->add_option("--alpha-x", sb.alpha_x, "mass lower bound, first class")->capture_default_str();
  bnd->add_option("--alpha-y", sb.alpha_y, "mass lower bound, second class")->capture_default_str();
  bnd->add_option("--l-a", sb.l_a, "set count, first class")->capture_default_str();
  bnd->add_option("--l-b", sb.l_b, "set count, second class")->capture_default_str();
  bnd->add_option("--delta", sb.delta, "failure probability")->capture_default_str();
  bnd->add_flag("--manifold", manifold, "covering-number form (alpha as k_{r/2}, k_{s/2}; l as N_{r/2}, N_{s/2})");
  bnd->add_flag("--conditions", conditions, "also report the radius condition and epsilon window");
  bnd->add_option("--tau", mc.tau, "reach")->capture_default_str();
  bnd->add_option("--r", mc.r, "density radius, first class")->capture_default_str();
  bnd->add_option("--s", mc.s, "density radius, second class")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(2, e.what());
  }

  try {
    for (auto* p : {&pers_pipe, &comp_pipe, &ren_pipe}) p->threads = threads;

    if (*gen) {
      SyntheticSpec spec;
      if (!spec_path.empty())
        spec = spec_from_json(read_file(spec_path));
      else if (!shape_name.empty())
        spec = SyntheticSpec::defaults(parse_shape(shape_name));
      else
        throw ValidationError("generate needs --spec or --shape");
      if (seed) spec.seed = *seed;
      spec.validate();
      if (dump_spec) {
        emit(gen_out, spec_to_json(spec) + "\n");
        return 0;
      }
      std::ostringstream csv;
      save_cloud(csv, generate(spec));
      emit(gen_out, csv.str());
      std::cerr << to_string(spec.shape) << ": " << betti_text(spec.ground_truth()) << '\n';
      return 0;
    }

    if (*pers) {
      auto cloud = load(pers_cloud);
      auto oracle = oracle_for(cloud, pers_cloud);
      auto options = pers_pipe.options();
      auto grid = pers_pipe.grid();
      auto result = run_pipeline(cloud, oracle, options);
      std::ostringstream diagram, betti;
      write_diagram_json(diagram, result.diagram);
      std::vector<BettiCurve> curves;
      for (int d = 0; d <= options.max_hom_dim; ++d) curves.push_back(betti_curve(result.diagram, grid, d));
      write_betti_csv(betti, curves);
      emit(diagram_out, diagram.str());
      emit(betti_out, betti.str());
      if (!graph_out.empty()) {
        std::ostringstream g;
        write_graph_csv(g, result.graph.edges);
        emit(graph_out, g.str());
      }
      if (!filtration_out.empty()) {
        // Streamed: the filtration can run to millions of rows.
        std::ofstream f(filtration_out, std::ios::binary);
        if (!f) throw ValidationError("cannot write '" + filtration_out + "'");
        write_filtration_csv(f, result.filtration);
      }
      return 0;
    }

    if (*comp) {
      auto options = comp_pipe.options();
      auto grid = comp_pipe.grid();
      ComplexityRecord record;
      if (!table_path.empty()) {
        if (table_pair.empty()) throw ValidationError("--table needs --pair");
        auto table = load_catalog_file(table_path);
        const auto* entry = table.find(table_pair);
        if (!entry) throw ValidationError("no row '" + table_pair + "' in " + table_path);
        if (!entry->h0_total || !entry->h1_total)
          throw ValidationError("row '" + table_pair + "' has a blank total");
        record.h0_total = *entry->h0_total;
        record.h1_total = *entry->h1_total;
        record.combined = record.h0_total + record.h1_total;
        record.grid = grid;
        record.mode = options.mode;
        record.k = options.k;
        record.cap = options.cap;
      } else {
        if (comp_cloud.cloud.empty()) throw ValidationError("complexity needs --cloud or --table");
        auto cloud = load(comp_cloud);
        record = complexity(cloud, oracle_for(cloud, comp_cloud), grid, options);
      }
      std::ostringstream out;
      write_complexity_json(out, record);
      emit(comp_out, out.str());
      return 0;
    }

    if (*sel) {
      auto catalog = load_catalog_file(catalog_path);
      auto datasets = datasets_path.empty() ? catalog : load_catalog_file(datasets_path);
      SelectionOptions options;
      options.measure = parse_measure(measure);
      options.m = m;
      options.subgroups = parse_subgroups(subgroups);
      options.exclude_self = exclude_self;
      options.ci = parse_ci_method(ci);
      if (!dataset_id.empty()) {
        const auto* d = datasets.find(dataset_id);
        if (!d) throw ValidationError("unknown dataset '" + dataset_id + "'");
        auto score = d->score(options.measure);
        if (!score) throw ValidationError("dataset '" + dataset_id + "' has no " + measure + " score");
        nlohmann::json rows = nlohmann::json::array();
        for (Subgroup s : options.subgroups) {
          std::optional<std::string> exclude;
          if (exclude_self) exclude = dataset_id;
          auto r = rank_models(catalog, *score, options.measure, m, s, exclude);
          nlohmann::json closest = nlohmann::json::array(), farthest = nlohmann::json::array();
          for (const auto& id : r.closest)
            closest.push_back({{"model_id", id}, {"distance", std::abs(*catalog.find(id)->score(options.measure) - *score)}});
          for (const auto& id : r.farthest)
            farthest.push_back({{"model_id", id}, {"distance", std::abs(*catalog.find(id)->score(options.measure) - *score)}});
          rows.push_back({{"subgroup", to_string(s)}, {"closest", closest}, {"farthest", farthest}, {"shortfall", r.shortfall}});
        }
        nlohmann::json j = {{"dataset_id", dataset_id}, {"measure", measure}, {"score", *score}, {"rankings", rows}};
        emit(sel_out, j.dump(2) + "\n");
        return 0;
      }
      if (accuracy_path.empty()) throw ValidationError("select needs --accuracy (or --dataset for a ranking)");
      auto accuracy = load_accuracy_file(accuracy_path);
      std::ostringstream out;
      write_report_json(out, accuracy_gap(catalog, datasets, accuracy, options));
      emit(sel_out, out.str());
      return 0;
    }

    if (*ren) {
      auto cloud = load(ren_cloud);
      if (cloud.dim() != 2) throw ValidationError("render needs a 2-D cloud, got dimension " + std::to_string(cloud.dim()));
      auto options = ren_pipe.options();
      auto grid = ren_pipe.grid();
      if (thetas.empty()) {
        if (count < 1) throw ValidationError("--count must be >= 1");
        thetas = ScaleGrid(grid.start, count == 1 ? grid.start : grid.stop, count).values();
      }
      options.threshold = *std::max_element(thetas.begin(), thetas.end());
      auto result = run_pipeline(cloud, oracle_for(cloud, ren_cloud), options);
      std::filesystem::create_directories(out_dir);
      for (double t : thetas) {
        auto path = (std::filesystem::path(out_dir) / snapshot_filename(prefix, t)).string();
        emit(path, render_svg(cloud, result.filtration, t));
      }
      std::cerr << "wrote " << thetas.size() << " snapshot(s) to " << out_dir << '\n';
      return 0;
    }

    if (*bnd) {
      nlohmann::json j;
      if (manifold) {
        mb = {sb.q, sb.alpha_x, sb.alpha_y, sb.l_a, sb.l_b, sb.delta};
        j["form"] = "manifold";
        j["bound"] = manifold_sample_bound_value(mb);
        j["n"] = manifold_sample_bound(mb);
      } else {
        j["form"] = "sets";
        j["bound"] = sample_bound_value(sb);
        j["n"] = sample_bound(sb);
      }
      if (conditions) {
        auto c = manifold_conditions(mc);
        const auto& w = c.printed_epsilon_window;
        j["conditions"] = {{"r_ok", c.r_ok},
                           {"r_limit", c.r_limit},
                           {"printed_epsilon_window",
                            {{"lower", w.real ? nlohmann::json(w.lower) : nlohmann::json(nullptr)},
                             {"upper", w.real ? nlohmann::json(w.upper) : nlohmann::json(nullptr)},
                             {"real", w.real},
                             {"degenerate", w.degenerate}}}};
      }
      std::cout << j.dump(2) << '\n';
      return 0;
    }
  } catch (const ValidationError& e) {
    return fail(2, e.what());
  } catch (const std::out_of_range& e) {
    return fail(2, e.what());
  } catch (const std::exception& e) {
    return fail(1, std::string("internal error: ") + e.what());
  }
  return 0;
}
