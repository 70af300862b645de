#include "dbtopo/selection.hpp"

#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/students_t.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>

#include "dbtopo/format.hpp"

namespace dbtopo {

const char* to_string(Measure measure) {
  switch (measure) {
    case Measure::H0: return "h0";
    case Measure::H1: return "h1";
    default: return "combined";
  }
}

Measure parse_measure(const std::string& text) {
  if (text == "combined") return Measure::Combined;
  if (text == "h0") return Measure::H0;
  if (text == "h1") return Measure::H1;
  throw ValidationError("unknown measure '" + text + "' (expected combined, h0 or h1)");
}

const char* to_string(Subgroup subgroup) {
  switch (subgroup) {
    case Subgroup::Lower: return "lower";
    case Subgroup::Higher: return "higher";
    default: return "all";
  }
}

Subgroup parse_subgroup(const std::string& text) {
  if (text == "all") return Subgroup::All;
  if (text == "lower") return Subgroup::Lower;
  if (text == "higher") return Subgroup::Higher;
  throw ValidationError("unknown subgroup '" + text + "' (expected all, lower or higher)");
}

const char* to_string(CiMethod method) { return method == CiMethod::Normal ? "normal" : "t"; }

CiMethod parse_ci_method(const std::string& text) {
  if (text == "normal") return CiMethod::Normal;
  if (text == "t" || text == "student-t") return CiMethod::StudentT;
  throw ValidationError("unknown CI method '" + text + "' (expected normal or t)");
}

std::optional<double> CatalogEntry::score(Measure measure) const {
  switch (measure) {
    case Measure::H0:
      if (h0_total) return *h0_total;
      return std::nullopt;
    case Measure::H1:
      if (h1_total) return *h1_total;
      return std::nullopt;
    default:
      if (h0_total && h1_total) return *h0_total + *h1_total;
      return std::nullopt;
  }
}

void ModelCatalog::add(CatalogEntry entry) {
  if (entry.id.empty()) throw ValidationError("catalog ids must be nonempty");
  if ((entry.h0_total && *entry.h0_total < 0) || (entry.h1_total && *entry.h1_total < 0))
    throw ValidationError("catalog entry '" + entry.id + "' has a negative score");
  if (!index_.emplace(entry.id, entries_.size()).second)
    throw ValidationError("duplicate catalog id '" + entry.id + "'");
  entries_.push_back(std::move(entry));
}

const CatalogEntry* ModelCatalog::find(const std::string& id) const {
  auto it = index_.find(id);
  return it == index_.end() ? nullptr : &entries_[it->second];
}

namespace {

std::optional<Index> parse_total(std::string_view field, std::size_t line) {
  if (field.empty()) return std::nullopt;
  Index v = 0;
  auto [end, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || end != field.data() + field.size() || v < 0)
    throw ParseError(line, "expected a nonnegative integer total, got '" + std::string(field) + "'");
  return v;
}

int column(const std::vector<std::string_view>& header, std::string_view name) {
  auto it = std::find(header.begin(), header.end(), name);
  return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

}  // namespace

ModelCatalog load_catalog(std::istream& in) {
  ModelCatalog catalog;
  std::string header_line;
  std::size_t line_no = 0;
  while (std::getline(in, header_line)) {
    ++line_no;
    if (!trim(header_line).empty()) break;
  }
  if (trim(header_line).empty()) return catalog;
  auto header = split_fields(header_line);
  int id_col = column(header, "model_id");
  int a_col = column(header, "class_a");
  int b_col = column(header, "class_b");
  int h0_col = column(header, "h0_total");
  int h1_col = column(header, "h1_total");
  if (h0_col < 0 || h1_col < 0 || (id_col < 0 && (a_col < 0 || b_col < 0)))
    throw ParseError(line_no, "catalog header needs model_id (or class_a,class_b), h0_total and h1_total");

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != header.size())
      throw ParseError(line_no, "expected " + std::to_string(header.size()) + " fields, got " +
                                    std::to_string(fields.size()));
    CatalogEntry entry;
    if (id_col >= 0)
      entry.id = std::string(fields[static_cast<std::size_t>(id_col)]);
    else
      entry.id = std::string(fields[static_cast<std::size_t>(a_col)]) + "v" +
                 std::string(fields[static_cast<std::size_t>(b_col)]);
    entry.h0_total = parse_total(fields[static_cast<std::size_t>(h0_col)], line_no);
    entry.h1_total = parse_total(fields[static_cast<std::size_t>(h1_col)], line_no);
    try {
      catalog.add(std::move(entry));
    } catch (const ValidationError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return catalog;
}

ModelCatalog load_catalog_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open catalog '" + path + "'");
  return load_catalog(in);
}

void AccuracyMatrix::set(const std::string& model_id, const std::string& dataset_id, double accuracy) {
  if (!(accuracy >= 0 && accuracy <= 1))
    throw ValidationError("accuracy for (" + model_id + ", " + dataset_id + ") must lie in [0, 1]");
  values_[{model_id, dataset_id}] = accuracy;
}

std::optional<double> AccuracyMatrix::get(const std::string& model_id, const std::string& dataset_id) const {
  auto it = values_.find({model_id, dataset_id});
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

AccuracyMatrix load_accuracy(std::istream& in) {
  AccuracyMatrix matrix;
  std::string line;
  std::size_t line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != 3) throw ParseError(line_no, "expected model_id,dataset_id,accuracy");
    if (header) {
      header = false;
      if (fields[0] == "model_id") continue;
    }
    double acc;
    if (!parse_double(fields[2], acc)) throw ParseError(line_no, "non-numeric accuracy '" + std::string(fields[2]) + "'");
    try {
      matrix.set(std::string(fields[0]), std::string(fields[1]), acc);
    } catch (const ValidationError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return matrix;
}

AccuracyMatrix load_accuracy_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open accuracy matrix '" + path + "'");
  return load_accuracy(in);
}

Ranking rank_models(const ModelCatalog& catalog, double dataset_score, Measure measure, Index m, Subgroup subgroup,
                    const std::optional<std::string>& exclude) {
  if (m < 1) throw ValidationError("m must be >= 1");
  struct Candidate {
    double distance;
    const std::string* id;
  };
  std::vector<Candidate> pool;
  for (const auto& e : catalog.entries()) {
    auto s = e.score(measure);
    if (!s) continue;
    if (exclude && e.id == *exclude) continue;
    if (subgroup == Subgroup::Lower && !(*s < dataset_score)) continue;
    if (subgroup == Subgroup::Higher && !(*s >= dataset_score)) continue;
    pool.push_back({std::abs(*s - dataset_score), &e.id});
  }
  Ranking out;
  out.eligible = pool.size();
  out.shortfall = pool.size() < static_cast<std::size_t>(m);
  auto take = std::min(pool.size(), static_cast<std::size_t>(m));

  std::sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) {
    if (a.distance != b.distance) return a.distance < b.distance;
    return *a.id < *b.id;
  });
  for (std::size_t i = 0; i < take; ++i) out.closest.push_back(*pool[i].id);

  std::sort(pool.begin(), pool.end(), [](const Candidate& a, const Candidate& b) {
    if (a.distance != b.distance) return a.distance > b.distance;
    return *a.id < *b.id;
  });
  for (std::size_t i = 0; i < take; ++i) out.farthest.push_back(*pool[i].id);
  return out;
}

Interval confidence_interval(const std::vector<double>& samples, CiMethod method, double level) {
  if (samples.empty()) throw ValidationError("confidence interval of an empty sample");
  if (!(level > 0 && level < 1)) throw ValidationError("confidence level must lie in (0, 1)");
  const double n = static_cast<double>(samples.size());
  double mean = std::accumulate(samples.begin(), samples.end(), 0.0) / n;
  if (samples.size() == 1) return {mean, mean};
  double ss = 0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  double stderr_ = std::sqrt(ss / (n - 1)) / std::sqrt(n);
  double tail = (1 - level) / 2;
  double critical;
  if (method == CiMethod::Normal) {
    critical = level == 0.95 ? 1.96 : boost::math::quantile(boost::math::complement(boost::math::normal(), tail));
  } else {
    boost::math::students_t dist(n - 1);
    critical = boost::math::quantile(boost::math::complement(dist, tail));
  }
  return {mean - critical * stderr_, mean + critical * stderr_};
}

double mean_accuracy(const AccuracyMatrix& accuracy, const std::vector<std::string>& models,
                     const std::string& dataset_id) {
  if (models.empty()) throw ValidationError("mean accuracy over no models");
  double sum = 0;
  for (const auto& id : models) {
    auto v = accuracy.get(id, dataset_id);
    if (!v) throw ValidationError("accuracy matrix lacks (" + id + ", " + dataset_id + ")");
    sum += *v;
  }
  return sum / static_cast<double>(models.size());
}

SelectionReport accuracy_gap(const ModelCatalog& models, const ModelCatalog& datasets, const AccuracyMatrix& accuracy,
                             const SelectionOptions& options) {
  SelectionReport report;
  report.options = options;
  std::vector<std::string> missing;
  for (Subgroup subgroup : options.subgroups) {
    SubgroupReport sub;
    sub.subgroup = subgroup;
    for (const auto& d : datasets.entries()) {
      auto score = d.score(options.measure);
      if (!score) {
        sub.skipped.push_back(d.id);
        continue;
      }
      std::optional<std::string> exclude;
      if (options.exclude_self) exclude = d.id;
      Ranking ranking = rank_models(models, *score, options.measure, options.m, subgroup, exclude);
      if (ranking.eligible == 0) {
        sub.skipped.push_back(d.id);
        continue;
      }
      for (const auto* list : {&ranking.closest, &ranking.farthest})
        for (const auto& id : *list)
          if (!accuracy.get(id, d.id)) missing.push_back("(" + id + ", " + d.id + ")");
      sub.datasets.push_back({d.id, *score, std::move(ranking), 0});
    }
    report.subgroups.push_back(std::move(sub));
  }
  if (!missing.empty()) {
    std::sort(missing.begin(), missing.end());
    missing.erase(std::unique(missing.begin(), missing.end()), missing.end());
    std::string text = "accuracy matrix is missing " + std::to_string(missing.size()) + " pair(s):";
    for (const auto& m : missing) text += " " + m;
    throw ValidationError(text);
  }
  for (auto& sub : report.subgroups) {
    std::vector<double> gaps;
    for (auto& g : sub.datasets) {
      g.gap = mean_accuracy(accuracy, g.ranking.closest, g.dataset_id) -
              mean_accuracy(accuracy, g.ranking.farthest, g.dataset_id);
      gaps.push_back(g.gap);
    }
    if (!gaps.empty()) {
      sub.mean_gap = std::accumulate(gaps.begin(), gaps.end(), 0.0) / static_cast<double>(gaps.size());
      sub.ci = confidence_interval(gaps, options.ci);
    }
  }
  return report;
}

void write_report_json(std::ostream& out, const SelectionReport& report) {
  nlohmann::json subgroups = nlohmann::json::array();
  for (const auto& sub : report.subgroups) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& g : sub.datasets) {
      rows.push_back({{"dataset_id", g.dataset_id},
                      {"score", g.score},
                      {"closest_ids", g.ranking.closest},
                      {"farthest_ids", g.ranking.farthest},
                      {"shortfall", g.ranking.shortfall},
                      {"gap", g.gap}});
    }
    subgroups.push_back({{"subgroup", to_string(sub.subgroup)},
                         {"datasets", sub.datasets.size()},
                         {"mean_gap", sub.mean_gap},
                         {"ci", {sub.ci.lower, sub.ci.upper}},
                         {"ci_excludes_zero", !sub.datasets.empty() && !sub.ci.contains(0)},
                         {"skipped", sub.skipped},
                         {"per_dataset", rows}});
  }
  nlohmann::json j = {{"measure", to_string(report.options.measure)},
                      {"m", report.options.m},
                      {"exclude_self", report.options.exclude_self},
                      {"ci_method", to_string(report.options.ci)},
                      {"subgroups", subgroups}};
  out << j.dump(2) << '\n';
}

}  // namespace dbtopo
