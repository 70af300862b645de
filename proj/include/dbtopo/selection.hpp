#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dbtopo/core.hpp"

namespace dbtopo {

enum class Measure { Combined, H0, H1 };
const char* to_string(Measure measure);
Measure parse_measure(const std::string& text);

/// `Lower` keeps models scoring strictly below the dataset, `Higher` the rest.
enum class Subgroup { All, Lower, Higher };
const char* to_string(Subgroup subgroup);
Subgroup parse_subgroup(const std::string& text);

struct CatalogEntry {
  std::string id;
  std::optional<Index> h0_total;
  std::optional<Index> h1_total;  ///< absent when the source table leaves it blank

  /// Missing when the measure needs a blank total.
  std::optional<double> score(Measure measure) const;
};

/// Complexity scores keyed by id. Used both for pre-trained models and for datasets.
class ModelCatalog {
 public:
  void add(CatalogEntry entry);
  const std::vector<CatalogEntry>& entries() const { return entries_; }
  const CatalogEntry* find(const std::string& id) const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  std::vector<CatalogEntry> entries_;
  std::map<std::string, std::size_t> index_;
};

/// CSV with a header naming either `model_id,h0_total,h1_total` or
/// `class_a,class_b,h0_total,h1_total` (id becomes "<a>v<b>"). Blank totals are allowed.
ModelCatalog load_catalog(std::istream& in);
ModelCatalog load_catalog_file(const std::string& path);

class AccuracyMatrix {
 public:
  void set(const std::string& model_id, const std::string& dataset_id, double accuracy);
  std::optional<double> get(const std::string& model_id, const std::string& dataset_id) const;
  std::size_t size() const { return values_.size(); }

 private:
  std::map<std::pair<std::string, std::string>, double> values_;
};

/// CSV `model_id,dataset_id,accuracy` with a header row.
AccuracyMatrix load_accuracy(std::istream& in);
AccuracyMatrix load_accuracy_file(const std::string& path);

struct Ranking {
  std::vector<std::string> closest;
  std::vector<std::string> farthest;
  bool shortfall = false;  ///< fewer than m eligible models
  std::size_t eligible = 0;
};

/// Closest are the m smallest |score - dataset_score|, farthest the m largest; ties by id.
/// Models without a score for `measure` are skipped.
Ranking rank_models(const ModelCatalog& catalog, double dataset_score, Measure measure, Index m,
                    Subgroup subgroup = Subgroup::All, const std::optional<std::string>& exclude = std::nullopt);

enum class CiMethod { Normal, StudentT };
const char* to_string(CiMethod method);
CiMethod parse_ci_method(const std::string& text);

struct Interval {
  double lower = 0;
  double upper = 0;
  bool contains(double x) const { return lower <= x && x <= upper; }
};

/// mean +- critical * sd / sqrt(N) with the sample standard deviation. N = 1 gives a point.
Interval confidence_interval(const std::vector<double>& samples, CiMethod method = CiMethod::Normal,
                             double level = 0.95);

double mean_accuracy(const AccuracyMatrix& accuracy, const std::vector<std::string>& models,
                     const std::string& dataset_id);

struct DatasetGap {
  std::string dataset_id;
  double score = 0;
  Ranking ranking;
  double gap = 0;  ///< mean accuracy of closest minus mean accuracy of farthest
};

struct SubgroupReport {
  Subgroup subgroup = Subgroup::All;
  std::vector<DatasetGap> datasets;
  std::vector<std::string> skipped;  ///< datasets with no eligible model or no score
  double mean_gap = 0;
  Interval ci;
};

struct SelectionOptions {
  Measure measure = Measure::Combined;
  Index m = 5;
  std::vector<Subgroup> subgroups{Subgroup::All, Subgroup::Lower, Subgroup::Higher};
  bool exclude_self = false;
  CiMethod ci = CiMethod::Normal;
};

struct SelectionReport {
  SelectionOptions options;
  std::vector<SubgroupReport> subgroups;
};

/// For every dataset, rank the models against its score and compare accuracies.
/// Throws ValidationError listing every (model, dataset) pair the matrix lacks.
SelectionReport accuracy_gap(const ModelCatalog& models, const ModelCatalog& datasets, const AccuracyMatrix& accuracy,
                             const SelectionOptions& options);

void write_report_json(std::ostream& out, const SelectionReport& report);

}  // namespace dbtopo
