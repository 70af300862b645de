#include "dbtopo/pointcloud.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "dbtopo/format.hpp"

namespace dbtopo {

GraphMode parse_graph_mode(const std::string& text) {
  if (text == "plain" || text == "p-lvr") return GraphMode::Plain;
  if (text == "locally-scaled" || text == "ls" || text == "ls-lvr") return GraphMode::LocallyScaled;
  throw ValidationError("unknown graph mode '" + text + "' (expected plain or locally-scaled)");
}

namespace {

bool all_numeric(const std::vector<std::string_view>& fields) {
  double v;
  for (auto f : fields)
    if (!parse_double(f, v)) return false;
  return true;
}

}  // namespace

PointCloud load_cloud(std::istream& in, CsvHeader header) {
  std::vector<double> coords;
  std::vector<int> labels;
  std::vector<int> seen;
  Index dim = -1;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    if (first) {
      first = false;
      bool is_header = header == CsvHeader::Present || (header == CsvHeader::Auto && !all_numeric(fields));
      if (is_header) continue;
    }
    if (fields.size() < 2)
      throw ParseError(line_no, "expected at least one coordinate column and a label column");
    Index row_dim = static_cast<Index>(fields.size()) - 1;
    if (dim < 0) {
      dim = row_dim;
    } else if (row_dim != dim) {
      throw ParseError(line_no, "ragged row: expected " + std::to_string(dim + 1) + " fields, found " +
                                    std::to_string(fields.size()));
    }
    for (Index c = 0; c < dim; ++c) {
      double v;
      if (!parse_double(fields[static_cast<std::size_t>(c)], v) || !std::isfinite(v))
        throw ParseError(line_no, "non-numeric coordinate '" + std::string(fields[static_cast<std::size_t>(c)]) + "'");
      coords.push_back(v);
    }
    auto label_text = fields.back();
    int label = 0;
    auto [ptr, ec] = std::from_chars(label_text.data(), label_text.data() + label_text.size(), label);
    if (ec != std::errc() || ptr != label_text.data() + label_text.size())
      throw ParseError(line_no, "label '" + std::string(label_text) + "' is not an integer");
    if (std::find(seen.begin(), seen.end(), label) == seen.end()) {
      if (seen.size() == 2)
        throw ParseError(line_no, "third distinct label " + std::to_string(label) +
                                      " (a cloud may carry at most two classes)");
      seen.push_back(label);
    }
    labels.push_back(label);
  }

  Index n = static_cast<Index>(labels.size());
  PointCloud::Matrix points(n, std::max<Index>(dim, 0));
  for (Index i = 0; i < n; ++i)
    for (Index c = 0; c < dim; ++c) points(i, c) = coords[static_cast<std::size_t>(i * dim + c)];
  return PointCloud(std::move(points), std::move(labels));
}

PointCloud load_cloud_file(const std::string& path, CsvHeader header) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open cloud file '" + path + "'");
  return load_cloud(in, header);
}

void save_cloud(std::ostream& out, const PointCloud& cloud) {
  for (Index c = 0; c < cloud.dim(); ++c) out << 'x' << c << ',';
  out << "label\n";
  for (Index i = 0; i < cloud.size(); ++i) {
    for (Index c = 0; c < cloud.dim(); ++c) out << format_value(cloud.points()(i, c)) << ',';
    out << cloud.label(i) << '\n';
  }
}

Eigen::MatrixXd load_distance_matrix(std::istream& in) {
  std::vector<double> values;
  std::string line;
  std::size_t line_no = 0;
  Index cols = -1;
  Index rows = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_fields(line);
    if (cols < 0) cols = static_cast<Index>(fields.size());
    if (static_cast<Index>(fields.size()) != cols) throw ParseError(line_no, "ragged distance row");
    for (auto f : fields) {
      double v;
      if (!parse_double(f, v)) throw ParseError(line_no, "non-numeric distance '" + std::string(f) + "'");
      values.push_back(v);
    }
    ++rows;
  }
  if (rows == 0) return Eigen::MatrixXd(0, 0);
  if (rows != cols) throw ValidationError("distance matrix must be square");
  Eigen::MatrixXd m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) m(i, j) = values[static_cast<std::size_t>(i * cols + j)];
  return m;
}

}  // namespace dbtopo
