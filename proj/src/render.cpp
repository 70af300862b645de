#include "dbtopo/render.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace dbtopo {

namespace {

std::string fixed(double v, int digits) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, digits);
  if (ec != std::errc{}) return "0";
  std::string s(buf, end);
  return s == "-0.000" ? "0.000" : s;
}

const char* class_color(int label, int first_label) { return label == first_label ? "#d62728" : "#1f77b4"; }

}  // namespace

std::string render_svg(const PointCloud& cloud, const SimplicialFiltration& filtration, Value theta,
                       const RenderOptions& options) {
  if (cloud.dim() != 2) throw ValidationError("render needs a 2-D cloud, got dimension " + std::to_string(cloud.dim()));
  const auto& pts = cloud.points();
  double min_x = 0, max_x = 1, min_y = 0, max_y = 1;
  if (!cloud.empty()) {
    min_x = pts.col(0).minCoeff();
    max_x = pts.col(0).maxCoeff();
    min_y = pts.col(1).minCoeff();
    max_y = pts.col(1).maxCoeff();
  }
  double span = std::max({max_x - min_x, max_y - min_y, 1e-12});
  double scale = (options.size - 2.0 * options.margin) / span;
  auto px = [&](Index i) { return fixed(options.margin + (pts(i, 0) - min_x) * scale, 3); };
  auto py = [&](Index i) { return fixed(options.size - options.margin - (pts(i, 1) - min_y) * scale, 3); };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.size << "\" height=\"" << options.size
      << "\" viewBox=\"0 0 " << options.size << ' ' << options.size << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<g fill=\"#7f7f7f\" fill-opacity=\"0.25\" stroke=\"none\">\n";
  for (std::size_t i = 0; i < filtration.size() && filtration.value(i) <= theta; ++i) {
    auto s = filtration[i];
    if (s.dim() != 2) continue;
    svg << "<polygon points=\"" << px(s.vertices[0]) << ',' << py(s.vertices[0]) << ' ' << px(s.vertices[1]) << ','
        << py(s.vertices[1]) << ' ' << px(s.vertices[2]) << ',' << py(s.vertices[2]) << "\"/>\n";
  }
  svg << "</g>\n<g stroke=\"#444444\" stroke-width=\"0.6\">\n";
  for (std::size_t i = 0; i < filtration.size() && filtration.value(i) <= theta; ++i) {
    auto s = filtration[i];
    if (s.dim() != 1) continue;
    svg << "<line x1=\"" << px(s.vertices[0]) << "\" y1=\"" << py(s.vertices[0]) << "\" x2=\"" << px(s.vertices[1])
        << "\" y2=\"" << py(s.vertices[1]) << "\"/>\n";
  }
  svg << "</g>\n<g stroke=\"none\">\n";
  int first_label = cloud.empty() ? 0 : cloud.classes().front();
  for (Index i = 0; i < cloud.size(); ++i) {
    svg << "<circle cx=\"" << px(i) << "\" cy=\"" << py(i) << "\" r=\"" << fixed(options.point_radius, 2)
        << "\" fill=\"" << class_color(cloud.label(i), first_label) << "\"/>\n";
  }
  svg << "</g>\n<text x=\"" << options.margin << "\" y=\"" << options.margin - 6
      << "\" font-family=\"monospace\" font-size=\"12\">theta = " << fixed(theta, 6) << "</text>\n</svg>\n";
  return svg.str();
}

std::string snapshot_filename(const std::string& prefix, Value theta) {
  return prefix + "_theta_" + fixed(theta, 6) + ".svg";
}

}  // namespace dbtopo
