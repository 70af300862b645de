#include "dbtopo/synthetic.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <numbers>

namespace dbtopo {

using nlohmann::json;

Shape parse_shape(const std::string& name) {
  if (name == "two-circles") return Shape::TwoCircles;
  if (name == "twenty-five-circles") return Shape::TwentyFiveCircles;
  if (name == "noisy-circle") return Shape::NoisyCircle;
  if (name == "counterexample") return Shape::Counterexample;
  throw ValidationError("shape: unknown shape '" + name + "'");
}

std::string to_string(Shape shape) {
  switch (shape) {
    case Shape::TwoCircles: return "two-circles";
    case Shape::TwentyFiveCircles: return "twenty-five-circles";
    case Shape::NoisyCircle: return "noisy-circle";
    case Shape::Counterexample: return "counterexample";
  }
  return "unknown";
}

double PortableRng::normal() {
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

namespace {

// Disk/annulus pair around a boundary circle of radius r, with a class-free band of
// half-width `half_gap * r`. The plain construction closes the loop at a scale a little
// above the band width.
DiskAnnulus scaled_pair(Eigen::Vector2d center, double r, Index disk_count, Index annulus_count,
                        double half_gap = 0.45) {
  DiskAnnulus c;
  c.center = center;
  c.disk_radius = (1 - half_gap) * r;
  c.annulus_inner = (1 + half_gap) * r;
  c.annulus_outer = (1.45 + half_gap) * r;
  c.disk_count = disk_count;
  c.annulus_count = annulus_count;
  return c;
}

}  // namespace

std::uint64_t SyntheticSpec::default_seed(Shape shape) { return shape == Shape::TwoCircles ? 8 : 7; }

SyntheticSpec SyntheticSpec::defaults(Shape shape, std::optional<std::uint64_t> seed_override) {
  const std::uint64_t seed = seed_override.value_or(default_seed(shape));
  SyntheticSpec spec;
  spec.shape = shape;
  spec.seed = seed;
  switch (shape) {
    case Shape::TwoCircles:
      // The smaller pair is sampled more densely than the larger one.
      spec.components.push_back(scaled_pair({0.0, 0.0}, 1.0, 150, 150));
      spec.components.push_back(scaled_pair({12.0, 0.0}, 3.0, 100, 100));
      break;
    case Shape::TwentyFiveCircles: {
      // 5 x 5 layout; row g holds the five boundaries with radius near g + 1.
      PortableRng jitter(seed ^ 0x9e3779b97f4a7c15ULL);
      for (int g = 0; g < 5; ++g) {
        for (int c = 0; c < 5; ++c) {
          double r = (g + 1) * jitter.uniform(0.95, 1.05);
          spec.components.push_back(scaled_pair({24.0 * c, 24.0 * g}, r, 60, 60, 0.38));
        }
      }
      break;
    }
    case Shape::NoisyCircle:
      spec.noisy = NoisyCircle{};
      break;
    case Shape::Counterexample: {
      // One class: a disk. Other class: an annulus around that disk plus a second,
      // hollow annulus far away. Only the first annulus borders the other class.
      spec.components.push_back(scaled_pair({0.0, 0.0}, 1.0, 120, 120));
      DiskAnnulus hollow = scaled_pair({8.0, 0.0}, 1.0, 0, 120);
      spec.components.push_back(hollow);
      break;
    }
  }
  return spec;
}

void SyntheticSpec::validate() const {
  if (shape == Shape::NoisyCircle) {
    if (!(noisy.radius > 0)) throw ValidationError("noisy.radius must be > 0");
    if (!(noisy.noise >= 0)) throw ValidationError("noisy.noise must be >= 0");
    if (noisy.count < 0) throw ValidationError("noisy.count must be >= 0");
    return;
  }
  for (std::size_t i = 0; i < components.size(); ++i) {
    const auto& c = components[i];
    std::string where = "components[" + std::to_string(i) + "].";
    if (!(c.disk_radius > 0)) throw ValidationError(where + "disk_radius must be > 0");
    if (!(c.annulus_inner >= c.disk_radius))
      throw ValidationError(where + "annulus_inner must be >= disk_radius");
    if (!(c.annulus_outer > c.annulus_inner))
      throw ValidationError(where + "annulus_outer must be > annulus_inner");
    if (c.disk_count < 0) throw ValidationError(where + "disk_count must be >= 0");
    if (c.annulus_count < 0) throw ValidationError(where + "annulus_count must be >= 0");
    if (c.disk_label != 0 && c.disk_label != 1) throw ValidationError(where + "disk_label must be 0 or 1");
  }
}

BettiPair SyntheticSpec::ground_truth() const {
  if (shape == Shape::NoisyCircle) return noisy.count > 0 ? BettiPair{1, 1} : BettiPair{};
  int bounded = 0;
  for (const auto& c : components)
    if (c.disk_count > 0 && c.annulus_count > 0) ++bounded;
  return {bounded, bounded};
}

PointCloud generate(const SyntheticSpec& spec) {
  spec.validate();
  PortableRng rng(spec.seed);
  std::vector<double> xy;
  std::vector<int> labels;
  auto emit = [&](Eigen::Vector2d p, int label) {
    xy.push_back(p.x());
    xy.push_back(p.y());
    labels.push_back(label);
  };
  // Uniform by area on the annulus a <= |p - center| <= b.
  auto ring_sample = [&](const Eigen::Vector2d& center, double a, double b) {
    double r = std::sqrt(rng.uniform(a * a, b * b));
    double t = rng.uniform(0.0, 2.0 * std::numbers::pi);
    return Eigen::Vector2d(center.x() + r * std::cos(t), center.y() + r * std::sin(t));
  };

  if (spec.shape == Shape::NoisyCircle) {
    const auto& nc = spec.noisy;
    for (Index i = 0; i < nc.count; ++i) {
      double t = rng.uniform(0.0, 2.0 * std::numbers::pi);
      double r = nc.radius + nc.noise * rng.normal();
      emit({nc.center.x() + r * std::cos(t), nc.center.y() + r * std::sin(t)}, r < nc.radius ? 0 : 1);
    }
  } else {
    for (const auto& c : spec.components) {
      for (Index i = 0; i < c.disk_count; ++i) emit(ring_sample(c.center, 0.0, c.disk_radius), c.disk_label);
      for (Index i = 0; i < c.annulus_count; ++i)
        emit(ring_sample(c.center, c.annulus_inner, c.annulus_outer), 1 - c.disk_label);
    }
  }

  Index n = static_cast<Index>(labels.size());
  PointCloud::Matrix points(n, 2);
  for (Index i = 0; i < n; ++i) {
    points(i, 0) = xy[static_cast<std::size_t>(2 * i)];
    points(i, 1) = xy[static_cast<std::size_t>(2 * i + 1)];
  }
  return PointCloud(std::move(points), std::move(labels));
}

namespace {

json vec2_json(const Eigen::Vector2d& v) { return json::array({v.x(), v.y()}); }

Eigen::Vector2d vec2_from(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ValidationError(field + " must be a two-element numeric array");
  return {j[0].get<double>(), j[1].get<double>()};
}

template <typename T>
T number_field(const json& obj, const char* key, T fallback, const std::string& where) {
  if (!obj.contains(key)) return fallback;
  const auto& v = obj.at(key);
  if (!v.is_number()) throw ValidationError(where + key + " must be a number");
  if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer()) throw ValidationError(where + key + " must be an integer");
  }
  return v.get<T>();
}

}  // namespace

SyntheticSpec spec_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("spec is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("shape") || !j["shape"].is_string())
    throw ValidationError("shape: spec must be an object with a string 'shape' field");
  Shape shape = parse_shape(j["shape"].get<std::string>());
  auto seed = number_field<std::uint64_t>(j, "seed", SyntheticSpec::default_seed(shape), "");
  SyntheticSpec spec = SyntheticSpec::defaults(shape, seed);

  if (j.contains("components")) {
    if (!j["components"].is_array()) throw ValidationError("components must be an array");
    spec.components.clear();
    for (std::size_t i = 0; i < j["components"].size(); ++i) {
      const auto& cj = j["components"][i];
      std::string where = "components[" + std::to_string(i) + "].";
      if (!cj.is_object()) throw ValidationError(where + " must be an object");
      DiskAnnulus c;
      if (cj.contains("center")) c.center = vec2_from(cj["center"], where + "center");
      c.disk_radius = number_field(cj, "disk_radius", c.disk_radius, where);
      c.annulus_inner = number_field(cj, "annulus_inner", c.annulus_inner, where);
      c.annulus_outer = number_field(cj, "annulus_outer", c.annulus_outer, where);
      c.disk_count = number_field(cj, "disk_count", c.disk_count, where);
      c.annulus_count = number_field(cj, "annulus_count", c.annulus_count, where);
      c.disk_label = number_field(cj, "disk_label", c.disk_label, where);
      spec.components.push_back(c);
    }
  }
  if (j.contains("noisy")) {
    const auto& nj = j["noisy"];
    if (!nj.is_object()) throw ValidationError("noisy must be an object");
    if (nj.contains("center")) spec.noisy.center = vec2_from(nj["center"], "noisy.center");
    spec.noisy.radius = number_field(nj, "radius", spec.noisy.radius, "noisy.");
    spec.noisy.noise = number_field(nj, "noise", spec.noisy.noise, "noisy.");
    spec.noisy.count = number_field(nj, "count", spec.noisy.count, "noisy.");
  }
  spec.validate();
  return spec;
}

std::string spec_to_json(const SyntheticSpec& spec) {
  json j;
  j["shape"] = to_string(spec.shape);
  j["seed"] = spec.seed;
  if (spec.shape == Shape::NoisyCircle) {
    j["noisy"] = {{"center", vec2_json(spec.noisy.center)},
                  {"radius", spec.noisy.radius},
                  {"noise", spec.noisy.noise},
                  {"count", spec.noisy.count}};
  } else {
    j["components"] = json::array();
    for (const auto& c : spec.components) {
      j["components"].push_back({{"center", vec2_json(c.center)},
                                 {"disk_radius", c.disk_radius},
                                 {"annulus_inner", c.annulus_inner},
                                 {"annulus_outer", c.annulus_outer},
                                 {"disk_count", c.disk_count},
                                 {"annulus_count", c.annulus_count},
                                 {"disk_label", c.disk_label}});
    }
  }
  return j.dump(2);
}

}  // namespace dbtopo
