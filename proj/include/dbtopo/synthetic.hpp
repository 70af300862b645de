#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "dbtopo/pointcloud.hpp"

namespace dbtopo {

enum class Shape { TwoCircles, TwentyFiveCircles, NoisyCircle, Counterexample };

Shape parse_shape(const std::string& name);
std::string to_string(Shape shape);

/// A disk of one class surrounded by an annulus of the other. The class boundary is
/// the circle midway between `disk_radius` and `annulus_inner`. A component with
/// `disk_count == 0` is a hollow annulus and contributes no boundary.
struct DiskAnnulus {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double disk_radius = 1.0;
  double annulus_inner = 1.0;
  double annulus_outer = 2.0;
  Index disk_count = 0;
  Index annulus_count = 0;
  int disk_label = 0;
};

/// Samples around a circle with Gaussian radial noise; labeled by which side of the
/// circle they fall on, so the boundary is the circle itself.
struct NoisyCircle {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double radius = 1.0;
  double noise = 0.1;
  Index count = 200;
};

struct BettiPair {
  int b0 = 0;
  int b1 = 0;
  friend bool operator==(const BettiPair&, const BettiPair&) = default;
};

struct SyntheticSpec {
  Shape shape = Shape::TwoCircles;
  std::uint64_t seed = 7;
  std::vector<DiskAnnulus> components;
  NoisyCircle noisy;

  /// The shipped geometry for `shape`, with `default_seed(shape)` unless a seed is given.
  static SyntheticSpec defaults(Shape shape, std::optional<std::uint64_t> seed = std::nullopt);
  static std::uint64_t default_seed(Shape shape);

  /// Throws ValidationError naming the first offending field.
  void validate() const;

  /// Betti numbers of the true class boundary.
  BettiPair ground_truth() const;
};

SyntheticSpec spec_from_json(const std::string& json_text);
std::string spec_to_json(const SyntheticSpec& spec);

/// Portable random source: mt19937_64 (its output sequence is fixed by the C++
/// standard) with hand-written transforms, since std distributions differ between
/// standard libraries.
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  /// Standard normal via Box-Muller (one draw per call, the sine branch is discarded).
  double normal();
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

PointCloud generate(const SyntheticSpec& spec);

}  // namespace dbtopo
