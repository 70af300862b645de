#include <doctest.h>

#include <random>
#include <sstream>

#include "dbtopo/format.hpp"
#include "dbtopo/pointcloud.hpp"
#include "dbtopo/synthetic.hpp"
#include "support.hpp"

using namespace dbtopo;

TEST_CASE("distance on the diagonal and the 3-4-5 triangle") {
  auto cloud = support::cloud_2d({{0, 0, 0}, {3, 4, 1}});
  auto d = DistanceOracle<double>::euclidean(cloud);
  CHECK(d.distance(0, 0) == 0);
  CHECK(d.distance(0, 1) == 5);
  CHECK(d.distance(1, 0) == 5);
  CHECK_THROWS_AS(d.distance(0, 2), std::out_of_range);
}

TEST_CASE("euclidean distances equal a naive double loop") {
  std::mt19937_64 rng(11);
  for (int dim : {2, 3}) {
    auto c = oracle::random_cloud(rng, 10, dim, 1);
    auto cloud = support::to_cloud(c);
    auto d = DistanceOracle<double>::euclidean(cloud);
    for (int i = 0; i < 10; ++i)
      for (int j = 0; j < 10; ++j) CHECK(d(i, j) == oracle::dist(c, std::min(i, j), std::max(i, j)));
  }
}

TEST_CASE("triangle inequality on random triples") {
  std::mt19937_64 rng(5);
  auto c = oracle::random_cloud(rng, 60, 3, 1);
  auto d = DistanceOracle<double>::euclidean(support::to_cloud(c));
  std::uniform_int_distribution<int> pick(0, 59);
  for (int t = 0; t < 1000; ++t) {
    int a = pick(rng), b = pick(rng), e = pick(rng);
    CHECK(d(a, e) <= d(a, b) + d(b, e) + 1e-12);
  }
}

TEST_CASE("precomputed distances are validated") {
  Eigen::MatrixXd m(2, 2);
  m << 0, 1, 2, 0;
  CHECK_THROWS_AS(DistanceOracle<double>::precomputed(m), ValidationError);
  m << 0, 1, 1, 0;
  CHECK(DistanceOracle<double>::precomputed(m).distance(1, 0) == 1);
  m << 1, 1, 1, 0;
  CHECK_THROWS_AS(DistanceOracle<double>::precomputed(m), ValidationError);
}

TEST_CASE("load_cloud: minimal file, empty file, third label") {
  std::istringstream minimal("0,0,0\n1,0,1\n");
  auto c = load_cloud(minimal);
  CHECK(c.size() == 2);
  CHECK(c.dim() == 2);
  CHECK(c.labels() == std::vector<int>{0, 1});

  std::istringstream empty("");
  CHECK(load_cloud(empty).size() == 0);

  std::istringstream three("x,y,label\n0,0,0\n1,1,1\n2,2,1\n3,3,7\n");
  try {
    load_cloud(three);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
  }
}

TEST_CASE("load_cloud rejects ragged rows and junk") {
  std::istringstream ragged("0,0,0\n1,1\n");
  CHECK_THROWS_AS(load_cloud(ragged), ParseError);
  std::istringstream junk("0,0,0\n1,abc,1\n");
  CHECK_THROWS_AS(load_cloud(junk), ParseError);
  std::istringstream label("0,0,0.5\n");
  CHECK_THROWS_AS(load_cloud(label, CsvHeader::Absent), ParseError);
}

TEST_CASE("save then load round-trips exactly") {
  auto cloud = generate(SyntheticSpec::defaults(Shape::TwoCircles));
  std::stringstream ss;
  save_cloud(ss, cloud);
  auto back = load_cloud(ss);
  CHECK(back.points() == cloud.points());
  CHECK(back.labels() == cloud.labels());
}

TEST_CASE("format_value is shortest round-trip") {
  CHECK(format_value(0.1) == "0.1");
  CHECK(format_value(kInfinity) == "inf");
  double x = 1.0 / 3.0, y = 0;
  REQUIRE(parse_double(format_value(x), y));
  CHECK(x == y);
  CHECK_FALSE(parse_double("1.0x", y));
}

TEST_CASE("generators are deterministic and balanced") {
  for (Shape s : {Shape::TwoCircles, Shape::TwentyFiveCircles, Shape::NoisyCircle, Shape::Counterexample}) {
    auto spec = SyntheticSpec::defaults(s);
    std::stringstream a, b;
    save_cloud(a, generate(spec));
    save_cloud(b, generate(spec));
    CHECK(a.str() == b.str());
    auto cloud = generate(spec);
    CHECK(cloud.classes().size() == 2);
  }
  CHECK(SyntheticSpec::defaults(Shape::TwoCircles).ground_truth() == BettiPair{2, 2});
  CHECK(SyntheticSpec::defaults(Shape::TwentyFiveCircles).ground_truth() == BettiPair{25, 25});
  CHECK(SyntheticSpec::defaults(Shape::Counterexample).ground_truth() == BettiPair{1, 1});
}

TEST_CASE("25-circle boundaries fall into five radius groups") {
  auto spec = SyntheticSpec::defaults(Shape::TwentyFiveCircles);
  REQUIRE(spec.components.size() == 25);
  for (std::size_t i = 0; i < 25; ++i) {
    const auto& c = spec.components[i];
    double boundary = (c.disk_radius + c.annulus_inner) / 2;
    double group = static_cast<double>(i / 5 + 1);
    CHECK(std::abs(boundary / group - 1) <= 0.05 + 1e-12);
  }
}

TEST_CASE("spec JSON round-trips and validation names the field") {
  auto spec = SyntheticSpec::defaults(Shape::TwoCircles, 3);
  auto back = spec_from_json(spec_to_json(spec));
  std::stringstream a, b;
  save_cloud(a, generate(spec));
  save_cloud(b, generate(back));
  CHECK(a.str() == b.str());

  auto bad = spec;
  bad.components[1].disk_radius = -1;
  try {
    bad.validate();
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("components[1].disk_radius") != std::string::npos);
  }
}

TEST_CASE("portable rng reproduces a fixed sequence") {
  PortableRng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
  std::mt19937_64 reference(42);
  PortableRng c(42);
  CHECK(c.next() == reference());
}
