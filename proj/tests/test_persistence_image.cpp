#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "json.hpp"
#include "oracles.hpp"
#include "talktopo/csv.hpp"
#include "talktopo/diagram_distance.hpp"
#include "talktopo/diagram_io.hpp"
#include "talktopo/error.hpp"
#include "talktopo/persistence_image.hpp"

using namespace talktopo;

namespace {

PersistenceDiagram diagram(std::vector<std::pair<double, double>> pts, int dim = 1) {
  PersistenceDiagram d;
  for (auto [b, e] : pts) d.points.push_back({dim, b, e});
  d.sort();
  return d;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST(BirthPersistence, Transform) {
  EXPECT_EQ(birth_persistence_transform(diagram({{0.5, 1.0}}), 1),
            (std::vector<BirthPersistence>{{0.5, 0.5}}));
  EXPECT_TRUE(birth_persistence_transform(diagram({}), 1).empty());
  const auto hex = birth_persistence_transform(diagram({{1.0 / 3.0, 2.0 / 3.0}}), 1);
  ASSERT_EQ(hex.size(), 1u);
  EXPECT_NEAR(hex[0].birth, 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(hex[0].persistence, 1.0 / 3.0, 1e-15);
  EXPECT_THROW(birth_persistence_transform(diagram({{0.0, kInfinity}}), 1), ArgumentError);
  // Other dimensions are ignored, including their essential classes.
  EXPECT_TRUE(birth_persistence_transform(diagram({{0.0, kInfinity}}, 0), 1).empty());
}

TEST(SurfaceValue, GaussianPeakAndLinearity) {
  PivConfig cfg;
  cfg.weight = WeightKind::constant;
  EXPECT_EQ(surface_value({}, 0.3, 0.3, cfg), 0.0);
  const std::vector<BirthPersistence> one{{0.4, 0.2}};
  EXPECT_NEAR(surface_value(one, 0.4, 0.2, cfg), 1.0 / (2.0 * std::numbers::pi * 0.01), 1e-12);
  EXPECT_NEAR(surface_value(one, 0.4, 0.2, cfg), 15.9155, 1e-4);
  const std::vector<BirthPersistence> two{{0.4, 0.2}, {0.4, 0.2}};
  for (double x : {0.0, 0.3, 0.41, 0.9}) {
    for (double y : {0.0, 0.19, 0.5}) {
      EXPECT_EQ(surface_value(two, x, y, cfg), 2.0 * surface_value(one, x, y, cfg));
    }
  }
}

TEST(Rasterize, EmptyDiagramIsZeroVector) {
  const auto img = rasterize(diagram({}), 1, PivConfig{});
  ASSERT_EQ(img.values.size(), 900u);
  for (double v : img.values) EXPECT_EQ(v, 0.0);
}

TEST(Rasterize, CentredPointHoldsMaximumAndMassAtMostOne) {
  PivConfig cfg;
  cfg.weight = WeightKind::constant;
  // Pixel (row 12, col 17) has centre (17.5 / 30, 12.5 / 30).
  const double b = 17.5 / 30.0, p = 12.5 / 30.0;
  const auto img = rasterize(diagram({{b, b + p}}), 1, cfg);
  const auto it = std::max_element(img.values.begin(), img.values.end());
  EXPECT_EQ(static_cast<std::size_t>(it - img.values.begin()), 12u * 30u + 17u);
  double mass = 0.0;
  for (double v : img.values) {
    EXPECT_GE(v, 0.0);
    mass += v;
  }
  EXPECT_LE(mass, 1.0);
  EXPECT_GT(mass, 0.99);
}

TEST(Rasterize, MatchesMidpointQuadrature) {
  PivConfig cfg;
  cfg.weight_ceiling = 1.0;
  const auto d = diagram({{0.5, 1.0}});
  const auto img = rasterize(d, 1, cfg);
  const auto quad = oracle::piv_midpoint(d, 1, cfg, 1.0, 20);
  EXPECT_LT(max_abs_diff(img.values, quad), 1e-6);
}

TEST(Rasterize, ZeroPersistenceContributesNothing) {
  PivConfig cfg;
  cfg.weight_ceiling = 0.5;
  const auto img = rasterize(diagram({{0.3, 0.3}, {0.6, 0.6}}), 1, cfg);
  for (double v : img.values) EXPECT_EQ(v, 0.0);
}

TEST(Rasterize, AdditiveWithFixedCeiling) {
  std::mt19937_64 gen(12);
  PivConfig cfg;
  cfg.weight_ceiling = 0.8;
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = oracle::random_diagram(gen, 1 + gen() % 5, 1, 0.8);
    const auto b = oracle::random_diagram(gen, 1 + gen() % 5, 1, 0.8);
    auto ab = a;
    ab.points.insert(ab.points.end(), b.points.begin(), b.points.end());
    ab.sort();
    const auto ia = rasterize(a, 1, cfg), ib = rasterize(b, 1, cfg), iab = rasterize(ab, 1, cfg);
    for (std::size_t i = 0; i < iab.values.size(); ++i) {
      EXPECT_NEAR(iab.values[i], ia.values[i] + ib.values[i], 1e-12);
    }
  }
}

TEST(Rasterize, FixedLengthForAnyDiagramSize) {
  std::mt19937_64 gen(13);
  PivConfig cfg;
  cfg.pixels_per_axis = 7;
  for (std::size_t n : {0u, 1u, 50u, 500u}) {
    EXPECT_EQ(rasterize(oracle::random_diagram(gen, n), 1, cfg).values.size(), 49u);
  }
}

TEST(Rasterize, AutoCeilingIsRecorded) {
  const auto img = rasterize(diagram({{0.1, 0.3}, {0.2, 0.6}}), 1, PivConfig{});
  ASSERT_TRUE(img.config.weight_ceiling.has_value());
  EXPECT_DOUBLE_EQ(*img.config.weight_ceiling, 0.4);
}

TEST(PivConfig, Validation) {
  PivConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.pixels_per_axis = 0;
  EXPECT_THROW(cfg.validate(), ArgumentError);
  cfg = PivConfig{};
  cfg.variance = 0.0;
  EXPECT_THROW(cfg.validate(), ArgumentError);
  cfg = PivConfig{};
  cfg.birth_range = {1.0, 1.0};
  EXPECT_THROW(cfg.validate(), ArgumentError);
}

TEST(PivStability, RatioBelowLipschitzBound) {
  std::mt19937_64 gen(14);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  PivConfig cfg;
  const double ceiling = 1.0;
  cfg.weight_ceiling = ceiling;
  const double lip = stability_constant(cfg, ceiling);
  for (int trial = 0; trial < 40; ++trial) {
    const auto d = oracle::random_diagram(gen, 1 + gen() % 6, 1, 0.6);
    auto moved = d;
    for (auto& p : moved.points) {
      p.birth += 0.01 * u(gen);
      p.death = std::max(p.birth, p.death + 0.01 * u(gen));
    }
    const double w1 = wasserstein(d, moved);
    if (w1 == 0.0) continue;
    const double diff = max_abs_diff(rasterize(d, 1, cfg).values, rasterize(moved, 1, cfg).values);
    EXPECT_LE(diff / w1, lip);
  }
  PivConfig constant;
  constant.weight = WeightKind::constant;
  EXPECT_THROW(stability_constant(constant, 1.0), ArgumentError);
}

TEST(PivFiles, CsvAndSidecarRoundTrip) {
  const auto dir = std::filesystem::temp_directory_path() / "talktopo_piv_test";
  std::filesystem::remove_all(dir);
  PivConfig cfg;
  cfg.pixels_per_axis = 4;
  const auto img = rasterize(diagram({{0.2, 0.5}}), 1, cfg);
  save_persistence_image(dir / "one.csv", img);
  EXPECT_EQ(read_piv_csv(dir / "one.csv"), img.values);
  const auto back = piv_config_from_json(read_text_file(dir / "one.json"));
  EXPECT_EQ(back.pixels_per_axis, 4u);
  EXPECT_EQ(back.variance, 0.01);
  EXPECT_EQ(back.weight, WeightKind::linear_persistence);
  ASSERT_TRUE(back.weight_ceiling.has_value());
  EXPECT_EQ(*back.weight_ceiling, *img.config.weight_ceiling);
  EXPECT_FALSE(piv_config_from_json(piv_config_to_json(PivConfig{})).weight_ceiling.has_value());
  std::filesystem::remove_all(dir);
}
