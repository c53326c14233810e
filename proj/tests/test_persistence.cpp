#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "talktopo/diagram_io.hpp"
#include "talktopo/error.hpp"
#include "talktopo/persistence.hpp"

using namespace talktopo;

namespace {

DistanceMatrix circle_distances(int n) {
  std::vector<std::vector<double>> rows;
  for (int i = 0; i < n; ++i) {
    const double a = 2.0 * std::numbers::pi * i / n;
    rows.push_back({std::cos(a), std::sin(a)});
  }
  return pairwise_distances(PointCloud::from_rows("circle", rows), Metric::angular);
}

DistanceMatrix square_distances(double side) {
  const double diag = side * std::sqrt(2.0);
  return DistanceMatrix(4, {0, side, diag, side,  //
                            side, 0, side, diag,  //
                            diag, side, 0, side,  //
                            side, diag, side, 0});
}

std::vector<DiagramPoint> sorted_points(PersistenceDiagram d) {
  d.sort();
  return d.points;
}

}  // namespace

TEST(ComputePersistence, TwoPoints) {
  const auto f = build_filtration(DistanceMatrix(2, {0, 0.4, 0.4, 0}), 0);
  const auto d = compute_persistence(f);
  ASSERT_EQ(d.points.size(), 2u);
  EXPECT_EQ(d.points[0], (DiagramPoint{0, 0.0, 0.4}));
  EXPECT_EQ(d.points[1], (DiagramPoint{0, 0.0, kInfinity}));
}

TEST(ComputePersistence, HexagonHasSingleLoop) {
  const auto dm = circle_distances(6);
  const auto d = compute_persistence(build_filtration(dm, 1));
  const auto h1 = d.in_dimension(1);
  ASSERT_EQ(h1.size(), 1u);
  EXPECT_NEAR(h1[0].birth, 1.0 / 3.0, 1e-9);
  EXPECT_NEAR(h1[0].death, 2.0 / 3.0, 1e-9);
  // Betti-curve oracle over all interesting scales.
  for (double t : {0.0, 0.2, 1.0 / 3.0, 0.5, 2.0 / 3.0 - 1e-9, 2.0 / 3.0, 0.9, 1.0}) {
    EXPECT_EQ(d.betti(1, t), betti_bruteforce(dm, t, 1)) << t;
    EXPECT_EQ(d.betti(0, t), betti_bruteforce(dm, t, 0)) << t;
  }
}

TEST(ComputePersistence, H0DeathsAreMstWeights) {
  std::mt19937_64 gen(17);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + gen() % 40;
    const auto dm = pairwise_distances(oracle::random_cloud(gen, n, 5), Metric::angular);
    const auto d = compute_persistence(build_filtration(dm, 1));
    EXPECT_EQ(oracle::h0_deaths(d), oracle::mst_weights(dm));
    std::size_t essential = 0;
    for (const auto& p : d.points) {
      if (p.dim == 0 && p.essential()) ++essential;
      if (p.dim == 1) EXPECT_FALSE(p.essential());
      EXPECT_LE(p.birth, p.death);
    }
    EXPECT_EQ(essential, 1u);
  }
}

TEST(UnionFindH0, SinglePoint) {
  const auto d = compute_h0_unionfind(build_filtration(DistanceMatrix(1, {0.0}), 0));
  ASSERT_EQ(d.points.size(), 1u);
  EXPECT_TRUE(d.points[0].essential());
}

TEST(UnionFindH0, PathOfThree) {
  const DistanceMatrix dm(3, {0, 0.1, 0.3, 0.1, 0, 0.2, 0.3, 0.2, 0});
  const auto d = compute_h0_unionfind(build_filtration(dm, 0));
  EXPECT_EQ(sorted_points(d),
            (std::vector<DiagramPoint>{{0, 0, 0.1}, {0, 0, 0.2}, {0, 0, kInfinity}}));
}

TEST(UnionFindH0, AgreesWithReductionOnFiftyPoints) {
  std::mt19937_64 gen(23);
  for (int trial = 0; trial < 10; ++trial) {
    const auto dm = pairwise_distances(oracle::random_cloud(gen, 50, 6), Metric::euclidean);
    const auto f = build_filtration(dm, 1);
    EXPECT_EQ(sorted_points(compute_h0_unionfind(f)), compute_persistence(f).in_dimension(0));
  }
}

TEST(BettiBruteforce, Examples) {
  const DistanceMatrix tri(3, {0, 1, 1, 1, 0, 1, 1, 1, 0});
  EXPECT_EQ(betti_bruteforce(tri, 1.0, 1), 0u);
  EXPECT_EQ(betti_bruteforce(tri, 0.5, 0), 3u);
  const auto sq = square_distances(1.0);
  EXPECT_EQ(betti_bruteforce(sq, 1.0, 1), 1u);
  EXPECT_EQ(betti_bruteforce(sq, 1.3, 1), 1u);
  EXPECT_EQ(betti_bruteforce(sq, 1.5, 1), 0u);
  EXPECT_EQ(betti_bruteforce(sq, 0.9, 0), 4u);
  std::vector<double> big(13 * 13, 1.0);
  for (int i = 0; i < 13; ++i) big[static_cast<std::size_t>(i * 13 + i)] = 0.0;
  EXPECT_THROW(betti_bruteforce(DistanceMatrix(13, big), 0.5, 0), ArgumentError);
}

TEST(ComputePersistence, SquareLoopMatchesBetti) {
  const auto sq = square_distances(1.0);
  const auto d = compute_persistence(build_filtration(sq, 1));
  const auto h1 = d.in_dimension(1);
  ASSERT_EQ(h1.size(), 1u);
  EXPECT_EQ(h1[0].birth, 1.0);
  EXPECT_DOUBLE_EQ(h1[0].death, std::sqrt(2.0));
}

TEST(ComputePersistence, BettiConsistencyIncludingDimensionTwo) {
  std::mt19937_64 gen(31);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 4 + gen() % 6;
    const auto dm = pairwise_distances(oracle::random_cloud(gen, n, 3), Metric::euclidean);
    const auto d = compute_persistence(build_filtration(dm, 2));
    std::vector<double> ts{0.0, dm.max_entry()};
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) ts.push_back(dm(i, j));
    }
    for (double t : ts) {
      for (int k = 0; k <= 2; ++k) EXPECT_EQ(d.betti(k, t), betti_bruteforce(dm, t, k));
    }
  }
}

TEST(Reduction, ClearingAndCohomologyMatchStandardPairing) {
  std::mt19937_64 gen(41);
  for (std::size_t n : {5u, 8u, 10u, 10u, 14u}) {
    for (int rep = 0; rep < 4; ++rep) {
      const auto dm = pairwise_distances(oracle::random_cloud(gen, n, 4), Metric::angular);
      const auto f = build_filtration(dm, n >= 8 ? 2 : 1);
      auto standard = standard_pairs(f);
      auto boundary = extract_pairs(reduce_with_clearing(f), f);
      auto coboundary = extract_pairs(reduce_coboundary_with_clearing(f), f);
      std::sort(standard.begin(), standard.end());
      std::sort(boundary.begin(), boundary.end());
      std::sort(coboundary.begin(), coboundary.end());
      EXPECT_EQ(boundary, standard);
      EXPECT_EQ(coboundary, standard);
    }
  }
}

TEST(Reduction, PivotsAreDistinct) {
  std::mt19937_64 gen(43);
  const auto dm = pairwise_distances(oracle::random_cloud(gen, 25, 5), Metric::angular);
  const auto f = build_filtration(dm, 1);
  const auto state = reduce_with_clearing(f);
  for (std::size_t k = 1; k < state.columns.size(); ++k) {
    std::set<Index> pivots;
    for (const auto& col : state.columns[k]) {
      ASSERT_FALSE(col.rows.empty());
      EXPECT_TRUE(std::is_sorted(col.rows.begin(), col.rows.end()));
      EXPECT_TRUE(pivots.insert(col.rows.back()).second);
    }
  }
  EXPECT_GT(state.cleared, 0u);
  const auto co = reduce_coboundary_with_clearing(f);
  for (const auto& dim_cols : co.columns) {
    std::set<Index> pivots;
    for (const auto& col : dim_cols) {
      if (col.rows.empty()) continue;
      EXPECT_TRUE(pivots.insert(col.rows.front()).second);
    }
  }
}

TEST(Reduction, VerticesOnlyGivesEssentialClasses) {
  const DistanceMatrix dm(3, {0, 1, 1, 1, 0, 1, 1, 1, 0});
  const auto f = build_filtration(dm, 0, 0.5);
  EXPECT_TRUE(reduce_with_clearing(f).columns[1].empty());
  const auto d = compute_persistence(f);
  ASSERT_EQ(d.points.size(), 3u);
  for (const auto& p : d.points) EXPECT_TRUE(p.essential());
  EXPECT_TRUE(extract_pairs(reduce_with_clearing(Filtration()), Filtration()).empty());
}

TEST(ComputePersistence, AlgorithmsAgreeOnDiagram) {
  std::mt19937_64 gen(47);
  const auto dm = pairwise_distances(oracle::random_cloud(gen, 40, 8), Metric::angular);
  const auto f = build_filtration(dm, 1);
  PersistenceOptions boundary;
  boundary.algorithm = ReductionAlgorithm::boundary;
  EXPECT_EQ(compute_persistence(f).points, compute_persistence(f, boundary).points);
}

TEST(ComputePersistence, ZeroPersistenceOnlyWithFlag) {
  // Duplicate point: an H0 pair dying at 0.
  const auto dm = pairwise_distances(PointCloud::from_rows("dup", {{1, 0}, {1, 0}, {0, 1}}), Metric::angular);
  const auto f = build_filtration(dm, 1);
  const auto dropped = compute_persistence(f);
  PersistenceOptions keep;
  keep.keep_zero_persistence = true;
  const auto kept = compute_persistence(f, keep);
  EXPECT_EQ(dropped.in_dimension(0).size(), 2u);
  EXPECT_GT(kept.points.size(), dropped.points.size());
  EXPECT_EQ(kept.in_dimension(0).front(), (DiagramPoint{0, 0.0, 0.0}));
}

TEST(ComputePersistence, InvariantUnderRelabelling) {
  std::mt19937_64 gen(53);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 20;
    const auto dm = pairwise_distances(oracle::random_cloud(gen, n, 4), Metric::angular);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    EXPECT_EQ(compute_persistence(build_filtration(dm, 1)).points,
              compute_persistence(build_filtration(dm.permuted(perm), 1)).points);
  }
}

TEST(ComputePersistence, ScalesWithDistances) {
  std::mt19937_64 gen(59);
  const auto dm = pairwise_distances(oracle::random_cloud(gen, 25, 4), Metric::euclidean);
  const auto base = compute_persistence(build_filtration(dm, 1));
  for (double c : {0.5, 2.0, 4.0}) {
    const auto scaled = compute_persistence(build_filtration(dm.scaled(c), 1));
    ASSERT_EQ(scaled.points.size(), base.points.size());
    for (std::size_t i = 0; i < base.points.size(); ++i) {
      EXPECT_EQ(scaled.points[i].birth, base.points[i].birth * c);
      EXPECT_EQ(scaled.points[i].death, base.points[i].death * c);
    }
  }
}

TEST(DiagramCsv, RoundTripSortedWithInf) {
  PersistenceDiagram d;
  d.points = {{1, 0.3, 0.5}, {0, 0.0, kInfinity}, {0, 0.0, 0.125}};
  std::ostringstream out;
  write_diagram_csv(out, d);
  EXPECT_EQ(out.str(), "dim,birth,death\n0,0,0.125\n0,0,inf\n1,0.3,0.5\n");
  std::istringstream in(out.str());
  const auto back = read_diagram_csv(in, "memory");
  EXPECT_EQ(back.points, sorted_points(d));
  std::istringstream bad("dim,birth\n0,1\n");
  EXPECT_THROW(read_diagram_csv(bad, "bad"), DataError);
}
