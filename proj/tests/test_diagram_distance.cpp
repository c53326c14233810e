#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "talktopo/diagram_distance.hpp"
#include "talktopo/error.hpp"

using namespace talktopo;

namespace {

PersistenceDiagram diagram(std::vector<std::pair<double, double>> pts, int dim = 1) {
  PersistenceDiagram d;
  for (auto [b, e] : pts) d.points.push_back({dim, b, e});
  d.sort();
  return d;
}

}  // namespace

TEST(Wasserstein, IdenticalDiagramsAreAtZero) {
  std::mt19937_64 gen(2);
  for (int i = 0; i < 20; ++i) {
    const auto d = oracle::random_diagram(gen, 1 + gen() % 10);
    EXPECT_EQ(wasserstein(d, d), 0.0);
    EXPECT_EQ(wasserstein(d, d, 2.0), 0.0);
  }
  EXPECT_EQ(wasserstein(diagram({}), diagram({})), 0.0);
}

TEST(Wasserstein, SinglePointAgainstEmpty) {
  EXPECT_DOUBLE_EQ(wasserstein(diagram({{1, 3}}), diagram({})), 1.0);
  EXPECT_DOUBLE_EQ(wasserstein_bruteforce(diagram({{1, 3}}), diagram({})), 1.0);
}

TEST(Wasserstein, DirectMatchBeatsDiagonal) {
  EXPECT_NEAR(wasserstein(diagram({{0, 1}}), diagram({{0.1, 1.1}})), 0.1, 1e-15);
  EXPECT_NEAR(wasserstein_bruteforce(diagram({{0, 1}}), diagram({{0.1, 1.1}})), 0.1, 1e-15);
}

TEST(Wasserstein, ExtraPointGoesToDiagonal) {
  EXPECT_DOUBLE_EQ(wasserstein_bruteforce(diagram({{0, 2}, {1, 4}}), diagram({{0, 2}})), 1.5);
  EXPECT_DOUBLE_EQ(wasserstein(diagram({{0, 2}, {1, 4}}), diagram({{0, 2}})), 1.5);
  EXPECT_EQ(wasserstein_bruteforce(diagram({{0, 2}}), diagram({{0, 2}})), 0.0);
}

TEST(Wasserstein, OuterRootForHigherOrders) {
  // Two points each 1 from the diagonal: (1^2 + 1^2)^(1/2).
  EXPECT_DOUBLE_EQ(wasserstein(diagram({{0, 2}, {5, 7}}), diagram({}), 2.0), std::sqrt(2.0));
}

TEST(Wasserstein, MatchesBruteforceThreeVersusThree) {
  std::mt19937_64 gen(3);
  for (int i = 0; i < 200; ++i) {
    const auto a = oracle::random_diagram(gen, 3);
    const auto b = oracle::random_diagram(gen, 3);
    for (double p : {1.0, 2.0, 3.5}) {
      EXPECT_NEAR(wasserstein(a, b, p), wasserstein_bruteforce(a, b, p), 1e-12);
    }
  }
}

TEST(Wasserstein, OnlyRequestedDimension) {
  PersistenceDiagram a = diagram({{0, 1}});
  a.points.push_back({0, 0.0, kInfinity});
  a.points.push_back({0, 0.0, 0.5});
  EXPECT_DOUBLE_EQ(wasserstein(a, diagram({}), 1.0, 1), 0.5);
  EXPECT_THROW(wasserstein(a, diagram({}), 1.0, 0), ArgumentError);
}

TEST(Wasserstein, RejectsBadOrder) {
  EXPECT_THROW(wasserstein(diagram({}), diagram({}), 0.5), ArgumentError);
  EXPECT_THROW(wasserstein(diagram({}), diagram({}), kInfinity), ArgumentError);
}

TEST(Wasserstein, BruteforceGuard) {
  std::mt19937_64 gen(4);
  EXPECT_THROW(wasserstein_bruteforce(oracle::random_diagram(gen, 5), oracle::random_diagram(gen, 4)),
               ArgumentError);
}

TEST(Wasserstein, MetricAxiomsOnRandomDiagrams) {
  std::mt19937_64 gen(5);
  for (int i = 0; i < 300; ++i) {
    const auto a = oracle::random_diagram(gen, gen() % 6);
    const auto b = oracle::random_diagram(gen, gen() % 6);
    const auto c = oracle::random_diagram(gen, gen() % 6);
    const double ab = wasserstein(a, b);
    EXPECT_EQ(ab, wasserstein(b, a));
    EXPECT_LE(wasserstein(a, c), ab + wasserstein(b, c) + 1e-9);
    if (a.points != b.points) EXPECT_GT(ab, 0.0);
  }
}

TEST(Wasserstein, AddingSmallPointMovesByHalfItsPersistence) {
  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> u(0, 1);
  for (int i = 0; i < 100; ++i) {
    const auto a = oracle::random_diagram(gen, 1 + gen() % 6);
    const auto b = oracle::random_diagram(gen, 1 + gen() % 6);
    auto a2 = a;
    const double eps = 0.1 * u(gen);
    const double birth = u(gen);
    a2.points.push_back({1, birth, birth + eps});
    a2.sort();
    EXPECT_LE(std::abs(wasserstein(a2, b) - wasserstein(a, b)), eps / 2 + 1e-12);
    EXPECT_NEAR(wasserstein(a2, a), eps / 2, 1e-12);
  }
}

TEST(OptimalMatching, CoversEveryPointOnce) {
  std::mt19937_64 gen(7);
  const auto a = oracle::random_diagram(gen, 5);
  const auto b = oracle::random_diagram(gen, 3);
  const auto m = optimal_matching(a, b, 1.0, 1);
  std::vector<int> seen_a(5, 0), seen_b(3, 0);
  double cost = 0.0;
  for (const auto& pair : m.pairs) {
    if (pair.source) seen_a[*pair.source]++;
    if (pair.target) seen_b[*pair.target]++;
    EXPECT_TRUE(pair.source || pair.target);
    double expected = 0.0;
    if (pair.source && pair.target) {
      expected = linf_distance(a.points[*pair.source], b.points[*pair.target]);
    } else if (pair.source) {
      expected = diagonal_distance(a.points[*pair.source]);
    } else {
      expected = diagonal_distance(b.points[*pair.target]);
    }
    EXPECT_DOUBLE_EQ(pair.ground_distance, expected);
    cost += pair.ground_distance;
  }
  for (int s : seen_a) EXPECT_EQ(s, 1);
  for (int s : seen_b) EXPECT_EQ(s, 1);
  EXPECT_NEAR(m.cost, cost, 1e-12);
  EXPECT_NEAR(m.cost, wasserstein(a, b), 1e-12);
}

TEST(SolveAssignment, SmallKnownOptimum) {
  const std::vector<double> cost{4, 1, 3,  //
                                 2, 0, 5,  //
                                 3, 2, 2};
  const auto assign = solve_assignment(cost, 3);
  double total = 0;
  for (std::size_t r = 0; r < 3; ++r) total += cost[r * 3 + assign[r]];
  EXPECT_EQ(total, 5.0);
}
