#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "talktopo/persistence.hpp"

namespace talktopo {

/// Optimal assignment for a square cost matrix (row-major, n*n), solved with
/// the O(n^3) shortest augmenting path Hungarian method. Returns the column
/// assigned to each row.
std::vector<std::size_t> solve_assignment(std::span<const double> cost, std::size_t n);

/// L-infinity distance between two diagram points (birth, death).
double linf_distance(const DiagramPoint& a, const DiagramPoint& b);
/// L-infinity distance from a point to its orthogonal projection on the diagonal.
double diagonal_distance(const DiagramPoint& a);

/// An optimal bijection between the diagonal-augmented diagrams. A missing
/// index means the point is matched to its diagonal projection.
struct DiagonalAugmentedMatching {
  struct Pair {
    std::optional<std::size_t> source;
    std::optional<std::size_t> target;
    double ground_distance = 0.0;
  };
  std::vector<Pair> pairs;
  double cost = 0.0;  ///< sum of ground_distance^p
};

/// Optimal matching between the finite points of dimension `dim`.
DiagonalAugmentedMatching optimal_matching(const PersistenceDiagram& a, const PersistenceDiagram& b,
                                           double p, int dim);

/// p-Wasserstein distance (sum of matched L-infinity distances to the p-th
/// power, then to the 1/p) between the dimension-`dim` parts of two diagrams.
///
/// Throws ArgumentError when p < 1 or p is not finite, and when either diagram
/// has an essential (infinite death) point in `dim`: filter those first.
double wasserstein(const PersistenceDiagram& a, const PersistenceDiagram& b, double p = 1.0,
                   int dim = 1);

inline constexpr std::size_t kWassersteinBruteforceMaxPoints = 8;

/// Exhaustive minimum over all partial matchings. At most 8 points in total.
double wasserstein_bruteforce(const PersistenceDiagram& a, const PersistenceDiagram& b,
                              double p = 1.0, int dim = 1);

}  // namespace talktopo
