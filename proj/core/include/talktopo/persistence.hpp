#pragma once

#include <compare>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "talktopo/metric_space.hpp"
#include "talktopo/rips_filtration.hpp"

namespace talktopo {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

struct DiagramPoint {
  int dim = 0;
  double birth = 0.0;
  double death = kInfinity;

  [[nodiscard]] bool essential() const noexcept { return death == kInfinity; }
  [[nodiscard]] double persistence() const noexcept { return death - birth; }
  friend auto operator<=>(const DiagramPoint&, const DiagramPoint&) = default;
};

struct DiagramMeta {
  std::string source_id;
  std::string metric;
  double threshold = 0.0;
};

/// Multiset of (dim, birth, death) intervals, kept sorted by (dim, birth, death).
struct PersistenceDiagram {
  std::vector<DiagramPoint> points;
  DiagramMeta meta;

  void sort();
  [[nodiscard]] std::vector<DiagramPoint> in_dimension(int dim) const;
  /// Points of `dim` with finite death.
  [[nodiscard]] std::vector<DiagramPoint> finite(int dim) const;
  /// Number of intervals of `dim` with birth <= t < death.
  [[nodiscard]] std::size_t betti(int dim, double t) const;
};

/// A persistence pair in terms of simplices. `death` is empty for essential
/// classes.
struct SimplexPair {
  int dim = 0;
  std::vector<Index> birth;
  std::vector<Index> death;
  double birth_value = 0.0;
  double death_value = kInfinity;
  friend auto operator<=>(const SimplexPair&, const SimplexPair&) = default;
};

/// Boundary matrix reduction over Z/2 for the columns of dimensions 1..max_dim.
///
/// Rows and columns are positions inside Filtration::simplices(dim). Only
/// nonzero reduced columns are stored.
struct ReductionState {
  struct Column {
    Index position;            ///< column simplex, inside simplices(dim)
    std::vector<Index> rows;   ///< sorted ascending; back() is the pivot
  };
  /// columns[k]: nonzero reduced boundary columns of k-simplices.
  std::vector<std::vector<Column>> columns;
  /// pivot[k][row]: index into columns[k] of the column whose pivot is `row`
  /// (a (k-1)-simplex), or -1.
  std::vector<std::vector<Index>> pivot;
  /// negative[k][pos]: whether simplices(k)[pos] has a nonzero reduced column.
  std::vector<std::vector<char>> negative;
  /// Columns skipped because their simplex was already paired as a pivot row.
  std::size_t cleared = 0;
};

/// Reduces dimensions from the top down. Columns of simplices already paired as
/// the pivot of a higher-dimensional column are zero after reduction and are
/// skipped (clearing). Produces the same pairing as the left-to-right standard
/// algorithm.
ReductionState reduce_with_clearing(const Filtration& filtration);

/// Pairs read off a reduction state for dimensions 0..max_hom_dim.
std::vector<SimplexPair> extract_pairs(const ReductionState& state, const Filtration& filtration);

/// Reduction of the anti-transposed boundary matrix (the coboundary matrix)
/// for the columns of dimensions 0..max_hom_dim.
///
/// Dimensions are processed bottom up and, within a dimension, columns in
/// reverse filtration order; a column's pivot is its earliest cofacet. A
/// k-simplex that was the pivot of a (k-1)-column is skipped (clearing). The
/// pairing equals the one of the boundary matrix reduction, but positive
/// triangles never need to be reduced, which is what makes large clouds cheap.
struct CoboundaryReductionState {
  using Column = ReductionState::Column;  ///< rows sorted ascending; front() is the pivot
  /// columns[k]: nonzero reduced coboundary columns of k-simplices.
  std::vector<std::vector<Column>> columns;
  /// pivot[k][row]: index into columns[k] of the column whose pivot is `row`
  /// (a (k+1)-simplex), or -1.
  std::vector<std::vector<Index>> pivot;
  std::size_t cleared = 0;
};

CoboundaryReductionState reduce_coboundary_with_clearing(const Filtration& filtration);

std::vector<SimplexPair> extract_pairs(const CoboundaryReductionState& state,
                                       const Filtration& filtration);

/// Textbook left-to-right reduction of the full boundary matrix in the global
/// filtration order, without clearing. Quadratic memory in the number of
/// simplices; meant for cross-checking on small inputs.
std::vector<SimplexPair> standard_pairs(const Filtration& filtration);

enum class ReductionAlgorithm {
  coboundary,  ///< reduce_coboundary_with_clearing
  boundary,    ///< reduce_with_clearing
};

struct PersistenceOptions {
  /// Keep intervals with birth == death (dropped by default).
  bool keep_zero_persistence = false;
  /// Both algorithms give identical diagrams; the boundary reduction is much
  /// slower on clouds with more than a few hundred points.
  ReductionAlgorithm algorithm = ReductionAlgorithm::coboundary;
};

/// Persistence diagram for dimensions 0..max_hom_dim of the filtration.
PersistenceDiagram compute_persistence(const Filtration& filtration,
                                       const PersistenceOptions& options = {});

/// Dimension-0 diagram from Kruskal-style union-find over the edges in
/// filtration order. Needs the edges to be in the filtration (max_dim >= 1);
/// a one-point filtration yields the single essential class.
PersistenceDiagram compute_h0_unionfind(const Filtration& filtration,
                                        const PersistenceOptions& options = {});

inline constexpr std::size_t kBettiBruteforceMaxPoints = 12;

/// Betti number of the Rips complex {simplices of diameter <= t} computed by
/// dense rank-nullity over Z/2. Independent of the filtration code; throws
/// ArgumentError when dm has more than 12 points.
std::size_t betti_bruteforce(const DistanceMatrix& dm, double t, int dim);

}  // namespace talktopo
