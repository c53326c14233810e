#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <span>
#include <vector>

#include "talktopo/metric_space.hpp"

namespace talktopo {

using Index = std::int64_t;

/// Pascal's triangle up to (n, k), used to rank simplices in the combinatorial
/// number system.
class BinomialTable {
 public:
  BinomialTable() = default;
  BinomialTable(Index max_n, int max_k);

  [[nodiscard]] Index operator()(Index n, int k) const noexcept {
    return k > n ? 0 : table_[static_cast<std::size_t>(n) * stride_ + static_cast<std::size_t>(k)];
  }
  [[nodiscard]] Index max_n() const noexcept { return max_n_; }
  [[nodiscard]] int max_k() const noexcept { return static_cast<int>(stride_) - 1; }

 private:
  Index max_n_ = 0;
  std::size_t stride_ = 1;
  std::vector<Index> table_;
};

/// Colexicographic rank of a strictly increasing vertex tuple: sum of
/// C(v_m, m + 1). (0, 1) has rank 0 among edges.
Index simplex_index(std::span<const Index> vertices, const BinomialTable& binomials);
Index simplex_index(std::span<const Index> vertices);

/// Inverse of simplex_index for simplices of dimension `dim` on `n_points`
/// vertices. Throws ArgumentError when index is outside [0, C(n, dim + 1)).
std::vector<Index> index_to_simplex(Index index, int dim, Index n_points,
                                    const BinomialTable& binomials);
std::vector<Index> index_to_simplex(Index index, int dim, Index n_points);

/// Simplex as stored in a filtration: 16 bytes, vertex tuple recovered from
/// the colexicographic index on demand.
struct FiltrationEntry {
  double diameter;
  Index index;
  friend bool operator==(const FiltrationEntry&, const FiltrationEntry&) = default;
};

struct FiltrationSimplex {
  std::vector<Index> vertices;
  double diameter = 0.0;
  int dim = 0;
  friend bool operator==(const FiltrationSimplex&, const FiltrationSimplex&) = default;
};

/// Vietoris-Rips filtration truncated at `max_dim() == max_hom_dim + 1`.
///
/// Simplices are kept per dimension, each list sorted by (diameter,
/// lexicographic vertex tuple). Interleaving the lists by (diameter, dim)
/// yields the total order (diameter, dim, lexicographic vertices), in which
/// every face precedes its cofaces.
class Filtration {
 public:
  Filtration() = default;

  [[nodiscard]] Index n_points() const noexcept { return n_points_; }
  [[nodiscard]] int max_hom_dim() const noexcept { return max_hom_dim_; }
  [[nodiscard]] int max_dim() const noexcept { return max_hom_dim_ + 1; }
  [[nodiscard]] double threshold() const noexcept { return threshold_; }
  [[nodiscard]] const BinomialTable& binomials() const noexcept { return binomials_; }

  /// Sorted simplices of dimension `dim`; empty for dim > max_dim().
  [[nodiscard]] std::span<const FiltrationEntry> simplices(int dim) const;
  [[nodiscard]] std::size_t size() const noexcept;

  [[nodiscard]] std::vector<Index> vertices(int dim, Index index) const;
  [[nodiscard]] FiltrationSimplex simplex(int dim, std::size_t position) const;
  /// Position of the simplex with colexicographic `index` inside simplices(dim),
  /// or -1 when it is not in the filtration.
  [[nodiscard]] Index position_of(int dim, Index index) const;

  /// Positions (within simplices(dim - 1)) of the facets of simplices(dim)[position],
  /// sorted ascending.
  void facet_positions(int dim, std::size_t position, std::vector<Index>& out) const;

  /// Positions (within simplices(dim + 1)) of the cofacets of
  /// simplices(dim)[position] present in the filtration, sorted ascending.
  void cofacet_positions(int dim, std::size_t position, std::vector<Index>& out) const;

  /// All simplices in the global (diameter, dim, lexicographic) order.
  [[nodiscard]] std::vector<FiltrationSimplex> ordered() const;

 private:
  friend Filtration build_filtration(const DistanceMatrix&, int, std::optional<double>,
                                     std::size_t);
  Index n_points_ = 0;
  int max_hom_dim_ = 0;
  double threshold_ = 0.0;
  BinomialTable binomials_;
  // Colex index -> position. Dense when the simplex list covers a good part of
  // all subsets, otherwise a sorted (index, position) list.
  struct PositionLookup {
    std::vector<Index> dense;
    std::vector<std::pair<Index, Index>> sparse;
    bool is_dense = true;
    [[nodiscard]] Index find(Index index) const;
  };

  std::vector<std::vector<FiltrationEntry>> by_dim_;
  std::vector<PositionLookup> position_;
};

inline constexpr std::size_t kDefaultMaxSimplices = 150'000'000;  // ~2.4 GB of entries

/// Enumerates every simplex of dimension <= max_hom_dim + 1 whose diameter is at
/// most `threshold` (default: the largest entry of `dm`).
///
/// Throws ArgumentError when max_hom_dim < 0, max_hom_dim + 1 > n or the
/// threshold is not positive, and ResourceError when more than
/// `max_simplices` simplices would be stored.
Filtration build_filtration(const DistanceMatrix& dm, int max_hom_dim = 1,
                            std::optional<double> threshold = std::nullopt,
                            std::size_t max_simplices = kDefaultMaxSimplices);

/// Debug dump: `dim,v0,...,vk,diameter` rows in filtration order.
void write_filtration_csv(const Filtration& filtration, std::ostream& out);

}  // namespace talktopo
