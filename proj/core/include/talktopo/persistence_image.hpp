#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "talktopo/persistence.hpp"

namespace talktopo {

enum class WeightKind { linear_persistence, constant };

std::string_view to_string(WeightKind kind);
WeightKind parse_weight_kind(std::string_view name);

struct PivConfig {
  std::size_t pixels_per_axis = 30;
  double variance = 0.01;  ///< sigma^2 of the isotropic Gaussian
  std::pair<double, double> birth_range{0.0, 1.0};
  std::pair<double, double> persistence_range{0.0, 1.0};
  WeightKind weight = WeightKind::linear_persistence;
  /// Persistence at which the linear weight saturates at 1. When unset the
  /// largest persistence of the rasterized diagram is used.
  std::optional<double> weight_ceiling;

  /// Throws ArgumentError unless pixels >= 1, variance > 0 and both ranges are
  /// non-empty.
  void validate() const;
};

/// A point of the birth-persistence plane.
struct BirthPersistence {
  double birth = 0.0;
  double persistence = 0.0;
  friend bool operator==(const BirthPersistence&, const BirthPersistence&) = default;
};

/// (b, d) -> (b, d - b) for the points of dimension `dim`. Throws
/// ArgumentError on an infinite death.
std::vector<BirthPersistence> birth_persistence_transform(const PersistenceDiagram& diagram,
                                                          int dim);

/// Weight of a transformed point under cfg, with `ceiling` the resolved
/// saturation persistence.
double point_weight(const BirthPersistence& u, const PivConfig& cfg, double ceiling);

/// Weight ceiling used for `points`: cfg.weight_ceiling, else the largest
/// persistence, else 1 for an empty or all-zero diagram.
double resolve_weight_ceiling(const std::vector<BirthPersistence>& points, const PivConfig& cfg);

/// Persistence surface: sum over points of weight * N(u, variance * I) density
/// at (x, y).
double surface_value(const std::vector<BirthPersistence>& points, double x, double y,
                     const PivConfig& cfg);

struct PersistenceImage {
  /// pixels_per_axis^2 values; row r covers the r-th persistence band from the
  /// bottom, column c the c-th birth band from the left.
  std::vector<double> values;
  PivConfig config;

  [[nodiscard]] std::size_t resolution() const noexcept { return config.pixels_per_axis; }
  [[nodiscard]] double at(std::size_t row, std::size_t col) const {
    return values[row * config.pixels_per_axis + col];
  }
};

/// Pixel edges along one axis: pixels_per_axis + 1 values from lo to hi.
std::vector<double> pixel_edges(std::pair<double, double> range, std::size_t pixels);

/// Integrates the persistence surface of the dimension-`dim` points exactly over
/// every pixel (product of one-dimensional Gaussian CDF differences).
PersistenceImage rasterize(const PersistenceDiagram& diagram, int dim, const PivConfig& cfg);

/// Upper bound L with ||PIV(D) - PIV(D')||_inf <= L * W1(D, D') for Gaussian
/// images: sqrt(5) |grad f| + sqrt(10 / pi) ||f||_inf / sigma.
double stability_constant(const PivConfig& cfg, double ceiling);

}  // namespace talktopo
