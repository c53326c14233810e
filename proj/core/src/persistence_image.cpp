#include "talktopo/persistence_image.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "talktopo/error.hpp"

namespace talktopo {

std::string_view to_string(WeightKind kind) {
  return kind == WeightKind::linear_persistence ? "linear_persistence" : "constant";
}

WeightKind parse_weight_kind(std::string_view name) {
  if (name == "linear_persistence" || name == "linear") return WeightKind::linear_persistence;
  if (name == "constant") return WeightKind::constant;
  throw ArgumentError("unknown weight '" + std::string(name) +
                      "' (expected linear_persistence or constant)");
}

void PivConfig::validate() const {
  if (pixels_per_axis < 1) throw ArgumentError("pixels_per_axis must be >= 1");
  if (!(variance > 0.0) || !std::isfinite(variance)) throw ArgumentError("variance must be > 0");
  if (!(birth_range.first < birth_range.second)) throw ArgumentError("birth range is empty");
  if (!(persistence_range.first < persistence_range.second)) {
    throw ArgumentError("persistence range is empty");
  }
  if (weight_ceiling && !(*weight_ceiling > 0.0)) {
    throw ArgumentError("weight ceiling must be positive");
  }
}

std::vector<BirthPersistence> birth_persistence_transform(const PersistenceDiagram& diagram,
                                                          int dim) {
  std::vector<BirthPersistence> out;
  for (const auto& p : diagram.points) {
    if (p.dim != dim) continue;
    if (p.essential()) {
      throw ArgumentError("persistence images need finite deaths; drop essential classes first");
    }
    out.push_back({p.birth, p.death - p.birth});
  }
  return out;
}

double resolve_weight_ceiling(const std::vector<BirthPersistence>& points, const PivConfig& cfg) {
  if (cfg.weight_ceiling) return *cfg.weight_ceiling;
  double ceiling = 0.0;
  for (const auto& u : points) ceiling = std::max(ceiling, u.persistence);
  return ceiling > 0.0 ? ceiling : 1.0;
}

double point_weight(const BirthPersistence& u, const PivConfig& cfg, double ceiling) {
  if (cfg.weight == WeightKind::constant) return 1.0;
  return std::clamp(u.persistence / ceiling, 0.0, 1.0);
}

double surface_value(const std::vector<BirthPersistence>& points, double x, double y,
                     const PivConfig& cfg) {
  const double ceiling = resolve_weight_ceiling(points, cfg);
  const double norm = 1.0 / (2.0 * std::numbers::pi * cfg.variance);
  double total = 0.0;
  for (const auto& u : points) {
    const double dx = x - u.birth;
    const double dy = y - u.persistence;
    total += point_weight(u, cfg, ceiling) * norm * std::exp(-(dx * dx + dy * dy) / (2.0 * cfg.variance));
  }
  return total;
}

std::vector<double> pixel_edges(std::pair<double, double> range, std::size_t pixels) {
  std::vector<double> edges(pixels + 1);
  const double width = (range.second - range.first) / static_cast<double>(pixels);
  for (std::size_t i = 0; i <= pixels; ++i) edges[i] = range.first + width * static_cast<double>(i);
  edges[pixels] = range.second;
  return edges;
}

namespace {

// Mass of N(mean, sigma^2) in each interval [edges[i], edges[i+1]].
void interval_masses(double mean, double sigma, const std::vector<double>& edges,
                     std::vector<double>& out) {
  const double scale = 1.0 / (sigma * std::numbers::sqrt2);
  out.resize(edges.size() - 1);
  double prev = 0.5 * std::erfc(-(edges[0] - mean) * scale);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double next = 0.5 * std::erfc(-(edges[i + 1] - mean) * scale);
    out[i] = next - prev;
    prev = next;
  }
}

}  // namespace

PersistenceImage rasterize(const PersistenceDiagram& diagram, int dim, const PivConfig& cfg) {
  cfg.validate();
  const auto points = birth_persistence_transform(diagram, dim);
  const std::size_t res = cfg.pixels_per_axis;
  PersistenceImage image{std::vector<double>(res * res, 0.0), cfg};
  const double ceiling = resolve_weight_ceiling(points, cfg);
  if (!cfg.weight_ceiling) image.config.weight_ceiling = ceiling;

  const double sigma = std::sqrt(cfg.variance);
  const auto birth_edges = pixel_edges(cfg.birth_range, res);
  const auto pers_edges = pixel_edges(cfg.persistence_range, res);
  std::vector<double> bx, py;
  // Points are accumulated in diagram order, so the sum is reproducible.
  for (const auto& u : points) {
    const double w = point_weight(u, cfg, ceiling);
    if (w == 0.0) continue;
    interval_masses(u.birth, sigma, birth_edges, bx);
    interval_masses(u.persistence, sigma, pers_edges, py);
    for (std::size_t r = 0; r < res; ++r) {
      const double wr = w * py[r];
      double* row = &image.values[r * res];
      for (std::size_t c = 0; c < res; ++c) row[c] += wr * bx[c];
    }
  }
  return image;
}

double stability_constant(const PivConfig& cfg, double ceiling) {
  // The bound needs a weight that vanishes on the diagonal.
  if (cfg.weight != WeightKind::linear_persistence) {
    throw ArgumentError("stability bound requires the linear_persistence weight");
  }
  if (!(ceiling > 0.0)) throw ArgumentError("weight ceiling must be positive");
  const double sigma = std::sqrt(cfg.variance);
  const double gradient_norm = 1.0 / ceiling;
  const double sup_norm = 1.0;
  return std::sqrt(5.0) * gradient_norm + std::sqrt(10.0 / std::numbers::pi) * sup_norm / sigma;
}

}  // namespace talktopo
