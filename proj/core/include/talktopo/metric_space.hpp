#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace talktopo {

enum class Metric {
  angular,        ///< arccos(cosine) / pi, a metric on directions with range [0, 1].
  paper_literal,  ///< 1 - cosine / pi; not a metric.
  euclidean,
};

std::string_view to_string(Metric metric);
/// Accepts "angular", "paper-literal" (or "paper_literal") and "euclidean".
Metric parse_metric(std::string_view name);

/// The embedding vectors of one talk, stored row-major.
class PointCloud {
 public:
  /// Throws DataError on ragged input or an empty cloud and DomainError when a
  /// vector is all zeros.
  PointCloud(std::string id, std::size_t dimension, std::vector<double> coordinates);
  static PointCloud from_rows(std::string id, const std::vector<std::vector<double>>& rows);

  [[nodiscard]] const std::string& id() const noexcept { return id_; }
  [[nodiscard]] std::size_t size() const noexcept { return coordinates_.size() / dimension_; }
  [[nodiscard]] std::size_t dimension() const noexcept { return dimension_; }
  [[nodiscard]] std::span<const double> point(std::size_t i) const {
    return {coordinates_.data() + i * dimension_, dimension_};
  }
  [[nodiscard]] std::span<const double> coordinates() const noexcept { return coordinates_; }

 private:
  std::string id_;
  std::size_t dimension_;
  std::vector<double> coordinates_;
};

/// Dense symmetric matrix of pairwise dissimilarities with zero diagonal.
class DistanceMatrix {
 public:
  DistanceMatrix() = default;
  /// `entries` is row-major n*n. Throws DataError unless it is symmetric with a
  /// zero diagonal and non-negative finite entries.
  DistanceMatrix(std::size_t n, std::vector<double> entries);

  [[nodiscard]] std::size_t size() const noexcept { return n_; }
  [[nodiscard]] double operator()(std::size_t i, std::size_t j) const noexcept {
    return entries_[i * n_ + j];
  }
  [[nodiscard]] std::span<const double> row(std::size_t i) const {
    return {entries_.data() + i * n_, n_};
  }
  [[nodiscard]] std::span<const double> entries() const noexcept { return entries_; }
  [[nodiscard]] double max_entry() const noexcept;
  /// Same matrix with every entry multiplied by `factor` (> 0).
  [[nodiscard]] DistanceMatrix scaled(double factor) const;
  /// Matrix of the relabelled cloud where new point i is old point perm[i].
  [[nodiscard]] DistanceMatrix permuted(std::span<const std::size_t> perm) const;

 private:
  std::size_t n_ = 0;
  std::vector<double> entries_;
};

/// Normalised angle between u and v in [0, 1]. Throws DomainError for a
/// zero-norm input or mismatched dimensions.
double angular_dissimilarity(std::span<const double> u, std::span<const double> v);

/// 1 - cos(u, v) / pi. Nonzero for identical inputs and
/// ranges over [1 - 1/pi, 1 + 1/pi].
double paper_literal_dissimilarity(std::span<const double> u, std::span<const double> v);

double euclidean_distance(std::span<const double> u, std::span<const double> v);

double dissimilarity(Metric metric, std::span<const double> u, std::span<const double> v);

/// Evaluates `metric` on every pair of points. `threads` > 1 splits rows across
/// workers; each entry is computed independently so the result does not depend
/// on the thread count.
DistanceMatrix pairwise_distances(const PointCloud& cloud, Metric metric, unsigned threads = 1);

}  // namespace talktopo
