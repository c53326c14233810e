#include "talktopo/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <thread>

#include "talktopo/error.hpp"

namespace talktopo {

std::string_view to_string(Metric metric) {
  switch (metric) {
    case Metric::angular:
      return "angular";
    case Metric::paper_literal:
      return "paper-literal";
    case Metric::euclidean:
      return "euclidean";
  }
  return "unknown";
}

Metric parse_metric(std::string_view name) {
  if (name == "angular") return Metric::angular;
  if (name == "paper-literal" || name == "paper_literal") return Metric::paper_literal;
  if (name == "euclidean") return Metric::euclidean;
  throw ArgumentError("unknown metric '" + std::string(name) +
                      "' (expected angular, paper-literal or euclidean)");
}

namespace {

double squared_norm(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return s;
}

void check_pair(std::span<const double> u, std::span<const double> v) {
  if (u.size() != v.size()) {
    throw DomainError("dimension mismatch: " + std::to_string(u.size()) + " vs " +
                      std::to_string(v.size()));
  }
  if (u.empty()) throw DomainError("empty vectors");
}

double checked_norm(std::span<const double> v, const char* which) {
  const double n = std::sqrt(squared_norm(v));
  if (!(n > 0.0)) throw DomainError(std::string("zero-norm vector (") + which + " argument)");
  return n;
}

}  // namespace

PointCloud::PointCloud(std::string id, std::size_t dimension, std::vector<double> coordinates)
    : id_(std::move(id)), dimension_(dimension), coordinates_(std::move(coordinates)) {
  if (dimension_ == 0) throw DataError("point cloud '" + id_ + "': dimension must be >= 1");
  if (coordinates_.empty()) throw DataError("point cloud '" + id_ + "' has no points");
  if (coordinates_.size() % dimension_ != 0) {
    throw DataError("point cloud '" + id_ + "': coordinate count is not a multiple of the dimension");
  }
  for (std::size_t i = 0; i < size(); ++i) {
    const auto p = point(i);
    if (!std::all_of(p.begin(), p.end(), [](double x) { return std::isfinite(x); })) {
      throw DataError("point cloud '" + id_ + "': point " + std::to_string(i) +
                      " has a non-finite coordinate");
    }
    if (squared_norm(p) == 0.0) {
      throw DomainError("point cloud '" + id_ + "': point " + std::to_string(i) +
                        " is the zero vector");
    }
  }
}

PointCloud PointCloud::from_rows(std::string id, const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw DataError("point cloud '" + id + "' has no points");
  const std::size_t d = rows.front().size();
  std::vector<double> flat;
  flat.reserve(rows.size() * d);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != d) {
      throw DataError("point cloud '" + id + "': row " + std::to_string(i) + " has " +
                      std::to_string(rows[i].size()) + " values, expected " + std::to_string(d));
    }
    flat.insert(flat.end(), rows[i].begin(), rows[i].end());
  }
  return PointCloud(std::move(id), d, std::move(flat));
}

DistanceMatrix::DistanceMatrix(std::size_t n, std::vector<double> entries)
    : n_(n), entries_(std::move(entries)) {
  if (entries_.size() != n_ * n_) throw DataError("distance matrix: expected n*n entries");
  for (std::size_t i = 0; i < n_; ++i) {
    if ((*this)(i, i) != 0.0) throw DataError("distance matrix: nonzero diagonal");
    for (std::size_t j = 0; j < i; ++j) {
      const double x = (*this)(i, j);
      if (!std::isfinite(x) || x < 0.0) {
        throw DataError("distance matrix: entry (" + std::to_string(i) + "," + std::to_string(j) +
                        ") is negative or non-finite");
      }
      if (x != (*this)(j, i)) throw DataError("distance matrix is not symmetric");
    }
  }
}

double DistanceMatrix::max_entry() const noexcept {
  double m = 0.0;
  for (double x : entries_) m = std::max(m, x);
  return m;
}

DistanceMatrix DistanceMatrix::scaled(double factor) const {
  if (!(factor > 0.0)) throw ArgumentError("scale factor must be positive");
  std::vector<double> e(entries_);
  for (double& x : e) x *= factor;
  return DistanceMatrix(n_, std::move(e));
}

DistanceMatrix DistanceMatrix::permuted(std::span<const std::size_t> perm) const {
  if (perm.size() != n_) throw ArgumentError("permutation size mismatch");
  std::vector<double> e(n_ * n_);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) e[i * n_ + j] = (*this)(perm[i], perm[j]);
  return DistanceMatrix(n_, std::move(e));
}

double angular_dissimilarity(std::span<const double> u, std::span<const double> v) {
  check_pair(u, v);
  const double nu = checked_norm(u, "first");
  const double nv = checked_norm(v, "second");
  // angle = 2 atan2(|u^ - v^|, |u^ + v^|): same value as arccos of the clamped
  // cosine, but without the loss of precision of arccos near 0 and pi.
  double diff = 0.0;
  double sum = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double a = u[k] / nu;
    const double b = v[k] / nv;
    diff += (a - b) * (a - b);
    sum += (a + b) * (a + b);
  }
  const double angle = 2.0 * std::atan2(std::sqrt(diff), std::sqrt(sum));
  return std::clamp(angle / std::numbers::pi, 0.0, 1.0);
}

double paper_literal_dissimilarity(std::span<const double> u, std::span<const double> v) {
  check_pair(u, v);
  const double nu = checked_norm(u, "first");
  const double nv = checked_norm(v, "second");
  double dot = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) dot += u[k] * v[k];
  const double cosine = std::clamp(dot / (nu * nv), -1.0, 1.0);
  return 1.0 - cosine / std::numbers::pi;
}

double euclidean_distance(std::span<const double> u, std::span<const double> v) {
  check_pair(u, v);
  double s = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) s += (u[k] - v[k]) * (u[k] - v[k]);
  return std::sqrt(s);
}

double dissimilarity(Metric metric, std::span<const double> u, std::span<const double> v) {
  switch (metric) {
    case Metric::angular:
      return angular_dissimilarity(u, v);
    case Metric::paper_literal:
      return paper_literal_dissimilarity(u, v);
    case Metric::euclidean:
      return euclidean_distance(u, v);
  }
  throw ArgumentError("unknown metric");
}

DistanceMatrix pairwise_distances(const PointCloud& cloud, Metric metric, unsigned threads) {
  const std::size_t n = cloud.size();
  std::vector<double> e(n * n, 0.0);
  auto fill_rows = [&](std::size_t first, std::size_t stride) {
    for (std::size_t i = first; i < n; i += stride) {
      for (std::size_t j = 0; j < i; ++j) {
        const double d = dissimilarity(metric, cloud.point(i), cloud.point(j));
        e[i * n + j] = d;
        e[j * n + i] = d;
      }
    }
  };
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    fill_rows(0, 1);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(fill_rows, w, workers);
  }
  return DistanceMatrix(n, std::move(e));
}

}  // namespace talktopo
