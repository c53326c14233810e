#include "talktopo/diagram_distance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "talktopo/error.hpp"

namespace talktopo {

std::vector<std::size_t> solve_assignment(std::span<const double> cost, std::size_t n) {
  if (cost.size() != n * n) throw ArgumentError("assignment cost matrix must be n*n");
  if (n == 0) return {};
  constexpr double inf = std::numeric_limits<double>::infinity();
  // 1-based potentials with a virtual column 0, as in the classic formulation.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost[(i0 - 1) * n + (j - 1)] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_to_col(n);
  for (std::size_t j = 1; j <= n; ++j) row_to_col[match[j] - 1] = j - 1;
  return row_to_col;
}

double linf_distance(const DiagramPoint& a, const DiagramPoint& b) {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

double diagonal_distance(const DiagramPoint& a) { return (a.death - a.birth) / 2.0; }

namespace {

void check_exponent(double p) {
  if (!(p >= 1.0) || !std::isfinite(p)) {
    throw ArgumentError("Wasserstein exponent must satisfy 1 <= p < inf");
  }
}

std::vector<DiagramPoint> finite_part(const PersistenceDiagram& d, int dim, const char* which) {
  std::vector<DiagramPoint> out;
  for (const auto& pt : d.points) {
    if (pt.dim != dim) continue;
    if (pt.essential()) {
      throw ArgumentError(std::string(which) + " diagram has an essential point in dimension " +
                          std::to_string(dim) + "; filter infinite deaths before matching");
    }
    out.push_back(pt);
  }
  return out;
}

}  // namespace

DiagonalAugmentedMatching optimal_matching(const PersistenceDiagram& a, const PersistenceDiagram& b,
                                           double p, int dim) {
  check_exponent(p);
  const auto xs = finite_part(a, dim, "first");
  const auto ys = finite_part(b, dim, "second");
  const std::size_t n = xs.size();
  const std::size_t m = ys.size();
  const std::size_t size = n + m;

  // Rows: points of a, then diagonal slots for b. Columns: points of b, then
  // diagonal slots for a. Every diagonal slot is interchangeable, so a point
  // may take any of them at the cost of its own diagonal distance.
  std::vector<double> cost(size * size, 0.0);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) {
      double c = 0.0;
      if (i < n && j < m) {
        c = std::pow(linf_distance(xs[i], ys[j]), p);
      } else if (i < n) {
        c = std::pow(diagonal_distance(xs[i]), p);
      } else if (j < m) {
        c = std::pow(diagonal_distance(ys[j]), p);
      }
      cost[i * size + j] = c;
    }
  }
  const auto assignment = solve_assignment(cost, size);

  DiagonalAugmentedMatching result;
  for (std::size_t i = 0; i < size; ++i) {
    const std::size_t j = assignment[i];
    DiagonalAugmentedMatching::Pair pair;
    if (i < n && j < m) {
      pair = {i, j, linf_distance(xs[i], ys[j])};
    } else if (i < n) {
      pair = {i, std::nullopt, diagonal_distance(xs[i])};
    } else if (j < m) {
      pair = {std::nullopt, j, diagonal_distance(ys[j])};
    } else {
      continue;  // diagonal to diagonal, free
    }
    result.cost += std::pow(pair.ground_distance, p);
    result.pairs.push_back(pair);
  }
  return result;
}

double wasserstein(const PersistenceDiagram& a, const PersistenceDiagram& b, double p, int dim) {
  check_exponent(p);
  // Solve in a canonical argument order and sum in ascending order so the
  // result is bitwise symmetric.
  PersistenceDiagram first{finite_part(a, dim, "first"), {}};
  PersistenceDiagram second{finite_part(b, dim, "second"), {}};
  first.sort();
  second.sort();
  if (second.points < first.points) std::swap(first, second);
  const auto matching = optimal_matching(first, second, p, dim);
  std::vector<double> terms;
  terms.reserve(matching.pairs.size());
  for (const auto& pair : matching.pairs) terms.push_back(std::pow(pair.ground_distance, p));
  std::sort(terms.begin(), terms.end());
  double total = 0.0;
  for (double t : terms) total += t;
  return std::pow(total, 1.0 / p);
}

double wasserstein_bruteforce(const PersistenceDiagram& a, const PersistenceDiagram& b, double p,
                              int dim) {
  check_exponent(p);
  const auto xs = finite_part(a, dim, "first");
  const auto ys = finite_part(b, dim, "second");
  if (xs.size() + ys.size() > kWassersteinBruteforceMaxPoints) {
    throw ArgumentError("wasserstein_bruteforce supports at most " +
                        std::to_string(kWassersteinBruteforceMaxPoints) + " points in total");
  }
  std::vector<char> taken(ys.size(), 0);
  double best = std::numeric_limits<double>::infinity();
  // Each point of a goes to a free point of b or to the diagonal; whatever is
  // left in b goes to the diagonal.
  auto search = [&](auto&& self, std::size_t i, double acc) -> void {
    if (i == xs.size()) {
      for (std::size_t j = 0; j < ys.size(); ++j)
        if (!taken[j]) acc += std::pow(diagonal_distance(ys[j]), p);
      best = std::min(best, acc);
      return;
    }
    self(self, i + 1, acc + std::pow(diagonal_distance(xs[i]), p));
    for (std::size_t j = 0; j < ys.size(); ++j) {
      if (taken[j]) continue;
      taken[j] = 1;
      self(self, i + 1, acc + std::pow(linf_distance(xs[i], ys[j]), p));
      taken[j] = 0;
    }
  };
  search(search, 0, 0.0);
  return std::pow(best, 1.0 / p);
}

}  // namespace talktopo
