#include "talktopo/rips_filtration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "talktopo/csv.hpp"
#include "talktopo/error.hpp"

namespace talktopo {

BinomialTable::BinomialTable(Index max_n, int max_k)
    : max_n_(max_n), stride_(static_cast<std::size_t>(max_k) + 1) {
  if (max_n < 0 || max_k < 0) throw ArgumentError("binomial table bounds must be non-negative");
  table_.assign(static_cast<std::size_t>(max_n + 1) * stride_, 0);
  for (Index i = 0; i <= max_n; ++i) {
    auto* row = &table_[static_cast<std::size_t>(i) * stride_];
    row[0] = 1;
    for (int j = 1; j <= std::min<Index>(i, max_k); ++j) {
      const auto* prev = &table_[static_cast<std::size_t>(i - 1) * stride_];
      const Index a = prev[j - 1];
      const Index b = j <= i - 1 ? prev[j] : 0;
      if (a > std::numeric_limits<Index>::max() - b) {
        throw ResourceError("binomial coefficient C(" + std::to_string(i) + "," +
                            std::to_string(j) + ") overflows 64-bit index");
      }
      row[j] = a + b;
    }
  }
}

Index simplex_index(std::span<const Index> vertices, const BinomialTable& binomials) {
  Index index = 0;
  for (std::size_t m = 0; m < vertices.size(); ++m) {
    if (m > 0 && vertices[m] <= vertices[m - 1]) {
      throw ArgumentError("simplex vertices must be strictly increasing");
    }
    if (vertices[m] < 0 || vertices[m] > binomials.max_n() ||
        static_cast<int>(m) + 1 > binomials.max_k()) {
      throw ArgumentError("simplex vertex outside the binomial table");
    }
    index += binomials(vertices[m], static_cast<int>(m) + 1);
  }
  return index;
}

Index simplex_index(std::span<const Index> vertices) {
  if (vertices.empty()) throw ArgumentError("simplex must have at least one vertex");
  return simplex_index(vertices, BinomialTable(vertices.back(), static_cast<int>(vertices.size())));
}

std::vector<Index> index_to_simplex(Index index, int dim, Index n_points,
                                    const BinomialTable& binomials) {
  if (dim < 0) throw ArgumentError("simplex dimension must be non-negative");
  if (n_points > binomials.max_n() || dim + 1 > binomials.max_k()) {
    throw ArgumentError("binomial table too small for the requested simplex");
  }
  if (index < 0 || index >= binomials(n_points, dim + 1)) {
    throw ArgumentError("simplex index " + std::to_string(index) + " out of range for C(" +
                        std::to_string(n_points) + "," + std::to_string(dim + 1) + ")");
  }
  std::vector<Index> vertices(static_cast<std::size_t>(dim) + 1);
  Index upper = n_points;  // exclusive bound on the next vertex
  for (int m = dim; m >= 0; --m) {
    // Largest v < upper with C(v, m + 1) <= index.
    Index lo = m;
    Index hi = upper - 1;
    while (lo < hi) {
      const Index mid = lo + (hi - lo + 1) / 2;
      if (binomials(mid, m + 1) <= index) {
        lo = mid;
      } else {
        hi = mid - 1;
      }
    }
    vertices[static_cast<std::size_t>(m)] = lo;
    index -= binomials(lo, m + 1);
    upper = lo;
  }
  return vertices;
}

std::vector<Index> index_to_simplex(Index index, int dim, Index n_points) {
  return index_to_simplex(index, dim, n_points, BinomialTable(n_points, dim + 1));
}

std::span<const FiltrationEntry> Filtration::simplices(int dim) const {
  if (dim < 0 || dim >= static_cast<int>(by_dim_.size())) return {};
  return by_dim_[static_cast<std::size_t>(dim)];
}

std::size_t Filtration::size() const noexcept {
  std::size_t total = 0;
  for (const auto& v : by_dim_) total += v.size();
  return total;
}

std::vector<Index> Filtration::vertices(int dim, Index index) const {
  return index_to_simplex(index, dim, n_points_, binomials_);
}

FiltrationSimplex Filtration::simplex(int dim, std::size_t position) const {
  const auto& e = simplices(dim)[position];
  return {vertices(dim, e.index), e.diameter, dim};
}

Index Filtration::PositionLookup::find(Index index) const {
  if (is_dense) {
    if (index < 0 || index >= static_cast<Index>(dense.size())) return -1;
    return dense[static_cast<std::size_t>(index)];
  }
  const auto it = std::lower_bound(sparse.begin(), sparse.end(), std::pair<Index, Index>{index, -1});
  return it != sparse.end() && it->first == index ? it->second : -1;
}

Index Filtration::position_of(int dim, Index index) const {
  if (dim < 0 || dim >= static_cast<int>(position_.size())) {
    throw ArgumentError("no simplices of dimension " + std::to_string(dim) + " in the filtration");
  }
  return position_[static_cast<std::size_t>(dim)].find(index);
}

void Filtration::facet_positions(int dim, std::size_t position, std::vector<Index>& out) const {
  out.clear();
  if (dim <= 0) return;
  const auto verts = vertices(dim, simplices(dim)[position].index);
  // Colex index of the facet that omits vertex j: the prefix keeps its ranks,
  // vertices after j shift down one slot.
  for (std::size_t j = 0; j < verts.size(); ++j) {
    Index facet = 0;
    for (std::size_t m = 0; m < verts.size(); ++m) {
      if (m < j) facet += binomials_(verts[m], static_cast<int>(m) + 1);
      if (m > j) facet += binomials_(verts[m], static_cast<int>(m));
    }
    out.push_back(position_of(dim - 1, facet));
  }
  std::sort(out.begin(), out.end());
}

void Filtration::cofacet_positions(int dim, std::size_t position, std::vector<Index>& out) const {
  out.clear();
  if (dim + 1 > max_dim()) return;
  const auto verts = vertices(dim, simplices(dim)[position].index);
  const std::size_t k = verts.size();
  // suffix[m]: rank contribution of verts[m..] after shifting one slot up.
  std::vector<Index> suffix(k + 1, 0);
  for (std::size_t m = k; m-- > 0;) suffix[m] = suffix[m + 1] + binomials_(verts[m], static_cast<int>(m) + 2);
  Index prefix = 0;
  std::size_t slot = 0;
  for (Index v = 0; v < n_points_; ++v) {
    if (slot < k && verts[slot] == v) {
      prefix += binomials_(v, static_cast<int>(slot) + 1);
      ++slot;
      continue;
    }
    const Index index = prefix + binomials_(v, static_cast<int>(slot) + 1) + suffix[slot];
    const Index p = position_of(dim + 1, index);
    if (p >= 0) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
}

std::vector<FiltrationSimplex> Filtration::ordered() const {
  std::vector<FiltrationSimplex> result;
  result.reserve(size());
  std::vector<std::size_t> cursor(by_dim_.size(), 0);
  while (true) {
    int best = -1;
    for (std::size_t d = 0; d < by_dim_.size(); ++d) {
      if (cursor[d] == by_dim_[d].size()) continue;
      // Strict comparison keeps the lower dimension first on equal diameters.
      if (best < 0 ||
          by_dim_[d][cursor[d]].diameter <
              by_dim_[static_cast<std::size_t>(best)][cursor[static_cast<std::size_t>(best)]].diameter) {
        best = static_cast<int>(d);
      }
    }
    if (best < 0) break;
    result.push_back(simplex(best, cursor[static_cast<std::size_t>(best)]++));
  }
  return result;
}

namespace {

/// Appends every k-subset (k = dim + 1) in lexicographic order whose diameter is
/// within the threshold.
void enumerate_dimension(const DistanceMatrix& dm, int dim, double threshold,
                         const BinomialTable& binomials, std::size_t budget_left,
                         std::vector<FiltrationEntry>& out) {
  const Index n = static_cast<Index>(dm.size());
  const int k = dim + 1;
  std::vector<Index> verts(static_cast<std::size_t>(k));
  std::vector<double> prefix_diam(static_cast<std::size_t>(k), 0.0);

  // Depth-first over increasing tuples; prefix_diam[m] is the diameter of
  // verts[0..m], so a prefix already over the threshold prunes its subtree.
  auto recurse = [&](auto&& self, int m, Index start) -> void {
    for (Index v = start; v <= n - (k - m); ++v) {
      double diam = m == 0 ? 0.0 : prefix_diam[static_cast<std::size_t>(m) - 1];
      for (int a = 0; a < m; ++a) {
        diam = std::max(diam, dm(static_cast<std::size_t>(verts[static_cast<std::size_t>(a)]),
                                 static_cast<std::size_t>(v)));
      }
      if (diam > threshold) continue;
      verts[static_cast<std::size_t>(m)] = v;
      prefix_diam[static_cast<std::size_t>(m)] = diam;
      if (m + 1 == k) {
        if (out.size() >= budget_left) {
          throw ResourceError("Rips filtration exceeds the simplex budget of " +
                              std::to_string(budget_left) + " at dimension " +
                              std::to_string(dim));
        }
        out.push_back({diam, simplex_index(verts, binomials)});
      } else {
        self(self, m + 1, v + 1);
      }
    }
  };
  recurse(recurse, 0, 0);
}

}  // namespace

Filtration build_filtration(const DistanceMatrix& dm, int max_hom_dim,
                            std::optional<double> threshold, std::size_t max_simplices) {
  const Index n = static_cast<Index>(dm.size());
  if (max_hom_dim < 0) throw ArgumentError("max_hom_dim must be non-negative");
  if (n == 0) throw ArgumentError("cannot build a filtration on zero points");
  if (max_hom_dim + 1 > n) {
    throw ArgumentError("max_hom_dim " + std::to_string(max_hom_dim) + " needs at least " +
                        std::to_string(max_hom_dim + 1) + " points, got " + std::to_string(n));
  }
  if (threshold && !(*threshold > 0.0)) throw ArgumentError("threshold must be positive");

  Filtration f;
  f.n_points_ = n;
  f.max_hom_dim_ = max_hom_dim;
  f.threshold_ = threshold.value_or(dm.max_entry());
  const int top = max_hom_dim + 1;
  f.binomials_ = BinomialTable(n, top + 1);

  // Every subset is included under the default threshold, so the count is
  // known before enumeration.
  if (!threshold) {
    std::size_t expected = 0;
    for (int d = 0; d <= top; ++d) expected += static_cast<std::size_t>(f.binomials_(n, d + 1));
    if (expected > max_simplices) {
      throw ResourceError("Rips filtration would hold " + std::to_string(expected) +
                          " simplices, over the budget of " + std::to_string(max_simplices));
    }
  }

  f.by_dim_.resize(static_cast<std::size_t>(top) + 1);
  std::size_t used = 0;
  for (int d = 0; d <= top; ++d) {
    auto& list = f.by_dim_[static_cast<std::size_t>(d)];
    if (!threshold) list.reserve(static_cast<std::size_t>(f.binomials_(n, d + 1)));
    enumerate_dimension(dm, d, f.threshold_, f.binomials_, max_simplices - used, list);
    used += list.size();
    // Enumeration is lexicographic; a stable sort on diameter keeps it as the
    // tie-break.
    std::stable_sort(list.begin(), list.end(),
                     [](const FiltrationEntry& a, const FiltrationEntry& b) {
                       return a.diameter < b.diameter;
                     });
  }

  f.position_.resize(static_cast<std::size_t>(top) + 1);
  for (int d = 0; d <= top; ++d) {
    auto& lookup = f.position_[static_cast<std::size_t>(d)];
    const auto& list = f.by_dim_[static_cast<std::size_t>(d)];
    const auto subsets = static_cast<std::size_t>(f.binomials_(n, d + 1));
    lookup.is_dense = subsets <= 4 * list.size() + 1024;
    if (lookup.is_dense) {
      lookup.dense.assign(subsets, -1);
      for (std::size_t p = 0; p < list.size(); ++p) {
        lookup.dense[static_cast<std::size_t>(list[p].index)] = static_cast<Index>(p);
      }
    } else {
      lookup.sparse.reserve(list.size());
      for (std::size_t p = 0; p < list.size(); ++p) {
        lookup.sparse.emplace_back(list[p].index, static_cast<Index>(p));
      }
      std::sort(lookup.sparse.begin(), lookup.sparse.end());
    }
  }
  return f;
}

void write_filtration_csv(const Filtration& filtration, std::ostream& out) {
  for (const auto& s : filtration.ordered()) {
    out << s.dim;
    for (Index v : s.vertices) out << ',' << v;
    out << ',' << format_double(s.diameter) << '\n';
  }
}

}  // namespace talktopo
