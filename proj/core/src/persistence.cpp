#include "talktopo/persistence.hpp"

#include <algorithm>
#include <iterator>
#include <map>

#include "talktopo/error.hpp"
#include "talktopo/union_find.hpp"

namespace talktopo {

void PersistenceDiagram::sort() { std::sort(points.begin(), points.end()); }

std::vector<DiagramPoint> PersistenceDiagram::in_dimension(int dim) const {
  std::vector<DiagramPoint> out;
  std::copy_if(points.begin(), points.end(), std::back_inserter(out),
               [dim](const DiagramPoint& p) { return p.dim == dim; });
  return out;
}

std::vector<DiagramPoint> PersistenceDiagram::finite(int dim) const {
  std::vector<DiagramPoint> out;
  std::copy_if(points.begin(), points.end(), std::back_inserter(out),
               [dim](const DiagramPoint& p) { return p.dim == dim && !p.essential(); });
  return out;
}

std::size_t PersistenceDiagram::betti(int dim, double t) const {
  return static_cast<std::size_t>(std::count_if(points.begin(), points.end(), [&](const DiagramPoint& p) {
    return p.dim == dim && p.birth <= t && t < p.death;
  }));
}

namespace {

// a ^= b for sorted index sets, using `scratch` as the output buffer.
void add_column(std::vector<Index>& a, const std::vector<Index>& b, std::vector<Index>& scratch) {
  scratch.clear();
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(scratch));
  a.swap(scratch);
}

}  // namespace

ReductionState reduce_with_clearing(const Filtration& filtration) {
  const int top = filtration.max_dim();
  ReductionState state;
  state.columns.resize(static_cast<std::size_t>(top) + 1);
  state.pivot.resize(static_cast<std::size_t>(top) + 1);
  state.negative.resize(static_cast<std::size_t>(top) + 1);
  state.negative[0].assign(filtration.simplices(0).size(), 0);

  std::vector<Index> working;
  std::vector<Index> scratch;
  for (int k = top; k >= 1; --k) {
    const auto ku = static_cast<std::size_t>(k);
    const auto cols = filtration.simplices(k);
    auto& pivot = state.pivot[ku];
    auto& reduced = state.columns[ku];
    pivot.assign(filtration.simplices(k - 1).size(), -1);
    state.negative[ku].assign(cols.size(), 0);
    const std::vector<Index>* paired_above = k < top ? &state.pivot[ku + 1] : nullptr;

    for (std::size_t pos = 0; pos < cols.size(); ++pos) {
      if (paired_above && (*paired_above)[pos] >= 0) {
        ++state.cleared;
        continue;
      }
      filtration.facet_positions(k, pos, working);
      while (!working.empty()) {
        const Index owner = pivot[static_cast<std::size_t>(working.back())];
        if (owner < 0) break;
        add_column(working, reduced[static_cast<std::size_t>(owner)].rows, scratch);
      }
      if (!working.empty()) {
        pivot[static_cast<std::size_t>(working.back())] = static_cast<Index>(reduced.size());
        reduced.push_back({static_cast<Index>(pos), working});
        state.negative[ku][pos] = 1;
      }
    }
  }
  return state;
}

namespace {

// A pair as positions in the per-dimension simplex lists; death < 0 marks an
// essential class.
struct PositionPair {
  int dim;
  Index birth;
  Index death;
};

std::vector<PositionPair> position_pairs(const ReductionState& state, const Filtration& filtration) {
  std::vector<PositionPair> pairs;
  for (int d = 0; d <= filtration.max_hom_dim(); ++d) {
    const auto du = static_cast<std::size_t>(d);
    const auto& pivot = state.pivot[du + 1];
    const std::size_t count = filtration.simplices(d).size();
    for (std::size_t r = 0; r < count; ++r) {
      const Index owner = pivot[r];
      if (owner >= 0) {
        pairs.push_back({d, static_cast<Index>(r),
                         state.columns[du + 1][static_cast<std::size_t>(owner)].position});
      } else if (!state.negative[du][r]) {
        pairs.push_back({d, static_cast<Index>(r), -1});
      }
    }
  }
  return pairs;
}

std::vector<PositionPair> position_pairs(const CoboundaryReductionState& state,
                                         const Filtration& filtration) {
  std::vector<PositionPair> pairs;
  for (int d = 0; d <= filtration.max_hom_dim(); ++d) {
    const auto du = static_cast<std::size_t>(d);
    const std::size_t count = filtration.simplices(d).size();
    std::vector<char> accounted(count, 0);
    for (const auto& col : state.columns[du]) {
      pairs.push_back({d, col.position, col.rows.front()});
      accounted[static_cast<std::size_t>(col.position)] = 1;
    }
    // Cleared simplices are deaths of dimension d - 1.
    if (d > 0) {
      for (const auto& col : state.columns[du - 1]) accounted[static_cast<std::size_t>(col.rows.front())] = 1;
    }
    for (std::size_t r = 0; r < count; ++r) {
      if (!accounted[r]) pairs.push_back({d, static_cast<Index>(r), -1});
    }
  }
  return pairs;
}

std::vector<SimplexPair> to_simplex_pairs(const std::vector<PositionPair>& pairs,
                                          const Filtration& filtration) {
  std::vector<SimplexPair> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) {
    const auto& b = filtration.simplices(p.dim)[static_cast<std::size_t>(p.birth)];
    if (p.death >= 0) {
      const auto& d = filtration.simplices(p.dim + 1)[static_cast<std::size_t>(p.death)];
      out.push_back({p.dim, filtration.vertices(p.dim, b.index), filtration.vertices(p.dim + 1, d.index),
                     b.diameter, d.diameter});
    } else {
      out.push_back({p.dim, filtration.vertices(p.dim, b.index), {}, b.diameter, kInfinity});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<SimplexPair> extract_pairs(const ReductionState& state, const Filtration& filtration) {
  return to_simplex_pairs(position_pairs(state, filtration), filtration);
}

CoboundaryReductionState reduce_coboundary_with_clearing(const Filtration& filtration) {
  const int top = filtration.max_hom_dim();
  CoboundaryReductionState state;
  state.columns.resize(static_cast<std::size_t>(top) + 1);
  state.pivot.resize(static_cast<std::size_t>(top) + 1);

  std::vector<char> cleared;
  std::vector<Index> working;
  std::vector<Index> scratch;
  for (int k = 0; k <= top; ++k) {
    const auto ku = static_cast<std::size_t>(k);
    const std::size_t count = filtration.simplices(k).size();
    auto& pivot = state.pivot[ku];
    auto& reduced = state.columns[ku];
    pivot.assign(filtration.simplices(k + 1).size(), -1);

    cleared.assign(count, 0);
    if (k > 0) {
      for (const auto& col : state.columns[ku - 1]) cleared[static_cast<std::size_t>(col.rows.front())] = 1;
    }
    for (std::size_t pos = count; pos-- > 0;) {
      if (cleared[pos]) {
        ++state.cleared;
        continue;
      }
      filtration.cofacet_positions(k, pos, working);
      while (!working.empty()) {
        const Index owner = pivot[static_cast<std::size_t>(working.front())];
        if (owner < 0) break;
        add_column(working, reduced[static_cast<std::size_t>(owner)].rows, scratch);
      }
      if (!working.empty()) {
        pivot[static_cast<std::size_t>(working.front())] = static_cast<Index>(reduced.size());
        reduced.push_back({static_cast<Index>(pos), working});
      }
    }
  }
  return state;
}

std::vector<SimplexPair> extract_pairs(const CoboundaryReductionState& state,
                                       const Filtration& filtration) {
  return to_simplex_pairs(position_pairs(state, filtration), filtration);
}

std::vector<SimplexPair> standard_pairs(const Filtration& filtration) {
  const auto order = filtration.ordered();
  std::map<std::vector<Index>, std::size_t> global;
  for (std::size_t i = 0; i < order.size(); ++i) global.emplace(order[i].vertices, i);

  std::vector<std::vector<std::size_t>> reduced(order.size());
  std::vector<std::ptrdiff_t> low_owner(order.size(), -1);
  std::vector<char> is_death(order.size(), 0);
  std::vector<std::size_t> scratch;

  for (std::size_t j = 0; j < order.size(); ++j) {
    const auto& s = order[j];
    auto& col = reduced[j];
    if (s.dim > 0) {
      for (std::size_t drop = 0; drop < s.vertices.size(); ++drop) {
        std::vector<Index> face;
        for (std::size_t m = 0; m < s.vertices.size(); ++m)
          if (m != drop) face.push_back(s.vertices[m]);
        col.push_back(global.at(face));
      }
      std::sort(col.begin(), col.end());
    }
    while (!col.empty() && low_owner[col.back()] >= 0) {
      const auto& other = reduced[static_cast<std::size_t>(low_owner[col.back()])];
      scratch.clear();
      std::set_symmetric_difference(col.begin(), col.end(), other.begin(), other.end(),
                                    std::back_inserter(scratch));
      col.swap(scratch);
    }
    if (!col.empty()) {
      low_owner[col.back()] = static_cast<std::ptrdiff_t>(j);
      is_death[j] = 1;
    }
  }

  std::vector<SimplexPair> pairs;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& s = order[i];
    if (s.dim > filtration.max_hom_dim() || is_death[i]) continue;
    if (low_owner[i] >= 0) {
      const auto& d = order[static_cast<std::size_t>(low_owner[i])];
      pairs.push_back({s.dim, s.vertices, d.vertices, s.diameter, d.diameter});
    } else {
      pairs.push_back({s.dim, s.vertices, {}, s.diameter, kInfinity});
    }
  }
  std::sort(pairs.begin(), pairs.end());
  return pairs;
}

namespace {

PersistenceDiagram make_diagram(const Filtration& filtration) {
  PersistenceDiagram diagram;
  diagram.meta.threshold = filtration.threshold();
  return diagram;
}

}  // namespace

PersistenceDiagram compute_persistence(const Filtration& filtration,
                                       const PersistenceOptions& options) {
  const auto pairs = options.algorithm == ReductionAlgorithm::boundary
                         ? position_pairs(reduce_with_clearing(filtration), filtration)
                         : position_pairs(reduce_coboundary_with_clearing(filtration), filtration);
  PersistenceDiagram diagram = make_diagram(filtration);
  for (const auto& p : pairs) {
    const double birth = filtration.simplices(p.dim)[static_cast<std::size_t>(p.birth)].diameter;
    if (p.death < 0) {
      diagram.points.push_back({p.dim, birth, kInfinity});
      continue;
    }
    const double death = filtration.simplices(p.dim + 1)[static_cast<std::size_t>(p.death)].diameter;
    if (death > birth || options.keep_zero_persistence) diagram.points.push_back({p.dim, birth, death});
  }
  diagram.sort();
  return diagram;
}

PersistenceDiagram compute_h0_unionfind(const Filtration& filtration,
                                        const PersistenceOptions& options) {
  const auto n = static_cast<std::size_t>(filtration.n_points());
  if (n > 1 && filtration.max_dim() < 1) {
    throw ArgumentError("union-find H0 needs the edges of the filtration");
  }
  UnionFind sets(n);
  PersistenceDiagram diagram = make_diagram(filtration);
  std::size_t components = n;
  for (const auto& edge : filtration.simplices(1)) {
    const auto v = filtration.vertices(1, edge.index);
    if (sets.unite(static_cast<std::size_t>(v[0]), static_cast<std::size_t>(v[1]))) {
      --components;
      // Every vertex is born at 0, so the merge kills a class born at 0.
      if (edge.diameter > 0.0 || options.keep_zero_persistence) {
        diagram.points.push_back({0, 0.0, edge.diameter});
      }
    }
  }
  for (std::size_t c = 0; c < components; ++c) diagram.points.push_back({0, 0.0, kInfinity});
  diagram.sort();
  return diagram;
}

}  // namespace talktopo
