#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "talktopo/error.hpp"
#include "talktopo/persistence.hpp"

namespace talktopo {

namespace {

using Subset = std::vector<std::size_t>;

// All k-subsets of {0..n-1} with every pairwise distance <= t.
std::vector<Subset> rips_subsets(const DistanceMatrix& dm, double t, std::size_t k) {
  std::vector<Subset> out;
  const std::size_t n = dm.size();
  if (k == 0 || k > n) return out;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
    Subset s;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (1u << i)) s.push_back(i);
    bool ok = true;
    for (std::size_t a = 0; a < s.size() && ok; ++a)
      for (std::size_t b = a + 1; b < s.size() && ok; ++b) ok = dm(s[a], s[b]) <= t;
    if (ok) out.push_back(std::move(s));
  }
  return out;
}

// Rank over Z/2 of the boundary map from `cells` (k-subsets) to `faces`.
std::size_t boundary_rank(const std::vector<Subset>& cells, const std::vector<Subset>& faces) {
  if (cells.empty() || faces.empty()) return 0;
  std::map<Subset, std::size_t> face_row;
  for (std::size_t i = 0; i < faces.size(); ++i) face_row.emplace(faces[i], i);
  const std::size_t words = (faces.size() + 63) / 64;
  std::vector<std::vector<std::uint64_t>> rows;
  rows.reserve(cells.size());
  for (const auto& c : cells) {
    std::vector<std::uint64_t> bits(words, 0);
    for (std::size_t drop = 0; drop < c.size(); ++drop) {
      Subset f;
      for (std::size_t m = 0; m < c.size(); ++m)
        if (m != drop) f.push_back(c[m]);
      const std::size_t r = face_row.at(f);
      bits[r / 64] ^= std::uint64_t{1} << (r % 64);
    }
    rows.push_back(std::move(bits));
  }
  // Gaussian elimination on the cell vectors.
  std::size_t rank = 0;
  for (std::size_t col = 0; col < faces.size() && rank < rows.size(); ++col) {
    const std::size_t w = col / 64;
    const std::uint64_t bit = std::uint64_t{1} << (col % 64);
    std::size_t p = rank;
    while (p < rows.size() && !(rows[p][w] & bit)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && (rows[r][w] & bit)) {
        for (std::size_t x = 0; x < words; ++x) rows[r][x] ^= rows[rank][x];
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

std::size_t betti_bruteforce(const DistanceMatrix& dm, double t, int dim) {
  if (dm.size() > kBettiBruteforceMaxPoints) {
    throw ArgumentError("betti_bruteforce supports at most " +
                        std::to_string(kBettiBruteforceMaxPoints) + " points, got " +
                        std::to_string(dm.size()));
  }
  if (dim < 0) throw ArgumentError("dimension must be non-negative");
  const auto k = static_cast<std::size_t>(dim);
  const auto chains = rips_subsets(dm, t, k + 1);
  const auto faces = k == 0 ? std::vector<Subset>{} : rips_subsets(dm, t, k);
  const auto cofaces = rips_subsets(dm, t, k + 2);
  return chains.size() - boundary_rank(chains, faces) - boundary_rank(cofaces, chains);
}

}  // namespace talktopo
