#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>

#include "talktopo/manifest.hpp"

namespace talktopo {

struct SyntheticOptions {
  std::size_t n_talks = 40;
  std::uint64_t seed = 0;
  std::size_t points_per_talk = 60;
  std::size_t ambient_dim = 16;
  std::size_t doc_dim = 200;
  double noise = 0.05;        ///< per-coordinate sd added to loop samples
  double blob_spread = 0.1;   ///< per-coordinate sd of blob samples around their centre
  /// Category whose counts make the binarized label equal the loop class.
  std::string signal_category = "beautiful";
};

/// Even-indexed talks are noisy unit circles in a random 2-D subspace, odd ones
/// Gaussian blobs around a random unit vector. Talk i draws from
/// derive_seed(seed, "talk", i). Writes embeddings/, docs/ and manifest.json
/// under out_dir and returns the manifest. Requires n_talks >= 4.
CorpusManifest generate_synthetic_corpus(const SyntheticOptions& options,
                                         const std::filesystem::path& out_dir);

inline bool synthetic_talk_has_loop(std::size_t index) { return index % 2 == 0; }

}  // namespace talktopo
