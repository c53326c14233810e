#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "talktopo/labels.hpp"
#include "talktopo/metric_space.hpp"
#include "talktopo/models.hpp"
#include "talktopo/persistence_image.hpp"
#include "talktopo/rips_filtration.hpp"

namespace talktopo {

struct TalkEntry {
  std::string talk_id;
  std::filesystem::path embedding_file;   ///< relative paths resolve against the manifest
  std::filesystem::path doc_vector_file;
  RatingRecord ratings;
};

struct CvSettings {
  std::size_t k = 10;
  /// Fold seed; derived from the manifest seed when absent.
  std::optional<std::uint64_t> seed;
};

struct CorpusManifest {
  std::vector<TalkEntry> talks;
  Metric metric = Metric::angular;
  PivConfig piv;
  CvSettings cv;
  std::vector<ModelKind> models{ModelKind::logreg, ModelKind::linear_svm, ModelKind::mlp};
  /// Per-model overrides of Hyperparams::defaults; the seed field is ignored.
  std::map<ModelKind, Hyperparams> hyperparams;
  int max_hom_dim = 1;
  /// Per-talk simplex budget; a talk above it fails with a topology error.
  std::size_t max_simplices = kDefaultMaxSimplices;
  std::uint64_t seed = 0;
  unsigned threads = 1;
  bool plots = true;
  /// Directory relative file paths are resolved against.
  std::filesystem::path base_dir;

  [[nodiscard]] std::uint64_t fold_seed() const;
  [[nodiscard]] Hyperparams hyperparams_for(ModelKind kind) const;
  [[nodiscard]] std::filesystem::path resolve(const std::filesystem::path& p) const;
};

/// Parses a manifest document. Throws DataError on malformed JSON, missing
/// fields or duplicate talk ids.
CorpusManifest parse_manifest(std::string_view json_text, const std::filesystem::path& base_dir);
CorpusManifest load_manifest(const std::filesystem::path& path);
/// Inverse of parse_manifest; stable field order, paths written as given.
std::string manifest_to_json(const CorpusManifest& manifest);

struct TalkData {
  std::string talk_id;
  PointCloud cloud;
  Eigen::VectorXd doc_vector;
  RatingRecord ratings;
};

struct TalkError {
  std::string talk_id;
  std::string stage;  ///< "ingest" or "topology"
  std::string message;
};

struct Corpus {
  CorpusManifest manifest;
  std::vector<TalkData> talks;  ///< manifest order, failed talks removed
  std::vector<TalkError> errors;
};

/// Fraction of talks allowed to fail before a run aborts.
inline constexpr double kMaxFailureFraction = 0.10;

/// Throws DataError when more than kMaxFailureFraction of `total` talks failed.
void check_failure_budget(std::size_t failed, std::size_t total);

/// Loads every embedding and document vector. A talk with an unreadable file,
/// ragged or non-finite rows, a zero embedding row, a document vector whose
/// length disagrees with the first readable one, or invalid ratings is recorded
/// in `errors` and skipped.
Corpus ingest(CorpusManifest manifest);
Corpus ingest(const std::filesystem::path& manifest_path);

}  // namespace talktopo
