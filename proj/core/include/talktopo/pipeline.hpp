#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "talktopo/cross_validation.hpp"
#include "talktopo/manifest.hpp"
#include "talktopo/persistence.hpp"
#include "talktopo/persistence_image.hpp"

namespace talktopo {

struct TalkTopology {
  std::string talk_id;
  std::size_t sentences = 0;
  PersistenceDiagram diagram;
  PersistenceImage image;
};

struct PipelineResult {
  std::vector<TalkTopology> talks;  ///< corpus order
  std::vector<TalkError> errors;    ///< ingest errors first, then topology errors
  double weight_ceiling = 1.0;      ///< resolved corpus-wide PIV weight ceiling
  std::vector<CrossValidationResult> cells;  ///< models x {doc_only, doc_plus_piv}
};

struct PipelineOptions {
  std::optional<unsigned> threads;  ///< overrides the manifest
  std::optional<bool> plots;
  /// Skip the learning stage (topology artifacts only).
  bool topology_only = false;
};

/// Per talk: distances, Rips filtration up to the manifest's max_hom_dim with
/// the automatic threshold, persistence, and a dimension-1 image rasterized
/// with one weight ceiling shared by the corpus (the largest H1 persistence
/// unless the manifest fixes it). Then cross-validation for every model and
/// both feature specs. Writes diagrams/, pivs/, plots/, report.json and
/// report.csv under out_dir; each file atomically.
PipelineResult run_pipeline(const Corpus& corpus, const std::filesystem::path& out_dir,
                            const PipelineOptions& options = {});

/// Mean accuracy per model and feature spec, then per label with the folds.
std::string report_json(const Corpus& corpus, const PipelineResult& result);
/// model,feature_spec,label,fold,accuracy; fold is "mean" for the fold average
/// and label is "all" for the grand mean.
std::string report_csv(const PipelineResult& result);

}  // namespace talktopo
