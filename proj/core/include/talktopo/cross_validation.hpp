#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "talktopo/features.hpp"
#include "talktopo/labels.hpp"
#include "talktopo/models.hpp"

namespace talktopo {

struct LabeledDataset {
  Eigen::MatrixXd features;  ///< N x F, unstandardized
  LabelMatrix labels;        ///< N x L, 0/1
  std::vector<std::string> label_names;
  FeatureSpec feature_spec = FeatureSpec::doc_only;
  std::uint64_t fold_seed = 0;

  /// Throws DataError for shape mismatches, non-finite features or non-binary
  /// labels.
  void validate() const;
};

/// Seeded shuffle of [0, n) cut into k contiguous folds whose sizes differ by
/// at most one. Throws ArgumentError unless 2 <= k <= n.
std::vector<std::vector<Eigen::Index>> make_folds(std::size_t n, std::size_t k, std::uint64_t seed);

struct LabelAccuracy {
  std::string label;
  std::vector<double> fold_accuracy;
  double mean = 0.0;
};

struct CrossValidationResult {
  ModelKind model = ModelKind::logreg;
  FeatureSpec feature_spec = FeatureSpec::doc_only;
  std::size_t folds = 0;
  std::vector<LabelAccuracy> labels;
  double mean = 0.0;  ///< grand mean over labels
  std::vector<std::string> warnings;
};

/// For every fold: standardize on the training rows, train one model per label,
/// score accuracy on the held-out rows. Folds run on up to `threads` workers;
/// results do not depend on the worker count. The model seed for (label,
/// fold) is derive_seed(hp.seed, "model", label * k + fold).
CrossValidationResult cross_validate(const LabeledDataset& dataset, ModelKind kind,
                                     const Hyperparams& hp, std::size_t k = 10,
                                     unsigned threads = 1);

}  // namespace talktopo
