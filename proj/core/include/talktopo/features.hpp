#pragma once

#include <span>
#include <string_view>

#include <Eigen/Core>

namespace talktopo {

enum class FeatureSpec { doc_only, doc_plus_piv };

std::string_view to_string(FeatureSpec spec);
FeatureSpec parse_feature_spec(std::string_view name);

/// doc_only: the document vectors. doc_plus_piv: document columns followed by
/// the persistence image columns. Throws DataError on a row count mismatch and
/// ArgumentError when doc_plus_piv is requested without images.
Eigen::MatrixXd assemble_features(const Eigen::MatrixXd& doc_vectors, const Eigen::MatrixXd* pivs,
                                  FeatureSpec spec);

/// Per-column affine map to zero mean and unit (population) variance, fitted on
/// a subset of rows. Columns constant on those rows map to 0.
class Standardizer {
 public:
  static Standardizer fit(const Eigen::MatrixXd& x, std::span<const Eigen::Index> rows);

  [[nodiscard]] Eigen::MatrixXd transform(const Eigen::MatrixXd& x,
                                          std::span<const Eigen::Index> rows) const;
  [[nodiscard]] const Eigen::VectorXd& mean() const noexcept { return mean_; }
  /// 1 / standard deviation, or 0 for constant columns.
  [[nodiscard]] const Eigen::VectorXd& inverse_scale() const noexcept { return inverse_scale_; }

 private:
  Eigen::VectorXd mean_;
  Eigen::VectorXd inverse_scale_;
};

}  // namespace talktopo
