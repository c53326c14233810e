#include "talktopo/features.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "talktopo/error.hpp"

namespace talktopo {

std::string_view to_string(FeatureSpec spec) {
  return spec == FeatureSpec::doc_only ? "doc_only" : "doc_plus_piv";
}

FeatureSpec parse_feature_spec(std::string_view name) {
  if (name == "doc_only") return FeatureSpec::doc_only;
  if (name == "doc_plus_piv") return FeatureSpec::doc_plus_piv;
  throw ArgumentError("unknown feature spec '" + std::string(name) + "'");
}

Eigen::MatrixXd assemble_features(const Eigen::MatrixXd& doc_vectors, const Eigen::MatrixXd* pivs,
                                  FeatureSpec spec) {
  if (spec == FeatureSpec::doc_only) return doc_vectors;
  if (pivs == nullptr) throw ArgumentError("doc_plus_piv needs persistence images");
  if (pivs->rows() != doc_vectors.rows()) {
    throw DataError("feature row mismatch: " + std::to_string(doc_vectors.rows()) +
                    " document vectors vs " + std::to_string(pivs->rows()) + " images");
  }
  Eigen::MatrixXd out(doc_vectors.rows(), doc_vectors.cols() + pivs->cols());
  out << doc_vectors, *pivs;
  return out;
}

Standardizer Standardizer::fit(const Eigen::MatrixXd& x, std::span<const Eigen::Index> rows) {
  if (rows.empty()) throw ArgumentError("cannot standardize on zero rows");
  const Eigen::Index cols = x.cols();
  Standardizer s;
  s.mean_ = Eigen::VectorXd::Zero(cols);
  s.inverse_scale_ = Eigen::VectorXd::Zero(cols);
  const double n = static_cast<double>(rows.size());
  for (Eigen::Index c = 0; c < cols; ++c) {
    double lo = x(rows[0], c);
    double hi = lo;
    double sum = 0.0;
    for (auto r : rows) {
      sum += x(r, c);
      lo = std::min(lo, x(r, c));
      hi = std::max(hi, x(r, c));
    }
    const double mean = sum / n;
    s.mean_(c) = mean;
    if (lo == hi) continue;
    double ss = 0.0;
    for (auto r : rows) ss += (x(r, c) - mean) * (x(r, c) - mean);
    s.inverse_scale_(c) = 1.0 / std::sqrt(ss / n);
  }
  return s;
}

Eigen::MatrixXd Standardizer::transform(const Eigen::MatrixXd& x,
                                        std::span<const Eigen::Index> rows) const {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), x.cols());
  for (Eigen::Index i = 0; i < out.rows(); ++i) {
    out.row(i) = ((x.row(rows[static_cast<std::size_t>(i)]).transpose() - mean_).cwiseProduct(inverse_scale_))
                     .transpose();
  }
  return out;
}

}  // namespace talktopo
