#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace talktopo {

/// The fourteen viewer rating categories, in report order.
inline constexpr std::array<std::string_view, 14> kRatingCategories = {
    "beautiful",    "confusing",   "courageous", "fascinating", "funny",
    "informative",  "ingenious",   "inspiring",  "jaw-dropping", "long-winded",
    "obnoxious",    "ok",          "persuasive", "unconvincing"};

struct RatingRecord {
  std::string talk_id;
  std::uint64_t view_count = 0;
  std::map<std::string, std::uint64_t, std::less<>> rating_counts;

  /// Throws DataError when a category is missing or the view count is zero.
  void validate() const;
};

using LabelMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

/// Per category: score = count / views, label 1 iff the score is strictly above
/// the median score over all talks. Returns N x 14 in kRatingCategories order.
LabelMatrix binarize_labels(const std::vector<RatingRecord>& records);

double median(std::vector<double> values);

}  // namespace talktopo
