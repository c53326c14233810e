#include "talktopo/labels.hpp"

#include <algorithm>

#include "talktopo/error.hpp"

namespace talktopo {

void RatingRecord::validate() const {
  if (view_count == 0) throw DataError("talk '" + talk_id + "' has a zero view count");
  for (auto category : kRatingCategories) {
    if (!rating_counts.contains(category)) {
      throw DataError("talk '" + talk_id + "' is missing rating category '" + std::string(category) + "'");
    }
  }
}

double median(std::vector<double> values) {
  if (values.empty()) throw ArgumentError("median of an empty set");
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

LabelMatrix binarize_labels(const std::vector<RatingRecord>& records) {
  if (records.empty()) throw ArgumentError("binarize_labels needs at least one talk");
  for (const auto& r : records) r.validate();
  const auto n = static_cast<Eigen::Index>(records.size());
  LabelMatrix labels(n, static_cast<Eigen::Index>(kRatingCategories.size()));
  std::vector<double> scores(records.size());
  for (std::size_t c = 0; c < kRatingCategories.size(); ++c) {
    for (std::size_t i = 0; i < records.size(); ++i) {
      const auto count = records[i].rating_counts.find(kRatingCategories[c])->second;
      scores[i] = static_cast<double>(count) / static_cast<double>(records[i].view_count);
    }
    const double m = median(scores);
    for (std::size_t i = 0; i < records.size(); ++i) {
      labels(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = scores[i] > m ? 1 : 0;
    }
  }
  return labels;
}

}  // namespace talktopo
