#include "talktopo/cross_validation.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>

#include "talktopo/error.hpp"
#include "talktopo/random.hpp"

namespace talktopo {

void LabeledDataset::validate() const {
  if (features.rows() != labels.rows()) {
    throw DataError("dataset has " + std::to_string(features.rows()) + " feature rows but " +
                    std::to_string(labels.rows()) + " label rows");
  }
  if (static_cast<std::size_t>(labels.cols()) != label_names.size()) {
    throw DataError("label column count does not match label names");
  }
  if (!features.allFinite()) throw DataError("dataset features contain non-finite values");
  if ((labels.array() != 0 && labels.array() != 1).any()) throw DataError("labels must be 0 or 1");
}

std::vector<std::vector<Eigen::Index>> make_folds(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k < 2) throw ArgumentError("cross-validation needs k >= 2");
  if (n < k) {
    throw ArgumentError("cannot split " + std::to_string(n) + " rows into " + std::to_string(k) + " folds");
  }
  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  Rng rng(seed);
  rng.shuffle(std::span<Eigen::Index>(order));
  std::vector<std::vector<Eigen::Index>> folds(k);
  std::size_t start = 0;
  for (std::size_t f = 0; f < k; ++f) {
    const std::size_t size = n / k + (f < n % k ? 1 : 0);
    folds[f].assign(order.begin() + static_cast<std::ptrdiff_t>(start),
                    order.begin() + static_cast<std::ptrdiff_t>(start + size));
    std::sort(folds[f].begin(), folds[f].end());
    start += size;
  }
  return folds;
}

namespace {

struct FoldOutcome {
  std::vector<double> accuracy;  // per label
  std::vector<std::string> warnings;
};

FoldOutcome run_fold(const LabeledDataset& ds, ModelKind kind, const Hyperparams& hp,
                     const std::vector<std::vector<Eigen::Index>>& folds, std::size_t fold) {
  std::vector<Eigen::Index> train_rows;
  for (std::size_t g = 0; g < folds.size(); ++g) {
    if (g != fold) train_rows.insert(train_rows.end(), folds[g].begin(), folds[g].end());
  }
  std::sort(train_rows.begin(), train_rows.end());
  const auto& test_rows = folds[fold];

  const auto scaler = Standardizer::fit(ds.features, train_rows);
  const Eigen::MatrixXd x_train = scaler.transform(ds.features, train_rows);
  const Eigen::MatrixXd x_test = scaler.transform(ds.features, test_rows);

  FoldOutcome out;
  const auto k = folds.size();
  for (Eigen::Index label = 0; label < ds.labels.cols(); ++label) {
    Eigen::VectorXi y_train(static_cast<Eigen::Index>(train_rows.size()));
    Eigen::VectorXi y_test(static_cast<Eigen::Index>(test_rows.size()));
    for (std::size_t i = 0; i < train_rows.size(); ++i) {
      y_train(static_cast<Eigen::Index>(i)) = ds.labels(train_rows[i], label);
    }
    for (std::size_t i = 0; i < test_rows.size(); ++i) {
      y_test(static_cast<Eigen::Index>(i)) = ds.labels(test_rows[i], label);
    }
    const auto positives = y_train.sum();
    if (positives == 0 || positives == y_train.size()) {
      out.warnings.push_back("fold " + std::to_string(fold) + ", label '" +
                             ds.label_names[static_cast<std::size_t>(label)] +
                             "': training labels are single-class");
    }
    Hyperparams fold_hp = hp;
    fold_hp.seed = derive_seed(hp.seed, "model", static_cast<std::uint64_t>(label) * k + fold);
    const auto model = train(kind, x_train, y_train, fold_hp);
    out.accuracy.push_back(accuracy(model.predict(x_test), y_test));
  }
  return out;
}

}  // namespace

CrossValidationResult cross_validate(const LabeledDataset& dataset, ModelKind kind,
                                     const Hyperparams& hp, std::size_t k, unsigned threads) {
  dataset.validate();
  const auto folds = make_folds(static_cast<std::size_t>(dataset.features.rows()), k, dataset.fold_seed);

  std::vector<FoldOutcome> outcomes(k);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t f = next++; f < k; f = next++) {
      try {
        outcomes[f] = run_fold(dataset, kind, hp, folds, f);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned workers = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(k));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  CrossValidationResult result;
  result.model = kind;
  result.feature_spec = dataset.feature_spec;
  result.folds = k;
  double grand = 0.0;
  for (Eigen::Index label = 0; label < dataset.labels.cols(); ++label) {
    LabelAccuracy la;
    la.label = dataset.label_names[static_cast<std::size_t>(label)];
    for (std::size_t f = 0; f < k; ++f) la.fold_accuracy.push_back(outcomes[f].accuracy[static_cast<std::size_t>(label)]);
    la.mean = std::accumulate(la.fold_accuracy.begin(), la.fold_accuracy.end(), 0.0) / static_cast<double>(k);
    grand += la.mean;
    result.labels.push_back(std::move(la));
  }
  result.mean = dataset.labels.cols() > 0 ? grand / static_cast<double>(dataset.labels.cols()) : 0.0;
  for (const auto& o : outcomes) result.warnings.insert(result.warnings.end(), o.warnings.begin(), o.warnings.end());
  return result;
}

}  // namespace talktopo
