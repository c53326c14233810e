#include "talktopo/models.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "talktopo/error.hpp"
#include "talktopo/random.hpp"

namespace talktopo {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::logreg:
      return "logreg";
    case ModelKind::linear_svm:
      return "linear_svm";
    case ModelKind::mlp:
      return "mlp";
  }
  return "unknown";
}

ModelKind parse_model_kind(std::string_view name) {
  if (name == "logreg" || name == "lr") return ModelKind::logreg;
  if (name == "linear_svm" || name == "svm") return ModelKind::linear_svm;
  if (name == "mlp") return ModelKind::mlp;
  throw ArgumentError("unknown model '" + std::string(name) + "' (expected logreg, linear_svm or mlp)");
}

Hyperparams Hyperparams::defaults(ModelKind kind) {
  Hyperparams hp;
  if (kind == ModelKind::mlp) hp.learning_rate = 0.01;
  return hp;
}

namespace objective {

namespace {

// log(1 + exp(z)) without overflow.
double softplus(double z) { return z > 0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z)); }

double sigmoid(double z) {
  if (z >= 0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

}  // namespace

double logistic(const Eigen::VectorXd& params, const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                double l2, Eigen::VectorXd* grad) {
  const Eigen::Index f = x.cols();
  const auto w = params.head(f);
  const double b = params(f);
  const Eigen::VectorXd z = (x * w).array() + b;
  const double n = static_cast<double>(x.rows());
  double loss = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) loss += softplus(z(i)) - y(i) * z(i);
  loss = loss / n + 0.5 * l2 * w.squaredNorm();
  if (grad) {
    Eigen::VectorXd residual(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) residual(i) = (sigmoid(z(i)) - y(i)) / n;
    grad->resize(f + 1);
    grad->head(f) = x.transpose() * residual + l2 * w;
    (*grad)(f) = residual.sum();
  }
  return loss;
}

double hinge(const Eigen::VectorXd& params, const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
             double l2, Eigen::VectorXd* grad) {
  const Eigen::Index f = x.cols();
  const auto w = params.head(f);
  const double b = params(f);
  const Eigen::VectorXd z = (x * w).array() + b;
  const double n = static_cast<double>(x.rows());
  double loss = 0.0;
  Eigen::VectorXd coeff = Eigen::VectorXd::Zero(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) {
    const double sign = y(i) > 0.5 ? 1.0 : -1.0;
    const double margin = 1.0 - sign * z(i);
    if (margin > 0) {
      loss += margin;
      coeff(i) = -sign / n;
    }
  }
  loss = loss / n + 0.5 * l2 * w.squaredNorm();
  if (grad) {
    grad->resize(f + 1);
    grad->head(f) = x.transpose() * coeff + l2 * w;
    (*grad)(f) = coeff.sum();
  }
  return loss;
}

Eigen::Index mlp_parameter_count(Eigen::Index features, int hidden) {
  return hidden * features + 2 * hidden + 1;
}

double mlp(const Eigen::VectorXd& params, const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
           int hidden, double l2, Eigen::VectorXd* grad) {
  const Eigen::Index f = x.cols();
  const Eigen::Index h = hidden;
  const Eigen::Map<const Eigen::MatrixXd> w1(params.data(), h, f);
  const auto b1 = params.segment(h * f, h);
  const auto w2 = params.segment(h * f + h, h);
  const double b2 = params(h * f + 2 * h);
  const double n = static_cast<double>(x.rows());

  Eigen::MatrixXd act = (x * w1.transpose()).rowwise() + b1.transpose();
  act = act.cwiseMax(0.0);
  const Eigen::VectorXd z = (act * w2).array() + b2;
  double loss = 0.0;
  for (Eigen::Index i = 0; i < z.size(); ++i) loss += softplus(z(i)) - y(i) * z(i);
  loss = loss / n + 0.5 * l2 * (w1.squaredNorm() + w2.squaredNorm());

  if (grad) {
    grad->resize(params.size());
    Eigen::VectorXd dz(z.size());
    for (Eigen::Index i = 0; i < z.size(); ++i) dz(i) = (sigmoid(z(i)) - y(i)) / n;
    Eigen::MatrixXd dact = dz * w2.transpose();
    dact = dact.cwiseProduct((act.array() > 0.0).cast<double>().matrix());
    Eigen::Map<Eigen::MatrixXd> gw1(grad->data(), h, f);
    gw1.noalias() = dact.transpose() * x;
    gw1 += l2 * w1;
    grad->segment(h * f, h) = dact.colwise().sum().transpose();
    grad->segment(h * f + h, h) = act.transpose() * dz + l2 * w2;
    (*grad)(h * f + 2 * h) = dz.sum();
  }
  return loss;
}

}  // namespace objective

namespace {

Eigen::VectorXd binary_targets(const Eigen::MatrixXd& x, const Eigen::VectorXi& y) {
  if (x.rows() != y.size()) throw ArgumentError("feature and label row counts differ");
  if (x.rows() == 0) throw ArgumentError("cannot train on zero rows");
  if (!x.allFinite()) throw ArgumentError("features must be finite");
  Eigen::VectorXd t(y.size());
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    if (y(i) != 0 && y(i) != 1) throw ArgumentError("labels must be 0 or 1");
    t(i) = y(i);
  }
  return t;
}

void check_hyperparams(const Hyperparams& hp) {
  if (!(hp.learning_rate > 0.0)) throw ArgumentError("learning rate must be positive");
  if (hp.epochs < 1) throw ArgumentError("epochs must be >= 1");
  if (hp.l2 < 0.0) throw ArgumentError("l2 strength must be non-negative");
}

void record_loss(TrainedModel& model, double loss, int epoch) {
  if (!std::isfinite(loss)) {
    throw TrainingError(std::string(to_string(model.kind)) + ": non-finite loss at epoch " +
                        std::to_string(epoch));
  }
  model.loss_history.push_back(loss);
}

template <typename Objective>
TrainedModel full_batch_descent(ModelKind kind, const Eigen::MatrixXd& x, const Eigen::VectorXi& y,
                                const Hyperparams& hp, Objective objective) {
  check_hyperparams(hp);
  const Eigen::VectorXd t = binary_targets(x, y);
  TrainedModel model{kind, hp, x.cols(), Eigen::VectorXd::Zero(x.cols() + 1), {}};
  Eigen::VectorXd grad;
  for (int epoch = 0; epoch < hp.epochs; ++epoch) {
    // Loss recorded is the one at the start of the epoch's step.
    record_loss(model, objective(model.params, x, t, hp.l2, &grad), epoch);
    model.params -= hp.learning_rate * grad;
  }
  return model;
}

}  // namespace

TrainedModel train_logreg(const Eigen::MatrixXd& x, const Eigen::VectorXi& y, const Hyperparams& hp) {
  return full_batch_descent(ModelKind::logreg, x, y, hp, objective::logistic);
}

TrainedModel train_linear_svm(const Eigen::MatrixXd& x, const Eigen::VectorXi& y,
                              const Hyperparams& hp) {
  return full_batch_descent(ModelKind::linear_svm, x, y, hp, objective::hinge);
}

TrainedModel train_mlp(const Eigen::MatrixXd& x, const Eigen::VectorXi& y, const Hyperparams& hp) {
  check_hyperparams(hp);
  if (hp.hidden < 1) throw ArgumentError("mlp needs at least one hidden unit");
  if (hp.batch_size < 1) throw ArgumentError("batch size must be >= 1");
  const Eigen::VectorXd t = binary_targets(x, y);
  const Eigen::Index f = x.cols();
  const Eigen::Index h = hp.hidden;

  TrainedModel model{ModelKind::mlp, hp, f, Eigen::VectorXd::Zero(objective::mlp_parameter_count(f, hp.hidden)), {}};
  Rng init(derive_seed(hp.seed, "mlp-init"));
  const double s1 = 1.0 / std::sqrt(static_cast<double>(std::max<Eigen::Index>(f, 1)));
  const double s2 = 1.0 / std::sqrt(static_cast<double>(h));
  for (Eigen::Index i = 0; i < h * f; ++i) model.params(i) = s1 * init.normal();
  for (Eigen::Index i = 0; i < h; ++i) model.params(h * f + h + i) = s2 * init.normal();

  Rng order_rng(derive_seed(hp.seed, "mlp-batches"));
  std::vector<Eigen::Index> order(static_cast<std::size_t>(x.rows()));
  std::iota(order.begin(), order.end(), Eigen::Index{0});
  const auto batch = static_cast<std::size_t>(hp.batch_size);
  Eigen::MatrixXd xb;
  Eigen::VectorXd tb;
  Eigen::VectorXd grad;
  for (int epoch = 0; epoch < hp.epochs; ++epoch) {
    order_rng.shuffle(std::span<Eigen::Index>(order));
    double total = 0.0;
    for (std::size_t start = 0; start < order.size(); start += batch) {
      const std::size_t end = std::min(order.size(), start + batch);
      const auto m = static_cast<Eigen::Index>(end - start);
      xb.resize(m, f);
      tb.resize(m);
      for (Eigen::Index r = 0; r < m; ++r) {
        xb.row(r) = x.row(order[start + static_cast<std::size_t>(r)]);
        tb(r) = t(order[start + static_cast<std::size_t>(r)]);
      }
      total += objective::mlp(model.params, xb, tb, hp.hidden, hp.l2, &grad) * static_cast<double>(m);
      model.params -= hp.learning_rate * grad;
    }
    record_loss(model, total / static_cast<double>(order.size()), epoch);
  }
  return model;
}

TrainedModel train(ModelKind kind, const Eigen::MatrixXd& x, const Eigen::VectorXi& y,
                   const Hyperparams& hp) {
  switch (kind) {
    case ModelKind::logreg:
      return train_logreg(x, y, hp);
    case ModelKind::linear_svm:
      return train_linear_svm(x, y, hp);
    case ModelKind::mlp:
      return train_mlp(x, y, hp);
  }
  throw ArgumentError("unknown model kind");
}

Eigen::VectorXd TrainedModel::decision(const Eigen::MatrixXd& x) const {
  if (x.cols() != features) throw ArgumentError("feature count differs from the trained model");
  if (kind != ModelKind::mlp) return (x * params.head(features)).array() + params(features);
  const Eigen::Index h = hyperparams.hidden;
  const Eigen::Map<const Eigen::MatrixXd> w1(params.data(), h, features);
  const auto b1 = params.segment(h * features, h);
  const auto w2 = params.segment(h * features + h, h);
  const Eigen::MatrixXd act = ((x * w1.transpose()).rowwise() + b1.transpose()).cwiseMax(0.0);
  return (act * w2).array() + params(h * features + 2 * h);
}

Eigen::VectorXi TrainedModel::predict(const Eigen::MatrixXd& x) const {
  const Eigen::VectorXd z = decision(x);
  Eigen::VectorXi out(z.size());
  for (Eigen::Index i = 0; i < z.size(); ++i) out(i) = z(i) > 0.0 ? 1 : 0;
  return out;
}

double accuracy(const Eigen::VectorXi& predicted, const Eigen::VectorXi& truth) {
  if (predicted.size() != truth.size()) throw ArgumentError("prediction size mismatch");
  if (truth.size() == 0) return 0.0;
  return static_cast<double>((predicted.array() == truth.array()).count()) /
         static_cast<double>(truth.size());
}

}  // namespace talktopo
