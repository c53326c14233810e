#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace talktopo {

enum class ModelKind { logreg, linear_svm, mlp };

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

struct Hyperparams {
  double learning_rate = 0.1;
  int epochs = 500;
  double l2 = 1e-4;
  int hidden = 100;      ///< mlp only
  int batch_size = 32;   ///< mlp only
  std::uint64_t seed = 0;

  /// learning rate 0.1 for logreg / linear_svm and 0.01 for mlp; the rest as above.
  static Hyperparams defaults(ModelKind kind);
};

/// Objectives with analytic gradients over a flat parameter vector. Each
/// returns the loss and, when `grad` is non-null, writes the gradient.
///
///   logreg / hinge: params = [w (F), b]
///   mlp:            params = [W1 (hidden x F, column-major), b1 (hidden), w2 (hidden), b2]
///
/// Labels are 0/1. The L2 term (l2 / 2) * |weights|^2 skips every bias.
namespace objective {

double logistic(const Eigen::VectorXd& params, const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
                double l2, Eigen::VectorXd* grad);
double hinge(const Eigen::VectorXd& params, const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
             double l2, Eigen::VectorXd* grad);
double mlp(const Eigen::VectorXd& params, const Eigen::MatrixXd& x, const Eigen::VectorXd& y,
           int hidden, double l2, Eigen::VectorXd* grad);

Eigen::Index mlp_parameter_count(Eigen::Index features, int hidden);

}  // namespace objective

struct TrainedModel {
  ModelKind kind = ModelKind::logreg;
  Hyperparams hyperparams;
  Eigen::Index features = 0;
  Eigen::VectorXd params;
  /// Training loss after each epoch (mean mini-batch loss for the mlp).
  std::vector<double> loss_history;

  /// Raw score; positive means label 1.
  [[nodiscard]] Eigen::VectorXd decision(const Eigen::MatrixXd& x) const;
  [[nodiscard]] Eigen::VectorXi predict(const Eigen::MatrixXd& x) const;
};

/// Full-batch gradient descent on the L2-regularised log loss.
TrainedModel train_logreg(const Eigen::MatrixXd& x, const Eigen::VectorXi& y, const Hyperparams& hp);
/// Full-batch subgradient descent on the L2-regularised hinge loss.
TrainedModel train_linear_svm(const Eigen::MatrixXd& x, const Eigen::VectorXi& y,
                              const Hyperparams& hp);
/// One hidden rectifier layer and a logistic output, mini-batch gradient
/// descent with seeded initialisation and batch order.
TrainedModel train_mlp(const Eigen::MatrixXd& x, const Eigen::VectorXi& y, const Hyperparams& hp);

TrainedModel train(ModelKind kind, const Eigen::MatrixXd& x, const Eigen::VectorXi& y,
                   const Hyperparams& hp);

double accuracy(const Eigen::VectorXi& predicted, const Eigen::VectorXi& truth);

}  // namespace talktopo
