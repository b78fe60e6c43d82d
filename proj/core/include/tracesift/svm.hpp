#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "tracesift/signal.hpp"
#include "tracesift/simulator.hpp"

namespace tracesift {

struct SvmHyperparams {
  double regularization = 0.01;  // lambda in (lambda/2)|w|^2 + mean hinge
  int epochs = 5000;
  std::uint64_t seed = 0;
};

/// Linear binary classifier over standardized features. Positive decision
/// values mean Compromised; a value of exactly 0 maps to Authentic.
struct SvmModel {
  std::vector<double> weights;
  double bias = 0.0;
  std::vector<double> feature_means;
  std::vector<double> feature_scales;  // zero-variance features get scale 1
  SvmHyperparams hyperparams;
  std::vector<double> objective_history;  // hinge objective per epoch

  double decision_value(const std::vector<double>& raw_features) const;
};

struct EvalReport {
  double accuracy = 0.0;
  // confusion[actual][predicted], 0 = Authentic, 1 = Compromised
  std::uint64_t confusion[2][2] = {{0, 0}, {0, 0}};
  int n_train = 0;
  int n_test = 0;
  CaseId case_id = CaseId::Control;

  std::uint64_t true_negatives() const { return confusion[0][0]; }
  std::uint64_t false_positives() const { return confusion[0][1]; }
  std::uint64_t false_negatives() const { return confusion[1][0]; }
  std::uint64_t true_positives() const { return confusion[1][1]; }
};

/// Flattens [totals..., frequencies..., activity_value] into one vector;
/// D = 2K + 1.
std::vector<double> flatten_features(const FeatureVector& features);

/// Deterministic stratified split: each label contributes
/// round(train_fraction * count) experiments to the training set.
std::pair<Dataset, Dataset> split_dataset(const Dataset& dataset,
                                          double train_fraction,
                                          std::uint64_t seed);

/// Index-level split used for feature lists; same contract as split_dataset.
std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    const std::vector<Label>& labels, double train_fraction,
    std::uint64_t seed);

/// Standardizes the features and minimizes the regularized hinge loss by
/// deterministic full-batch subgradient descent with averaged iterates.
SvmModel train_svm(const std::vector<FeatureVector>& features,
                   const SvmHyperparams& hyperparams = {});

Label predict(const SvmModel& model, const FeatureVector& feature);

EvalReport evaluate(const SvmModel& model,
                    const std::vector<FeatureVector>& test);

}  // namespace tracesift
