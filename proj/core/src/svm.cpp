#include "tracesift/svm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "tracesift/rng.hpp"

namespace tracesift {

std::vector<double> flatten_features(const FeatureVector& features) {
  std::vector<double> flat;
  flat.reserve(features.totals.size() + features.frequencies.size() + 1);
  for (auto t : features.totals) flat.push_back(static_cast<double>(t));
  for (double f : features.frequencies) flat.push_back(f);
  flat.push_back(static_cast<double>(features.activity_value));
  return flat;
}

double SvmModel::decision_value(const std::vector<double>& raw) const {
  if (raw.size() != weights.size())
    throw std::invalid_argument("feature dimension does not match model");
  double value = bias;
  for (std::size_t d = 0; d < raw.size(); ++d)
    value += weights[d] * (raw[d] - feature_means[d]) / feature_scales[d];
  return value;
}

std::pair<std::vector<std::size_t>, std::vector<std::size_t>> split_indices(
    const std::vector<Label>& labels, double train_fraction,
    std::uint64_t seed) {
  if (train_fraction <= 0.0 || train_fraction >= 1.0)
    throw std::invalid_argument("train_fraction must be in (0,1)");

  std::vector<std::size_t> train, test;
  for (Label side : {Label::Authentic, Label::Compromised}) {
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == side) indices.push_back(i);
    if (indices.size() < 2)
      throw InsufficientDataError("need at least 2 experiments per label");

    Rng rng(derive_seed(seed, static_cast<std::uint64_t>(side)));
    for (std::size_t i = indices.size() - 1; i > 0; --i)
      std::swap(indices[i], indices[rng.next_u64() % (i + 1)]);

    auto n_train = static_cast<std::size_t>(
        std::llround(train_fraction * static_cast<double>(indices.size())));
    n_train = std::clamp<std::size_t>(n_train, 1, indices.size() - 1);
    train.insert(train.end(), indices.begin(), indices.begin() + n_train);
    test.insert(test.end(), indices.begin() + n_train, indices.end());
  }
  std::sort(train.begin(), train.end());
  std::sort(test.begin(), test.end());
  return {train, test};
}

std::pair<Dataset, Dataset> split_dataset(const Dataset& dataset,
                                          double train_fraction,
                                          std::uint64_t seed) {
  std::vector<Label> labels;
  labels.reserve(dataset.experiments.size());
  for (const auto& ex : dataset.experiments) labels.push_back(ex.device);
  auto [train_idx, test_idx] = split_indices(labels, train_fraction, seed);

  Dataset train{{}, dataset.universe, dataset.case_id};
  Dataset test{{}, dataset.universe, dataset.case_id};
  for (auto i : train_idx) train.experiments.push_back(dataset.experiments[i]);
  for (auto i : test_idx) test.experiments.push_back(dataset.experiments[i]);
  return {train, test};
}

namespace {

double hinge_objective(const std::vector<std::vector<double>>& x,
                       const std::vector<double>& y,
                       const std::vector<double>& w, double b, double lambda) {
  double norm_sq = 0.0;
  for (double wd : w) norm_sq += wd * wd;
  double hinge = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double margin = b;
    for (std::size_t d = 0; d < w.size(); ++d) margin += w[d] * x[i][d];
    hinge += std::max(0.0, 1.0 - y[i] * margin);
  }
  return 0.5 * lambda * norm_sq + hinge / static_cast<double>(x.size());
}

}  // namespace

SvmModel train_svm(const std::vector<FeatureVector>& features,
                   const SvmHyperparams& hyperparams) {
  if (features.empty()) throw InsufficientDataError("no training features");
  if (hyperparams.regularization <= 0.0 || hyperparams.epochs < 1)
    throw std::invalid_argument("bad hyperparameters");

  std::vector<std::vector<double>> raw;
  std::vector<double> y;
  for (const auto& f : features) {
    if (!f.label)
      throw std::invalid_argument("training features must be labeled");
    raw.push_back(flatten_features(f));
    y.push_back(*f.label == Label::Compromised ? 1.0 : -1.0);
  }
  const std::size_t dims = raw.front().size();
  for (const auto& r : raw)
    if (r.size() != dims)
      throw std::invalid_argument("inconsistent feature dimensions");
  const bool has_pos = std::count(y.begin(), y.end(), 1.0) > 0;
  const bool has_neg = std::count(y.begin(), y.end(), -1.0) > 0;
  if (!has_pos || !has_neg)
    throw InsufficientDataError("both labels required for training");

  SvmModel model;
  model.hyperparams = hyperparams;
  model.feature_means.assign(dims, 0.0);
  model.feature_scales.assign(dims, 1.0);
  const auto n = static_cast<double>(raw.size());
  for (std::size_t d = 0; d < dims; ++d) {
    double mean = 0.0;
    for (const auto& r : raw) mean += r[d];
    mean /= n;
    double var = 0.0;
    for (const auto& r : raw) var += (r[d] - mean) * (r[d] - mean);
    var /= n;
    model.feature_means[d] = mean;
    model.feature_scales[d] = var > 1e-24 ? std::sqrt(var) : 1.0;
  }

  std::vector<std::vector<double>> x = raw;
  for (auto& r : x)
    for (std::size_t d = 0; d < dims; ++d)
      r[d] = (r[d] - model.feature_means[d]) / model.feature_scales[d];

  // Full-batch subgradient descent with 1/(lambda*(t+1)) steps; the
  // returned model is the average of the iterates. The +1 shift tempers
  // the first step so the averaged objective decreases from epoch one.
  const double lambda = hyperparams.regularization;
  std::vector<double> w(dims, 0.0), w_avg(dims, 0.0);
  double b = 0.0, b_avg = 0.0;
  for (int t = 1; t <= hyperparams.epochs; ++t) {
    std::vector<double> grad(dims, 0.0);
    double grad_b = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      double margin = b;
      for (std::size_t d = 0; d < dims; ++d) margin += w[d] * x[i][d];
      if (y[i] * margin < 1.0) {
        for (std::size_t d = 0; d < dims; ++d) grad[d] -= y[i] * x[i][d];
        grad_b -= y[i];
      }
    }
    const double eta = 1.0 / (lambda * static_cast<double>(t + 1));
    for (std::size_t d = 0; d < dims; ++d)
      w[d] -= eta * (lambda * w[d] + grad[d] / n);
    b -= eta * grad_b / n;

    const double k = static_cast<double>(t);
    for (std::size_t d = 0; d < dims; ++d)
      w_avg[d] += (w[d] - w_avg[d]) / k;
    b_avg += (b - b_avg) / k;
    model.objective_history.push_back(hinge_objective(x, y, w_avg, b_avg, lambda));
  }

  model.weights = w_avg;
  model.bias = b_avg;
  return model;
}

Label predict(const SvmModel& model, const FeatureVector& feature) {
  return model.decision_value(flatten_features(feature)) > 0.0
             ? Label::Compromised
             : Label::Authentic;
}

EvalReport evaluate(const SvmModel& model,
                    const std::vector<FeatureVector>& test) {
  if (test.empty()) throw InsufficientDataError("empty test set");
  EvalReport report;
  report.n_test = static_cast<int>(test.size());
  for (const auto& f : test) {
    if (!f.label) throw std::invalid_argument("test features must be labeled");
    const int actual = *f.label == Label::Compromised ? 1 : 0;
    const int predicted = predict(model, f) == Label::Compromised ? 1 : 0;
    report.confusion[actual][predicted]++;
  }
  report.accuracy =
      static_cast<double>(report.confusion[0][0] + report.confusion[1][1]) /
      static_cast<double>(report.n_test);
  return report;
}

}  // namespace tracesift
