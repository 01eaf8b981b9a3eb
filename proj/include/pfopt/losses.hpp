#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace pfopt {

enum class Task { regression, classification };

/// One sparse feature vector (1-based indices, strictly increasing) plus the
/// target: a regression value, or a label in {-1, +1} for classification.
struct Sample {
  std::vector<std::pair<int, double>> features;
  double target = 0.0;
};

enum class LossKind { absolute, hinge };

/// Loss family with its known lower bound (0: both losses are non-negative).
struct LossModel {
  LossKind kind = LossKind::absolute;
  double f_lower = 0.0;
};

enum class Metric { absolute, zero_one };

/// <z, x> for a sparse sample against a dense iterate.
double predict(const std::vector<double>& x, const Sample& s);

/// absolute: |<z,x> - y|;  hinge: max(0, 1 - y <z,x>).
double loss_value(const LossModel& model, const std::vector<double>& x, const Sample& s);

/// Dense subgradient of loss_value at x. Conventions at the kinks:
/// sign(0) := 0 for the absolute loss, the zero vector at the hinge corner.
std::vector<double> subgradient(const LossModel& model, const std::vector<double>& x,
                                const Sample& s);

/// 1 if sign(<z,x>) differs from the label, with <z,x> = 0 counted as a miss.
int zero_one(const std::vector<double>& x, const Sample& s);

struct BestConstant {
  double constant = 0.0;
  double mean_loss = 0.0;
};

/// Best constant predictor for the metric over a target sequence:
/// the lower median for absolute loss, the majority label (+1 on ties) for
/// 0-1 loss. Throws DataError on an empty sequence.
BestConstant best_constant(Metric metric, const std::vector<double>& targets);

/// raw / constant; < 1 means "beats the constant predictor".
/// Throws NumericError when the constant loss is not positive.
double normalized_score(double raw_mean_loss, double constant_mean_loss);

/// Mean metric loss of a dense iterate over a set of samples.
double mean_metric_loss(Metric metric, const std::vector<double>& x,
                        std::span<const Sample> samples);

/// Mean metric loss of a constant prediction over a set of samples.
double mean_constant_loss(Metric metric, double constant, std::span<const Sample> samples);

/// Training surrogate for a task: absolute loss for regression, hinge for
/// classification (the only 1-Lipschitz surrogate used here).
LossModel training_loss(Task task);

/// Evaluation metric for a task: absolute loss or 0-1.
Metric evaluation_metric(Task task);

}  // namespace pfopt
