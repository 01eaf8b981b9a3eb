#include "pfopt/losses.hpp"

#include <algorithm>
#include <cmath>

#include "pfopt/errors.hpp"

namespace pfopt {

double predict(const std::vector<double>& x, const Sample& s) {
  double p = 0.0;
  for (const auto& [idx, val] : s.features) p += x[static_cast<std::size_t>(idx - 1)] * val;
  return p;
}

double loss_value(const LossModel& model, const std::vector<double>& x, const Sample& s) {
  const double p = predict(x, s);
  switch (model.kind) {
    case LossKind::absolute:
      return std::abs(p - s.target);
    case LossKind::hinge:
      return std::max(0.0, 1.0 - s.target * p);
  }
  throw NumericError("loss_value: unknown loss kind");
}

std::vector<double> subgradient(const LossModel& model, const std::vector<double>& x,
                                const Sample& s) {
  std::vector<double> g(x.size(), 0.0);
  double coeff = 0.0;
  const double p = predict(x, s);
  switch (model.kind) {
    case LossKind::absolute: {
      const double r = p - s.target;
      coeff = (r > 0.0) ? 1.0 : (r < 0.0 ? -1.0 : 0.0);
      break;
    }
    case LossKind::hinge:
      coeff = (1.0 - s.target * p > 0.0) ? -s.target : 0.0;
      break;
  }
  if (coeff != 0.0)
    for (const auto& [idx, val] : s.features) g[static_cast<std::size_t>(idx - 1)] = coeff * val;
  return g;
}

int zero_one(const std::vector<double>& x, const Sample& s) {
  const double p = predict(x, s);
  const int pred = (p > 0.0) ? 1 : (p < 0.0 ? -1 : 0);
  return pred == static_cast<int>(s.target) ? 0 : 1;
}

BestConstant best_constant(Metric metric, const std::vector<double>& targets) {
  if (targets.empty()) throw DataError("best_constant: empty target sequence");
  BestConstant out;
  if (metric == Metric::absolute) {
    std::vector<double> sorted = targets;
    std::sort(sorted.begin(), sorted.end());
    // Lower median on even lengths.
    out.constant = sorted[(sorted.size() - 1) / 2];
    double sum = 0.0;
    for (double y : targets) sum += std::abs(y - out.constant);
    out.mean_loss = sum / static_cast<double>(targets.size());
  } else {
    std::size_t pos = 0;
    for (double y : targets)
      if (y > 0.0) ++pos;
    const std::size_t neg = targets.size() - pos;
    out.constant = (pos >= neg) ? 1.0 : -1.0;
    out.mean_loss = static_cast<double>(out.constant > 0.0 ? neg : pos) /
                    static_cast<double>(targets.size());
  }
  return out;
}

double normalized_score(double raw_mean_loss, double constant_mean_loss) {
  if (!(constant_mean_loss > 0.0))
    throw NumericError("normalized_score: constant predictor loss is not positive");
  return raw_mean_loss / constant_mean_loss;
}

double mean_metric_loss(Metric metric, const std::vector<double>& x,
                        std::span<const Sample> samples) {
  double sum = 0.0;
  for (const Sample& s : samples) {
    if (metric == Metric::absolute)
      sum += std::abs(predict(x, s) - s.target);
    else
      sum += static_cast<double>(zero_one(x, s));
  }
  return samples.empty() ? 0.0 : sum / static_cast<double>(samples.size());
}

double mean_constant_loss(Metric metric, double constant, std::span<const Sample> samples) {
  double sum = 0.0;
  for (const Sample& s : samples) {
    if (metric == Metric::absolute)
      sum += std::abs(constant - s.target);
    else
      sum += (constant == s.target) ? 0.0 : 1.0;
  }
  return samples.empty() ? 0.0 : sum / static_cast<double>(samples.size());
}

LossModel training_loss(Task task) {
  return LossModel{task == Task::regression ? LossKind::absolute : LossKind::hinge, 0.0};
}

Metric evaluation_metric(Task task) {
  return task == Task::regression ? Metric::absolute : Metric::zero_one;
}

}  // namespace pfopt
