#pragma once

#include <cstdint>
#include <vector>

#include "pfopt/data_io.hpp"
#include "pfopt/losses.hpp"
#include "pfopt/optimizers.hpp"
#include "pfopt/rng.hpp"

namespace pfopt {

/// A generated problem: unit-norm rows, targets, the planted solution, and
/// the full-batch objective (mean absolute residual or mean hinge loss).
struct SyntheticProblem {
  std::vector<Sample> samples;  // dense rows stored sparsely, unit norm
  std::vector<double> x_star;
  double f_star = 0.0;  // objective(x_star), the gap baseline
  double sigma = 0.0;
  double margin = 0.0;
  double flip_frac = 0.0;
  Task task = Task::regression;
  int dim = 0;

  std::size_t size() const { return samples.size(); }
  double objective(const std::vector<double>& x) const;

  // Row-major copy of the rows; the objective is evaluated after every
  // streamed step, so it runs off this instead of the sparse pairs.
  std::vector<double> dense_rows;
};

/// m x d matrix with orthonormal columns (modified Gram-Schmidt with one
/// re-orthogonalization pass over seeded Gaussian columns).
std::vector<std::vector<double>> orthonormal_columns(std::size_t m, std::size_t d, Rng& rng);

/// Regression: A with orthonormal columns, x* ~ N(0,I), y = A x* + sigma v,
/// then rows scaled to unit norm with y rescaled per row so residuals are
/// preserved. sigma = 0 gives f_star = 0.
SyntheticProblem gen_regression(std::size_t m, std::size_t d, double sigma,
                                std::uint64_t seed);

/// Classification: rows generated as in regression, labels sign(<a_i, x*>),
/// rows kept only when y <a_i, x*/|x*|> >= margin until m survive, then
/// floor(flip_frac m) labels flipped at seeded positions. Hinge objective.
SyntheticProblem gen_classification(std::size_t m, std::size_t d, double margin,
                                    double flip_frac, std::uint64_t seed);

/// Anything that can consume one sample and expose its iterate; lets tests
/// drive the gap measurement with stubs.
class Stepper {
 public:
  virtual ~Stepper() = default;
  virtual void step(const Sample& s) = 0;
  virtual const std::vector<double>& iterate() const = 0;
};

class OptimizerStepper : public Stepper {
 public:
  OptimizerStepper(OptimizerRun& run, LossModel model) : run_(run), model_(model) {}
  void step(const Sample& s) override { optimizer_step(run_, s, model_); }
  const std::vector<double>& iterate() const override { return run_.iterate; }

 private:
  OptimizerRun& run_;
  LossModel model_;
};

struct GapResult {
  bool reached = false;
  std::int64_t iterations = 0;  // first k with objective gap <= threshold
};

/// Streams samples uniformly at random (seeded, with replacement), one per
/// step, evaluating the exact full-batch objective after every step.
GapResult iterations_to_gap(Stepper& stepper, const SyntheticProblem& problem,
                            double threshold, std::int64_t budget,
                            std::uint64_t stream_seed);

/// Export for cross-tool checks.
Dataset to_dataset(const SyntheticProblem& problem, std::string name);

}  // namespace pfopt
