#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pfopt/betting.hpp"
#include "pfopt/losses.hpp"

namespace pfopt {

enum class OptimizerKind { sgd, iwa, aprox, adagrad, adam, coin_kt, coin2, code };

/// Reporting name; also the CLI spelling ("coin" for coin_kt).
std::string_view kind_name(OptimizerKind kind);
std::optional<OptimizerKind> kind_from_name(std::string_view name);

/// coin, coin2 and code take no learning rate.
bool is_parameter_free(OptimizerKind kind);

struct AdagradAux {
  std::vector<double> grad_sq_sum;  // per-coordinate, non-decreasing
};

struct AdamAux {
  std::vector<double> m;
  std::vector<double> v;
};

inline constexpr double kAdamBeta1 = 0.9;
inline constexpr double kAdamBeta2 = 0.999;
inline constexpr double kAdamEpsilon = 1e-8;

/// Shared state of the two discrete betting baselines.
struct CoinAux {
  std::vector<double> grad_sum;    // sum of received subgradients
  double bet_sum = 0.0;            // sum of <g_i, x_i>
  std::int64_t nonzero_rounds = 0; // rounds with a nonzero gradient
};

/// One optimizer identity with its hyperparameters and mutable state.
struct OptimizerRun {
  OptimizerKind kind = OptimizerKind::sgd;
  std::optional<double> eta0;   // absent for parameter-free kinds
  std::int64_t step_index = 1;  // k, 1-based; +1 per step
  std::vector<double> iterate;  // x_k
  std::variant<std::monostate, AdagradAux, AdamAux, CoinAux, CodeState> aux;
};

/// Fresh run at x_1 = 0. Throws std::invalid_argument when eta0 is supplied
/// for a parameter-free kind or missing for a tuned one.
OptimizerRun make_run(OptimizerKind kind, std::size_t dim, std::optional<double> eta0);

/// eta_k = eta0 / sqrt(k).
double lr_schedule(double eta0, std::int64_t k);

void sgd_step(OptimizerRun& run, const std::vector<double>& g);
void adagrad_step(OptimizerRun& run, const std::vector<double>& g);
void adam_step(OptimizerRun& run, const std::vector<double>& g);
void coin_kt_step(OptimizerRun& run, const std::vector<double>& g);
void coin2_step(OptimizerRun& run, const std::vector<double>& g);

/// Proximal step on the truncated linear model:
/// x -= min(eta_k, (F(x) - F_lower) / |g|^2) g.
void aprox_step(OptimizerRun& run, const Sample& s, const LossModel& model);

/// Same closed form as aprox_step for the absolute and hinge losses; kept as
/// a distinct named optimizer for reporting parity. Rejects other losses.
void iwa_step(OptimizerRun& run, const Sample& s, const LossModel& model);

/// Evaluates loss and subgradient at the betting query point, delegates to
/// code_step, and refreshes the cached iterate.
void code_optimizer_step(OptimizerRun& run, const Sample& s, const LossModel& model);

/// Uniform entry point used by the harness: computes the subgradient at the
/// current iterate for gradient-driven kinds, or hands the sample to the
/// loss-aware kinds.
void optimizer_step(OptimizerRun& run, const Sample& s, const LossModel& model);

/// Running mean of visited iterates.
struct IterateAverage {
  std::vector<double> mean;
  std::int64_t count = 0;
};

void update_average(IterateAverage& avg, const std::vector<double>& x);

}  // namespace pfopt
