#include "pfopt/optimizers.hpp"

#include <cmath>
#include <stdexcept>

#include "pfopt/errors.hpp"
#include "pfopt/vec.hpp"

namespace pfopt {

std::string_view kind_name(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::sgd: return "sgd";
    case OptimizerKind::iwa: return "iwa";
    case OptimizerKind::aprox: return "aprox";
    case OptimizerKind::adagrad: return "adagrad";
    case OptimizerKind::adam: return "adam";
    case OptimizerKind::coin_kt: return "coin";
    case OptimizerKind::coin2: return "coin2";
    case OptimizerKind::code: return "code";
  }
  return "?";
}

std::optional<OptimizerKind> kind_from_name(std::string_view name) {
  for (OptimizerKind k :
       {OptimizerKind::sgd, OptimizerKind::iwa, OptimizerKind::aprox, OptimizerKind::adagrad,
        OptimizerKind::adam, OptimizerKind::coin_kt, OptimizerKind::coin2, OptimizerKind::code})
    if (kind_name(k) == name) return k;
  return std::nullopt;
}

bool is_parameter_free(OptimizerKind kind) {
  return kind == OptimizerKind::coin_kt || kind == OptimizerKind::coin2 ||
         kind == OptimizerKind::code;
}

OptimizerRun make_run(OptimizerKind kind, std::size_t dim, std::optional<double> eta0) {
  if (is_parameter_free(kind) && eta0.has_value())
    throw std::invalid_argument("make_run: parameter-free optimizer takes no eta0");
  if (!is_parameter_free(kind) && !eta0.has_value())
    throw std::invalid_argument("make_run: tuned optimizer requires eta0");
  if (eta0.has_value() && !(*eta0 > 0.0))
    throw std::invalid_argument("make_run: eta0 must be positive");

  OptimizerRun run;
  run.kind = kind;
  run.eta0 = eta0;
  run.iterate.assign(dim, 0.0);
  switch (kind) {
    case OptimizerKind::adagrad:
      run.aux = AdagradAux{std::vector<double>(dim, 0.0)};
      break;
    case OptimizerKind::adam:
      run.aux = AdamAux{std::vector<double>(dim, 0.0), std::vector<double>(dim, 0.0)};
      break;
    case OptimizerKind::coin_kt:
    case OptimizerKind::coin2:
      run.aux = CoinAux{std::vector<double>(dim, 0.0), 0.0, 0};
      break;
    case OptimizerKind::code:
      run.aux = CodeState(dim);
      break;
    default:
      break;
  }
  return run;
}

double lr_schedule(double eta0, std::int64_t k) {
  return eta0 / std::sqrt(static_cast<double>(k));
}

void sgd_step(OptimizerRun& run, const std::vector<double>& g) {
  axpy(run.iterate, -lr_schedule(*run.eta0, run.step_index), g);
  ++run.step_index;
}

void adagrad_step(OptimizerRun& run, const std::vector<double>& g) {
  auto& s = std::get<AdagradAux>(run.aux).grad_sq_sum;
  for (std::size_t i = 0; i < g.size(); ++i) {
    s[i] += g[i] * g[i];
    if (s[i] > 0.0) run.iterate[i] -= *run.eta0 * g[i] / std::sqrt(s[i]);
  }
  ++run.step_index;
}

void adam_step(OptimizerRun& run, const std::vector<double>& g) {
  auto& aux = std::get<AdamAux>(run.aux);
  const double k = static_cast<double>(run.step_index);
  const double m_corr = 1.0 - std::pow(kAdamBeta1, k);
  const double v_corr = 1.0 - std::pow(kAdamBeta2, k);
  for (std::size_t i = 0; i < g.size(); ++i) {
    aux.m[i] = kAdamBeta1 * aux.m[i] + (1.0 - kAdamBeta1) * g[i];
    aux.v[i] = kAdamBeta2 * aux.v[i] + (1.0 - kAdamBeta2) * g[i] * g[i];
    const double m_hat = aux.m[i] / m_corr;
    const double v_hat = aux.v[i] / v_corr;
    run.iterate[i] -= *run.eta0 * m_hat / (std::sqrt(v_hat) + kAdamEpsilon);
  }
  ++run.step_index;
}

void coin_kt_step(OptimizerRun& run, const std::vector<double>& g) {
  auto& aux = std::get<CoinAux>(run.aux);
  aux.bet_sum += dot(g, run.iterate);
  axpy(aux.grad_sum, 1.0, g);
  // Every round counts toward the denominator, zero gradients included.
  const double denom = 1.0 + static_cast<double>(run.step_index);
  const double wealth = 1.0 - aux.bet_sum;
  for (std::size_t i = 0; i < g.size(); ++i)
    run.iterate[i] = -aux.grad_sum[i] / denom * wealth;
  ++run.step_index;
}

void coin2_step(OptimizerRun& run, const std::vector<double>& g) {
  auto& aux = std::get<CoinAux>(run.aux);
  if (norm(g) >= kZeroGradientTol) {
    aux.bet_sum += dot(g, run.iterate);
    axpy(aux.grad_sum, 1.0, g);
    ++aux.nonzero_rounds;
    const double denom = 1.0 + static_cast<double>(aux.nonzero_rounds);
    const double wealth = 1.0 - aux.bet_sum;
    for (std::size_t i = 0; i < g.size(); ++i)
      run.iterate[i] = -aux.grad_sum[i] / denom * wealth;
  }
  ++run.step_index;
}

namespace {

void truncated_prox_step(OptimizerRun& run, const Sample& s, const LossModel& model) {
  const double f = loss_value(model, run.iterate, s);
  const std::vector<double> g = subgradient(model, run.iterate, s);
  const double gsq = norm_sq(g);
  if (gsq > 0.0) {
    const double eta = lr_schedule(*run.eta0, run.step_index);
    const double step = std::min(eta, (f - model.f_lower) / gsq);
    axpy(run.iterate, -step, g);
  }
  ++run.step_index;
}

}  // namespace

void aprox_step(OptimizerRun& run, const Sample& s, const LossModel& model) {
  truncated_prox_step(run, s, model);
}

void iwa_step(OptimizerRun& run, const Sample& s, const LossModel& model) {
  if (model.kind != LossKind::absolute && model.kind != LossKind::hinge)
    throw NumericError("iwa_step: unsupported loss kind");
  truncated_prox_step(run, s, model);
}

void code_optimizer_step(OptimizerRun& run, const Sample& s, const LossModel& model) {
  auto& state = std::get<CodeState>(run.aux);
  StepInput input;
  input.g = subgradient(model, run.iterate, s);
  input.f_value = loss_value(model, run.iterate, s);
  input.f_lower = model.f_lower;
  state = code_step(state, input);
  run.iterate = current_point(state);
  ++run.step_index;
}

void optimizer_step(OptimizerRun& run, const Sample& s, const LossModel& model) {
  switch (run.kind) {
    case OptimizerKind::sgd:
      sgd_step(run, subgradient(model, run.iterate, s));
      break;
    case OptimizerKind::adagrad:
      adagrad_step(run, subgradient(model, run.iterate, s));
      break;
    case OptimizerKind::adam:
      adam_step(run, subgradient(model, run.iterate, s));
      break;
    case OptimizerKind::coin_kt:
      coin_kt_step(run, subgradient(model, run.iterate, s));
      break;
    case OptimizerKind::coin2:
      coin2_step(run, subgradient(model, run.iterate, s));
      break;
    case OptimizerKind::aprox:
      aprox_step(run, s, model);
      break;
    case OptimizerKind::iwa:
      iwa_step(run, s, model);
      break;
    case OptimizerKind::code:
      code_optimizer_step(run, s, model);
      break;
  }
}

void update_average(IterateAverage& avg, const std::vector<double>& x) {
  if (avg.count == 0) {
    avg.mean = x;
    avg.count = 1;
    return;
  }
  ++avg.count;
  const double inv = 1.0 / static_cast<double>(avg.count);
  for (std::size_t i = 0; i < x.size(); ++i) avg.mean[i] += (x[i] - avg.mean[i]) * inv;
}

}  // namespace pfopt
