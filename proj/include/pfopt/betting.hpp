#pragma once

#include <cstddef>
#include <vector>

namespace pfopt {

/// State of the continuous coin-betting optimizer. The query point is
/// derived as (wealth / h_count) * theta and never stored.
struct CodeState {
  double wealth = 1.0;            // gambler's money, strictly positive
  double h_count = 1.0;           // accumulated effective count, >= 1
  std::vector<double> theta;      // accumulated negative weighted subgradients

  explicit CodeState(std::size_t dim) : theta(dim, 0.0) {}

  std::size_t dim() const { return theta.size(); }
};

/// One observation: subgradient at the current query point, the loss value
/// there, and a known lower bound on the loss (0 for non-negative losses).
struct StepInput {
  std::vector<double> g;
  double f_value = 0.0;
  double f_lower = 0.0;
};

/// Gradients below this Euclidean norm are treated as zero and skipped.
inline constexpr double kZeroGradientTol = 1e-12;

/// Default bracket-width tolerance for the step-mass root finder.
inline constexpr double kSolveTol = 1e-12;

/// Query point x = (wealth / h_count) * theta.
std::vector<double> current_point(const CodeState& state);

/// Closed-form trajectory of the iterate after consuming step mass h in
/// [0, 1]. psi(state, input, 0) equals current_point(state) exactly.
std::vector<double> psi(const CodeState& state, const StepInput& input, double h);

/// Multiplicative wealth factor exp(-<g,theta> ln(1+h/H) + |g|^2 (h - H ln(1+h/H))).
/// Strictly positive; equals 1 at h = 0 and for zero gradients.
double wealth_factor(const CodeState& state, const StepInput& input, double h);

/// Truncated-model value along the trajectory minus the loss floor:
/// phi(h) = f_value + <g, psi(h) - x_t> - f_lower. Its zero marks where the
/// continuous update hits the truncation corner.
double phi(const CodeState& state, const StepInput& input, double h);

/// Step mass for one update: 0 if phi(0) <= 0, 1 if phi(1) >= 0, otherwise
/// the bisection root of phi in (0, 1) located to bracket width <= tol.
/// Throws NumericError if the iteration cap is exceeded.
double solve_h(const CodeState& state, const StepInput& input, double tol = kSolveTol);

/// One full update: wealth *= wealth_factor(h), h_count += h, theta -= h g,
/// with h = solve_h(...). Zero gradients leave the state untouched.
CodeState code_step(const CodeState& state, const StepInput& input);

/// Verification oracle: the same update performed as round(1/delta)
/// discrete mini-updates of weight delta over the truncated linear model.
/// Converges to code_step as delta -> 0.
CodeState discretized_step(const CodeState& state, const StepInput& input, double delta);

}  // namespace pfopt
