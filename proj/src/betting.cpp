#include "pfopt/betting.hpp"

#include <cmath>
#include <sstream>

#include "pfopt/errors.hpp"
#include "pfopt/vec.hpp"

namespace pfopt {

namespace {

constexpr int kMaxBisectIters = 200;

void check_input(const CodeState& state, const StepInput& input) {
  if (input.g.size() != state.dim())
    throw NumericError("betting: gradient dimension mismatch");
  if (norm_sq(input.g) > (1.0 + 1e-9) * (1.0 + 1e-9))
    throw NumericError("betting: gradient norm exceeds 1; normalize upstream");
}

// Exponent of the wealth factor. Written via log1p so that h = 0 yields
// exactly 0 and no ln(H/(H+h)) path can introduce -0 artifacts.
double wealth_exponent(const CodeState& state, const StepInput& input, double h) {
  const double z = std::log1p(h / state.h_count);
  return -dot(input.g, state.theta) * z + norm_sq(input.g) * (h - state.h_count * z);
}

}  // namespace

std::vector<double> current_point(const CodeState& state) {
  const double scale = state.wealth / state.h_count;
  std::vector<double> x(state.dim());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = scale * state.theta[i];
  return x;
}

std::vector<double> psi(const CodeState& state, const StepInput& input, double h) {
  const double scale =
      state.wealth * std::exp(wealth_exponent(state, input, h)) / (state.h_count + h);
  std::vector<double> x(state.dim());
  for (std::size_t i = 0; i < x.size(); ++i)
    x[i] = scale * (state.theta[i] - h * input.g[i]);
  return x;
}

double wealth_factor(const CodeState& state, const StepInput& input, double h) {
  return std::exp(wealth_exponent(state, input, h));
}

double phi(const CodeState& state, const StepInput& input, double h) {
  // <g, psi(h) - x_t> expanded through the two scale factors; O(d) once.
  const double gtheta = dot(input.g, state.theta);
  const double scale_h =
      state.wealth * std::exp(wealth_exponent(state, input, h)) / (state.h_count + h);
  const double g_psi = scale_h * (gtheta - h * norm_sq(input.g));
  const double g_x = (state.wealth / state.h_count) * gtheta;
  return input.f_value + (g_psi - g_x) - input.f_lower;
}

double solve_h(const CodeState& state, const StepInput& input, double tol) {
  if (!(tol > 0.0)) throw NumericError("solve_h: tolerance must be positive");
  // phi(0) reduces to f_value - f_lower exactly.
  if (input.f_value - input.f_lower <= 0.0) return 0.0;
  if (phi(state, input, 1.0) >= 0.0) return 1.0;

  // phi(lo) >= 0 > phi(hi) throughout.
  double lo = 0.0;
  double hi = 1.0;
  for (int it = 0; it < kMaxBisectIters; ++it) {
    if (hi - lo <= tol) return lo;
    const double mid = 0.5 * (lo + hi);
    if (phi(state, input, mid) >= 0.0)
      lo = mid;
    else
      hi = mid;
  }
  std::ostringstream os;
  os << "solve_h: iteration cap exceeded, bracket [" << lo << ", " << hi << "]";
  throw NumericError(os.str());
}

CodeState code_step(const CodeState& state, const StepInput& input) {
  check_input(state, input);
  if (norm(input.g) < kZeroGradientTol) return state;

  const double h = solve_h(state, input);
  CodeState next = state;
  next.wealth *= wealth_factor(state, input, h);
  next.h_count += h;
  axpy(next.theta, -h, input.g);
  return next;
}

CodeState discretized_step(const CodeState& state, const StepInput& input, double delta) {
  check_input(state, input);
  if (!(delta > 0.0) || delta > 1.0)
    throw NumericError("discretized_step: delta must be in (0, 1]");
  if (norm(input.g) < kZeroGradientTol) return state;

  const long long n = std::llround(1.0 / delta);
  const double gsq = norm_sq(input.g);
  const double gtheta0 = dot(input.g, state.theta);
  const double g_xt = (state.wealth / state.h_count) * gtheta0;

  // The inner iterate only ever moves along -g, so the whole inner loop
  // reduces to scalar recurrences in (wealth, count, <g,theta>).
  double wealth = state.wealth;
  double h_count = state.h_count;
  double gtheta = gtheta0;
  long long active = 0;

  for (long long j = 0; j < n; ++j) {
    const double g_xinner = (wealth / h_count) * gtheta;
    if (input.f_value + (g_xinner - g_xt) > input.f_lower) {
      wealth -= delta * g_xinner;
      gtheta -= delta * gsq;
      h_count += delta;
      ++active;
    }
  }

  CodeState next = state;
  next.wealth = wealth;
  next.h_count = h_count;
  axpy(next.theta, -delta * static_cast<double>(active), input.g);
  return next;
}

}  // namespace pfopt
