#include "pfopt/synthetic.hpp"

#include <cmath>

#include "pfopt/errors.hpp"
#include "pfopt/vec.hpp"

namespace pfopt {

namespace {

constexpr int kMaxOrthRedraws = 32;
constexpr int kMaxFilterBatches = 200;

// One dense row as a Sample with 1-based indices.
Sample make_row_sample(const std::vector<double>& row, double target) {
  Sample s;
  s.features.reserve(row.size());
  for (std::size_t j = 0; j < row.size(); ++j)
    s.features.emplace_back(static_cast<int>(j) + 1, row[j]);
  s.target = target;
  return s;
}

std::vector<double> gaussian_vector(std::size_t n, Rng& rng) {
  std::vector<double> v(n);
  for (double& x : v) x = rng.gaussian();
  return v;
}

void build_dense_rows(SyntheticProblem& p) {
  const auto d = static_cast<std::size_t>(p.dim);
  p.dense_rows.assign(p.samples.size() * d, 0.0);
  for (std::size_t i = 0; i < p.samples.size(); ++i)
    for (const auto& [idx, val] : p.samples[i].features)
      p.dense_rows[i * d + static_cast<std::size_t>(idx - 1)] = val;
}

}  // namespace

double SyntheticProblem::objective(const std::vector<double>& x) const {
  const std::size_t d = static_cast<std::size_t>(dim);
  double sum = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double* row = dense_rows.data() + i * d;
    double p = 0.0;
    for (std::size_t j = 0; j < d; ++j) p += row[j] * x[j];
    if (task == Task::regression)
      sum += std::abs(p - samples[i].target);
    else
      sum += std::max(0.0, 1.0 - samples[i].target * p);
  }
  return sum / static_cast<double>(samples.size());
}

std::vector<std::vector<double>> orthonormal_columns(std::size_t m, std::size_t d, Rng& rng) {
  if (m < d || d == 0) throw NumericError("orthonormal_columns: need m >= d >= 1");

  std::vector<std::vector<double>> cols(d);
  for (std::size_t j = 0; j < d; ++j) {
    int redraws = 0;
    for (;;) {
      std::vector<double> v = gaussian_vector(m, rng);
      // Two Gram-Schmidt passes keep orthogonality at machine precision.
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t i = 0; i < j; ++i) axpy(v, -dot(cols[i], v), cols[i]);
      const double len = norm(v);
      if (len > 1e-8) {
        for (double& x : v) x /= len;
        cols[j] = std::move(v);
        break;
      }
      if (++redraws > kMaxOrthRedraws)
        throw NumericError("orthonormal_columns: degenerate draw, redraw cap hit");
    }
  }

  // Transpose to rows.
  std::vector<std::vector<double>> rows(m, std::vector<double>(d));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < d; ++j) rows[i][j] = cols[j][i];
  return rows;
}

SyntheticProblem gen_regression(std::size_t m, std::size_t d, double sigma,
                                std::uint64_t seed) {
  Rng rng(seed);
  auto rows = orthonormal_columns(m, d, rng);
  const std::vector<double> x_star = gaussian_vector(d, rng);
  const std::vector<double> noise = gaussian_vector(m, rng);

  SyntheticProblem p;
  p.task = Task::regression;
  p.sigma = sigma;
  p.dim = static_cast<int>(d);
  p.x_star = x_star;
  p.samples.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    double y = dot(rows[i], x_star) + sigma * noise[i];
    const double len = norm(rows[i]);
    if (!(len > 0.0)) throw NumericError("gen_regression: zero row");
    for (double& v : rows[i]) v /= len;
    y /= len;  // keeps per-sample residuals consistent with the raw row
    p.samples.push_back(make_row_sample(rows[i], y));
  }
  build_dense_rows(p);
  p.f_star = p.objective(x_star);
  return p;
}

SyntheticProblem gen_classification(std::size_t m, std::size_t d, double margin,
                                    double flip_frac, std::uint64_t seed) {
  if (!(margin > 0.0)) throw NumericError("gen_classification: margin must be positive");
  if (!(flip_frac >= 0.0 && flip_frac < 1.0))
    throw NumericError("gen_classification: flip fraction must be in [0, 1)");

  Rng rng(seed);
  auto rows = orthonormal_columns(m, d, rng);
  const std::vector<double> x_star = gaussian_vector(d, rng);
  std::vector<double> x_unit = x_star;
  const double xlen = norm(x_unit);
  for (double& v : x_unit) v /= xlen;

  SyntheticProblem p;
  p.task = Task::classification;
  p.margin = margin;
  p.flip_frac = flip_frac;
  p.dim = static_cast<int>(d);
  p.x_star = x_star;
  p.samples.reserve(m);

  int batches = 0;
  while (p.samples.size() < m) {
    for (auto& row : rows) {
      if (p.samples.size() == m) break;
      const double len = norm(row);
      if (!(len > 0.0)) continue;
      for (double& v : row) v /= len;
      const double score = dot(row, x_unit);
      const double label = score > 0.0 ? 1.0 : -1.0;
      if (label * score >= margin) p.samples.push_back(make_row_sample(row, label));
    }
    if (p.samples.size() < m) {
      if (++batches > kMaxFilterBatches)
        throw NumericError("gen_classification: margin acceptance rate too low");
      rows = orthonormal_columns(m, d, rng);
    }
  }

  const auto n_flip =
      static_cast<std::size_t>(std::floor(flip_frac * static_cast<double>(m) + 1e-9));
  const std::vector<std::size_t> order = rng.permutation(m);
  for (std::size_t i = 0; i < n_flip; ++i) p.samples[order[i]].target *= -1.0;

  build_dense_rows(p);
  p.f_star = p.objective(x_star);
  return p;
}

GapResult iterations_to_gap(Stepper& stepper, const SyntheticProblem& problem,
                            double threshold, std::int64_t budget,
                            std::uint64_t stream_seed) {
  if (!(threshold > 0.0)) throw NumericError("iterations_to_gap: threshold must be positive");
  if (budget < 1) throw NumericError("iterations_to_gap: budget must be >= 1");

  Rng rng(stream_seed);
  const std::size_t m = problem.size();
  for (std::int64_t k = 1; k <= budget; ++k) {
    stepper.step(problem.samples[rng.below(m)]);
    if (problem.objective(stepper.iterate()) - problem.f_star <= threshold)
      return {true, k};
  }
  return {false, budget};
}

Dataset to_dataset(const SyntheticProblem& problem, std::string name) {
  Dataset ds;
  ds.name = std::move(name);
  ds.task = problem.task;
  ds.dim = problem.dim;
  ds.samples = problem.samples;
  return ds;
}

}  // namespace pfopt
