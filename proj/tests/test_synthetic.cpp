#include "pfopt/synthetic.hpp"

#include <cmath>
#include <doctest.h>

#include "pfopt/errors.hpp"
#include "pfopt/vec.hpp"

using namespace pfopt;

namespace {

class TeleportStepper : public Stepper {
 public:
  explicit TeleportStepper(std::vector<double> target)
      : target_(std::move(target)), x_(target_.size(), 0.0) {}
  void step(const Sample&) override { x_ = target_; }
  const std::vector<double>& iterate() const override { return x_; }

 private:
  std::vector<double> target_;
  std::vector<double> x_;
};

double row_norm(const Sample& s) {
  double nsq = 0.0;
  for (const auto& [idx, val] : s.features) nsq += val * val;
  return std::sqrt(nsq);
}

}  // namespace

TEST_CASE("orthonormal_columns produces orthonormal columns") {
  Rng rng(3);
  for (const auto [m, d] : {std::pair<std::size_t, std::size_t>{1000, 40}, {50, 5}}) {
    const auto rows = orthonormal_columns(m, d, rng);
    REQUIRE(rows.size() == m);
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = a; b < d; ++b) {
        double ip = 0.0;
        for (std::size_t i = 0; i < m; ++i) ip += rows[i][a] * rows[i][b];
        CHECK(std::abs(ip - (a == b ? 1.0 : 0.0)) < 1e-8);
      }
  }
  CHECK_THROWS_AS(orthonormal_columns(3, 5, rng), NumericError);
}

TEST_CASE("gen_regression invariants") {
  const SyntheticProblem p = gen_regression(200, 10, 0.0, 42);
  CHECK(p.size() == 200);
  CHECK(p.dim == 10);
  for (const Sample& s : p.samples) CHECK(std::abs(row_norm(s) - 1.0) < 1e-9);
  CHECK(p.f_star <= 1e-10);  // noiseless consistency
  CHECK(p.objective(p.x_star) == p.f_star);

  const SyntheticProblem noisy = gen_regression(200, 10, 0.5, 42);
  CHECK(noisy.f_star > 0.01);

  const SyntheticProblem again = gen_regression(200, 10, 0.0, 42);
  for (std::size_t i = 0; i < p.size(); ++i) {
    CHECK(again.samples[i].target == p.samples[i].target);
    CHECK(again.samples[i].features == p.samples[i].features);
  }
  const SyntheticProblem other = gen_regression(200, 10, 0.0, 43);
  bool differs = false;
  for (std::size_t i = 0; i < p.size() && !differs; ++i)
    differs = other.samples[i].target != p.samples[i].target;
  CHECK(differs);
}

TEST_CASE("gen_classification invariants") {
  const SyntheticProblem clean = gen_classification(300, 8, 0.05, 0.0, 7);
  CHECK(clean.size() == 300);
  std::vector<double> x_unit = clean.x_star;
  const double len = norm(x_unit);
  for (double& v : x_unit) v /= len;
  for (const Sample& s : clean.samples) {
    CHECK(std::abs(row_norm(s) - 1.0) < 1e-9);
    CHECK(s.target * predict(x_unit, s) >= 0.05 - 1e-12);
    CHECK((s.target == 1.0 || s.target == -1.0));
  }

  const SyntheticProblem flipped = gen_classification(300, 8, 0.05, 0.2, 7);
  std::size_t flips = 0;
  for (std::size_t i = 0; i < clean.size(); ++i) {
    CHECK(flipped.samples[i].features == clean.samples[i].features);
    if (flipped.samples[i].target != clean.samples[i].target) ++flips;
  }
  CHECK(flips == 60);  // floor(0.2 * 300)

  const SyntheticProblem again = gen_classification(300, 8, 0.05, 0.2, 7);
  for (std::size_t i = 0; i < flipped.size(); ++i)
    CHECK(again.samples[i].target == flipped.samples[i].target);

  CHECK_THROWS_AS(gen_classification(10, 2, 0.0, 0.0, 1), NumericError);
  CHECK_THROWS_AS(gen_classification(10, 2, 0.05, 1.0, 1), NumericError);
}

TEST_CASE("iterations_to_gap with a teleport stub returns 1") {
  const SyntheticProblem p = gen_regression(50, 4, 0.0, 5);
  TeleportStepper stub(p.x_star);
  const GapResult r = iterations_to_gap(stub, p, 0.05, 100, 99);
  CHECK(r.reached);
  CHECK(r.iterations == 1);
}

TEST_CASE("iterations_to_gap is monotone in the threshold") {
  const SyntheticProblem p = gen_regression(60, 5, 0.0, 11);
  std::int64_t prev = 0;
  for (double threshold : {0.5, 0.2, 0.05, 0.02}) {
    OptimizerRun run = make_run(OptimizerKind::code, 5, std::nullopt);
    OptimizerStepper stepper(run, training_loss(Task::regression));
    const GapResult r = iterations_to_gap(stepper, p, threshold, 20000, 123);
    REQUIRE(r.reached);
    CHECK(r.iterations >= prev);
    prev = r.iterations;
  }
}

TEST_CASE("iterations_to_gap is deterministic and respects the budget") {
  const SyntheticProblem p = gen_regression(60, 5, 0.0, 11);
  OptimizerRun a = make_run(OptimizerKind::code, 5, std::nullopt);
  OptimizerRun b = make_run(OptimizerKind::code, 5, std::nullopt);
  OptimizerStepper sa(a, training_loss(Task::regression));
  OptimizerStepper sb(b, training_loss(Task::regression));
  const GapResult ra = iterations_to_gap(sa, p, 0.05, 20000, 77);
  const GapResult rb = iterations_to_gap(sb, p, 0.05, 20000, 77);
  CHECK(ra.reached == rb.reached);
  CHECK(ra.iterations == rb.iterations);

  OptimizerRun slow = make_run(OptimizerKind::sgd, 5, 1e-6);
  OptimizerStepper ss(slow, training_loss(Task::regression));
  const GapResult rs = iterations_to_gap(ss, p, 0.05, 50, 77);
  CHECK(!rs.reached);
  CHECK(rs.iterations == 50);
}

TEST_CASE("gap at x_star is zero for noiseless regression") {
  const SyntheticProblem p = gen_regression(100, 6, 0.0, 3);
  CHECK(p.objective(p.x_star) - p.f_star == 0.0);
}

TEST_CASE("synthetic problems export to the libsvm format") {
  const SyntheticProblem p = gen_regression(20, 3, 0.1, 9);
  const Dataset ds = to_dataset(p, "synth");
  CHECK(ds.samples.size() == 20);
  CHECK(ds.dim == 3);
  CHECK(ds.task == Task::regression);
}
