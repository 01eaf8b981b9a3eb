#include "pfopt/data_io.hpp"

#include <cmath>
#include <doctest.h>
#include <fstream>
#include <sstream>

#include "pfopt/errors.hpp"
#include "pfopt/rng.hpp"

using namespace pfopt;

namespace {

Dataset parse_text(const std::string& text, Task task) {
  std::istringstream in(text);
  return parse_libsvm(in, task, "inline");
}

double sample_norm(const Sample& s) {
  double nsq = 0.0;
  for (const auto& [idx, val] : s.features) nsq += val * val;
  return std::sqrt(nsq);
}

}  // namespace

TEST_CASE("parse_libsvm basics") {
  const Dataset ds = parse_text("1 1:0.5 3:-0.2\n", Task::classification);
  REQUIRE(ds.samples.size() == 1);
  CHECK(ds.samples[0].target == 1.0);
  CHECK(ds.samples[0].features ==
        std::vector<std::pair<int, double>>{{1, 0.5}, {3, -0.2}});
  CHECK(ds.dim == 3);
}

TEST_CASE("parse_libsvm remaps classification labels") {
  const Dataset zero_one_labels = parse_text("0 2:1\n1 1:1\n", Task::classification);
  CHECK(zero_one_labels.samples[0].target == -1.0);
  CHECK(zero_one_labels.samples[1].target == 1.0);

  const Dataset one_two = parse_text("1 1:1\n2 1:2\n", Task::classification);
  CHECK(one_two.samples[0].target == -1.0);
  CHECK(one_two.samples[1].target == 1.0);

  const Dataset pm = parse_text("-1 1:1\n+1 1:2\n", Task::classification);
  CHECK(pm.samples[0].target == -1.0);
  CHECK(pm.samples[1].target == 1.0);

  CHECK_THROWS_AS(parse_text("3 1:1\n0 1:1\n", Task::classification), DataError);

  // Regression labels pass through untouched.
  const Dataset reg = parse_text("0 1:1\n7.25 1:2\n", Task::regression);
  CHECK(reg.samples[0].target == 0.0);
  CHECK(reg.samples[1].target == 7.25);
}

TEST_CASE("parse_libsvm rejects malformed lines with line numbers") {
  try {
    parse_text("1 1:0.5\n1 3:0.1 2:0.5\n", Task::regression);
    FAIL("expected DataError");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_text("1 0:0.5\n", Task::regression), DataError);
  CHECK_THROWS_AS(parse_text("1 1:1 1:2\n", Task::regression), DataError);
  CHECK_THROWS_AS(parse_text("x 1:1\n", Task::regression), DataError);
  CHECK_THROWS_AS(parse_text("1 a:1\n", Task::regression), DataError);
  CHECK_THROWS_AS(parse_text("1 2\n", Task::regression), DataError);
}

TEST_CASE("comments and blank lines are skipped") {
  const Dataset ds = parse_text("# header\n\n1 1:2.0 # trailing\n", Task::regression);
  CHECK(ds.samples.size() == 1);
  CHECK(ds.samples[0].features == std::vector<std::pair<int, double>>{{1, 2.0}});
}

TEST_CASE("normalize_augment example (3,4)") {
  Dataset ds = parse_text("1 1:3 2:4\n", Task::regression);
  ds = normalize_augment(std::move(ds));
  const auto& f = ds.samples[0].features;
  REQUIRE(f.size() == 3);
  CHECK(f[0].second == doctest::Approx(0.42426).epsilon(1e-4));
  CHECK(f[1].second == doctest::Approx(0.56569).epsilon(1e-4));
  CHECK(f[2].first == 3);
  CHECK(f[2].second == doctest::Approx(0.70711).epsilon(1e-4));
  CHECK(sample_norm(ds.samples[0]) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ds.dim == 3);
}

TEST_CASE("normalize_augment gives zero vectors just the bias") {
  Dataset ds = parse_text("5\n", Task::regression);
  ds.dim = 2;  // pretend the file had two feature columns elsewhere
  ds = normalize_augment(std::move(ds));
  REQUIRE(ds.samples[0].features.size() == 1);
  CHECK(ds.samples[0].features[0].first == 3);
  CHECK(sample_norm(ds.samples[0]) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-12));
}

TEST_CASE("normalized sample norms are 1 within 1e-9") {
  Rng rng(7);
  Dataset ds;
  ds.task = Task::regression;
  ds.name = "fuzz";
  ds.dim = 12;
  for (int i = 0; i < 10000; ++i) {
    Sample s;
    int idx = 0;
    for (int j = 0; j < 12; ++j) {
      idx += 1 + static_cast<int>(rng.below(2));
      if (idx > 12) break;
      s.features.emplace_back(idx, rng.uniform(-100.0, 100.0));
    }
    s.target = rng.uniform(-10.0, 10.0);
    ds.samples.push_back(std::move(s));
  }
  ds = normalize_augment(std::move(ds));
  for (const Sample& s : ds.samples) CHECK(std::abs(sample_norm(s) - 1.0) < 1e-9);
}

TEST_CASE("split sizes follow the floor rule") {
  Dataset ds;
  ds.dim = 1;
  for (int i = 0; i < 100; ++i) ds.samples.push_back(Sample{{{1, 1.0}}, double(i)});
  SplitSpec spec;
  spec.seed = 9;
  const Split parts = split(ds, spec);
  CHECK(parts.train.size() == 70);
  CHECK(parts.valid.size() == 15);
  CHECK(parts.test.size() == 15);

  ds.samples.resize(10);
  const Split small = split(ds, spec);
  CHECK(small.train.size() == 7);
  CHECK(small.valid.size() == 1);
  CHECK(small.test.size() == 2);

  ds.samples.resize(2);
  CHECK_THROWS_AS(split(ds, spec), DataError);
}

TEST_CASE("splits are disjoint, covering, and seed-deterministic") {
  Rng rng(11);
  for (int trial = 0; trial < 10000; ++trial) {
    const std::size_t n = 3 + rng.below(40);
    Dataset ds;
    ds.dim = 1;
    for (std::size_t i = 0; i < n; ++i)
      ds.samples.push_back(Sample{{{1, 1.0}}, static_cast<double>(i)});
    SplitSpec spec;
    spec.seed = rng.next_u64();

    const Split a = split(ds, spec);
    const Split b = split(ds, spec);

    std::vector<double> seen;
    for (const auto* part : {&a.train, &a.valid, &a.test})
      for (const Sample& s : *part) seen.push_back(s.target);
    CHECK(seen.size() == n);
    std::sort(seen.begin(), seen.end());
    for (std::size_t i = 0; i < n; ++i) CHECK(seen[i] == static_cast<double>(i));

    CHECK(a.train.size() == b.train.size());
    for (std::size_t i = 0; i < a.train.size(); ++i)
      CHECK(a.train[i].target == b.train[i].target);
    for (std::size_t i = 0; i < a.test.size(); ++i)
      CHECK(a.test[i].target == b.test[i].target);
  }
}

TEST_CASE("different seeds usually permute differently") {
  Dataset ds;
  ds.dim = 1;
  for (int i = 0; i < 50; ++i) ds.samples.push_back(Sample{{{1, 1.0}}, double(i)});
  int distinct = 0;
  const Split base = split(ds, SplitSpec{.seed = 0});
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const Split other = split(ds, SplitSpec{.seed = seed});
    for (std::size_t i = 0; i < base.train.size(); ++i)
      if (base.train[i].target != other.train[i].target) {
        ++distinct;
        break;
      }
  }
  CHECK(distinct >= 19);  // sanity, not a hard guarantee
}

TEST_CASE("libsvm round trip is exact") {
  Rng rng(13);
  Dataset ds;
  ds.task = Task::regression;
  ds.name = "rt";
  ds.dim = 8;
  for (int i = 0; i < 2000; ++i) {
    Sample s;
    int idx = 0;
    for (int j = 0; j < 4; ++j) {
      idx += 1 + static_cast<int>(rng.below(2));
      s.features.emplace_back(idx, rng.gaussian() * std::pow(10.0, rng.uniform(-8.0, 8.0)));
    }
    s.target = rng.gaussian() * std::pow(10.0, rng.uniform(-8.0, 8.0));
    ds.samples.push_back(std::move(s));
  }

  std::ostringstream out;
  write_libsvm(ds, out);
  std::istringstream in(out.str());
  const Dataset back = parse_libsvm(in, Task::regression, "rt");
  REQUIRE(back.samples.size() == ds.samples.size());
  for (std::size_t i = 0; i < ds.samples.size(); ++i) {
    CHECK(back.samples[i].target == ds.samples[i].target);
    CHECK(back.samples[i].features == ds.samples[i].features);
  }
}

TEST_CASE("manifest parsing") {
  const std::string path = "/tmp/pfopt_manifest_test.txt";
  {
    std::ofstream out(path);
    out << "# registry\n";
    out << "abalone rel/abalone.libsvm reg\n";
    out << "mush /abs/mushrooms.libsvm cls\n";
  }
  const auto entries = load_manifest(path);
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].name == "abalone");
  CHECK(entries[0].path == "/tmp/rel/abalone.libsvm");
  CHECK(entries[0].task == Task::regression);
  CHECK(entries[1].path == "/abs/mushrooms.libsvm");
  CHECK(entries[1].task == Task::classification);

  {
    std::ofstream out(path);
    out << "name only-two-fields\n";
  }
  CHECK_THROWS_AS(load_manifest(path), DataError);
  CHECK_THROWS_AS(load_manifest("/nonexistent/manifest.txt"), DataError);
}
