#include "pfopt/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <istream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include "pfopt/errors.hpp"

namespace pfopt {

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_opt(const std::optional<double>& v) {
  return v.has_value() ? fmt_double(*v) : std::string();
}

std::vector<std::string> split_fields(const std::string& line, std::size_t expected) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  out.push_back(cur);
  if (out.size() != expected) {
    std::ostringstream os;
    os << "csv: expected " << expected << " fields, got " << out.size() << " in: " << line;
    throw DataError(os.str());
  }
  return out;
}

double to_double(const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw DataError("csv: bad number '" + s + "'");
  }
}

std::optional<double> to_opt_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return to_double(s);
}

std::int64_t to_int(const std::string& s) {
  return static_cast<std::int64_t>(std::llround(to_double(s)));
}

void check_no_comma(const std::string& s) {
  if (s.find(',') != std::string::npos)
    throw DataError("csv: field contains a comma: " + s);
}

// Runs fn(0..n-1) across a small thread pool; each index owns its output slot
// so scheduling cannot change results.
void parallel_for(std::size_t n, unsigned jobs, const std::function<void(std::size_t)>& fn) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::mutex error_mutex;
  for (unsigned t = 0; t < jobs; ++t)
    pool.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::string metric_name(Metric m) { return m == Metric::absolute ? "absolute" : "zero_one"; }

// Canonically ordered mean so aggregation is independent of record order.
struct KeyedMean {
  std::vector<std::pair<std::pair<std::string, std::uint64_t>, double>> values;

  void add(const std::string& dataset, std::uint64_t seed, double v) {
    values.push_back({{dataset, seed}, v});
  }
  int count() const { return static_cast<int>(values.size()); }
  double mean() {
    std::sort(values.begin(), values.end());
    double sum = 0.0;
    for (const auto& kv : values) sum += kv.second;
    return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
  }
};

}  // namespace

std::vector<double> default_eta_grid() {
  std::vector<double> grid;
  for (int i = 0; i < 16; ++i) grid.push_back(std::pow(10.0, -2.5 + 0.5 * i));
  return grid;
}

std::string to_csv(const ExperimentRecord& r) {
  check_no_comma(r.dataset);
  check_no_comma(r.algorithm);
  std::ostringstream os;
  char wall[32];
  std::snprintf(wall, sizeof(wall), "%.3f", r.wall_ms);
  os << r.dataset << ',' << r.algorithm << ',' << fmt_opt(r.eta0) << ',' << r.seed << ','
     << r.split << ',' << r.metric << ',' << fmt_double(r.raw_loss) << ','
     << fmt_opt(r.normalized_loss) << ',' << r.steps << ',' << wall;
  return os.str();
}

ExperimentRecord record_from_csv(const std::string& line) {
  const auto f = split_fields(line, 10);
  ExperimentRecord r;
  r.dataset = f[0];
  r.algorithm = f[1];
  r.eta0 = to_opt_double(f[2]);
  r.seed = static_cast<std::uint64_t>(to_int(f[3]));
  r.split = f[4];
  r.metric = f[5];
  r.raw_loss = to_double(f[6]);
  r.normalized_loss = to_opt_double(f[7]);
  r.steps = to_int(f[8]);
  r.wall_ms = to_double(f[9]);
  return r;
}

void write_records_csv(std::ostream& out, std::span<const ExperimentRecord> records) {
  out << kRecordCsvHeader << '\n';
  for (const auto& r : records) out << to_csv(r) << '\n';
}

std::vector<ExperimentRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("records csv: empty stream");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRecordCsvHeader) throw DataError("records csv: unexpected header: " + line);
  std::vector<ExperimentRecord> out;
  while (std::getline(in, line)) {
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
    out.push_back(record_from_csv(line));
  }
  return out;
}

std::string to_csv(const SynthRecord& r) {
  check_no_comma(r.problem);
  check_no_comma(r.algorithm);
  std::ostringstream os;
  os << r.problem << ',' << (r.task == Task::regression ? "reg" : "cls") << ',' << r.algorithm
     << ',' << fmt_opt(r.eta0) << ',' << r.seed << ',' << (r.reached ? 1 : 0) << ','
     << r.iterations << ',' << r.budget << ',' << fmt_double(r.sigma) << ','
     << fmt_double(r.flip_frac) << ',' << fmt_double(r.threshold);
  return os.str();
}

SynthRecord synth_record_from_csv(const std::string& line) {
  const auto f = split_fields(line, 11);
  SynthRecord r;
  r.problem = f[0];
  if (f[1] == "reg")
    r.task = Task::regression;
  else if (f[1] == "cls")
    r.task = Task::classification;
  else
    throw DataError("synth csv: bad task '" + f[1] + "'");
  r.algorithm = f[2];
  r.eta0 = to_opt_double(f[3]);
  r.seed = static_cast<std::uint64_t>(to_int(f[4]));
  r.reached = to_int(f[5]) != 0;
  r.iterations = to_int(f[6]);
  r.budget = to_int(f[7]);
  r.sigma = to_double(f[8]);
  r.flip_frac = to_double(f[9]);
  r.threshold = to_double(f[10]);
  return r;
}

void write_synth_csv(std::ostream& out, std::span<const SynthRecord> records) {
  out << kSynthCsvHeader << '\n';
  for (const auto& r : records) out << to_csv(r) << '\n';
}

std::vector<SynthRecord> read_synth_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("synth csv: empty stream");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kSynthCsvHeader) throw DataError("synth csv: unexpected header: " + line);
  std::vector<SynthRecord> out;
  while (std::getline(in, line)) {
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
    out.push_back(synth_record_from_csv(line));
  }
  return out;
}

Dataset prepare(Dataset raw) { return normalize_augment(std::move(raw)); }

std::vector<ExperimentRecord> run_single(const Dataset& prepared, OptimizerKind kind,
                                         std::optional<double> eta0, std::uint64_t seed) {
  SplitSpec spec;
  spec.seed = seed;
  const Split parts = split(prepared, spec);

  const LossModel model = training_loss(prepared.task);
  const Metric metric = evaluation_metric(prepared.task);

  std::vector<double> train_targets;
  train_targets.reserve(parts.train.size());
  for (const Sample& s : parts.train) train_targets.push_back(s.target);
  const BestConstant constant = best_constant(metric, train_targets);

  OptimizerRun run = make_run(kind, static_cast<std::size_t>(prepared.dim), eta0);
  IterateAverage average;

  const auto t0 = std::chrono::steady_clock::now();
  for (const Sample& s : parts.train) {
    update_average(average, run.iterate);
    optimizer_step(run, s, model);
  }
  const double wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  std::vector<ExperimentRecord> records;
  const std::string base = metric_name(metric);
  for (const auto& [split_name, samples] :
       {std::pair<const char*, const std::vector<Sample>*>{"valid", &parts.valid},
        {"test", &parts.test}}) {
    const double const_loss = mean_constant_loss(metric, constant.constant, *samples);
    const struct {
      const std::vector<double>* x;
      std::string metric;
    } variants[] = {{&run.iterate, base}, {&average.mean, base + "_avg"}};
    for (const auto& v : variants) {
      ExperimentRecord r;
      r.dataset = prepared.name;
      r.algorithm = std::string(kind_name(kind));
      r.eta0 = eta0;
      r.seed = seed;
      r.split = split_name;
      r.metric = v.metric;
      r.raw_loss = mean_metric_loss(metric, *v.x, *samples);
      if (const_loss > 0.0) r.normalized_loss = r.raw_loss / const_loss;
      r.steps = static_cast<std::int64_t>(parts.train.size());
      r.wall_ms = wall_ms;
      records.push_back(std::move(r));
    }
  }
  return records;
}

std::vector<ExperimentRecord> run_sweep(const SweepConfig& config) {
  struct Cell {
    const Dataset* ds;
    OptimizerKind kind;
    std::optional<double> eta0;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (const Dataset& ds : config.datasets)
    for (OptimizerKind kind : config.algos) {
      std::vector<std::optional<double>> etas;
      if (is_parameter_free(kind))
        etas.push_back(std::nullopt);
      else
        for (double e : config.grid) etas.push_back(e);
      for (const auto& eta : etas)
        for (std::uint64_t seed : config.seeds) cells.push_back({&ds, kind, eta, seed});
    }

  std::vector<std::vector<ExperimentRecord>> results(cells.size());
  parallel_for(cells.size(), config.jobs, [&](std::size_t i) {
    const Cell& c = cells[i];
    results[i] = run_single(*c.ds, c.kind, c.eta0, c.seed);
  });

  std::vector<ExperimentRecord> flat;
  for (auto& group : results)
    for (auto& r : group) flat.push_back(std::move(r));
  return flat;
}

std::vector<SummaryRow> best_fixed_summary(std::span<const ExperimentRecord> records) {
  // (algorithm, metric) -> eta0 (or nullopt) -> keyed normalized losses.
  std::map<std::pair<std::string, std::string>, std::map<std::optional<double>, KeyedMean>>
      groups;
  for (const auto& r : records) {
    if (r.split != "test" || !r.normalized_loss.has_value()) continue;
    if (r.metric != "absolute" && r.metric != "zero_one") continue;
    groups[{r.algorithm, r.metric}][r.eta0].add(r.dataset, r.seed, *r.normalized_loss);
  }

  std::vector<SummaryRow> rows;
  for (auto& [key, by_eta] : groups) {
    SummaryRow best;
    bool first = true;
    for (auto& [eta, km] : by_eta) {
      const int n = km.count();
      const double mean = km.mean();
      if (first || mean < best.mean_normalized) {
        best = SummaryRow{key.first, key.second, eta, mean, n};
        first = false;
      }
    }
    rows.push_back(std::move(best));
  }
  return rows;
}

std::vector<SummaryRow> tuned_summary(std::span<const ExperimentRecord> records) {
  // Validation raw losses pick eta0 per (algorithm, metric, dataset, seed);
  // the matching test normalized loss is aggregated.
  using CellKey = std::tuple<std::string, std::string, std::string, std::uint64_t>;
  std::map<CellKey, std::map<std::optional<double>, double>> valid_raw;
  std::map<CellKey, std::map<std::optional<double>, std::optional<double>>> test_norm;

  for (const auto& r : records) {
    if (r.metric != "absolute" && r.metric != "zero_one") continue;
    const CellKey key{r.algorithm, r.metric, r.dataset, r.seed};
    if (r.split == "valid")
      valid_raw[key][r.eta0] = r.raw_loss;
    else if (r.split == "test")
      test_norm[key][r.eta0] = r.normalized_loss;
  }

  std::map<std::pair<std::string, std::string>, KeyedMean> groups;
  for (auto& [key, by_eta] : valid_raw) {
    // Smallest eta0 wins ties; std::map ordering makes that the first hit.
    std::optional<double> chosen;
    double best = 0.0;
    bool first = true;
    for (const auto& [eta, raw] : by_eta) {
      if (first || raw < best) {
        chosen = eta;
        best = raw;
        first = false;
      }
    }
    const auto test_it = test_norm.find(key);
    if (test_it == test_norm.end()) continue;
    const auto norm_it = test_it->second.find(chosen);
    if (norm_it == test_it->second.end() || !norm_it->second.has_value()) continue;
    groups[{std::get<0>(key), std::get<1>(key)}].add(std::get<2>(key), std::get<3>(key),
                                                     *norm_it->second);
  }

  std::vector<SummaryRow> rows;
  for (auto& [key, km] : groups) {
    SummaryRow row;
    row.algorithm = key.first;
    row.metric = key.second;
    row.cells = km.count();
    row.mean_normalized = km.mean();
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string synth_problem_name(const SynthConfig& config) {
  std::ostringstream os;
  if (config.task == Task::regression)
    os << "synth-reg-m" << config.m << "-d" << config.d << "-sigma" << config.sigma;
  else
    os << "synth-cls-m" << config.m << "-d" << config.d << "-margin" << config.margin
       << "-flip" << config.flip_frac;
  return os.str();
}

std::vector<SynthRecord> run_synth(const SynthConfig& config) {
  const std::string problem_name = synth_problem_name(config);

  // One problem per seed, shared read-only by every optimizer cell.
  std::vector<SyntheticProblem> problems(config.seeds.size());
  parallel_for(problems.size(), config.jobs, [&](std::size_t i) {
    const std::uint64_t seed = config.seeds[i];
    problems[i] = config.task == Task::regression
                      ? gen_regression(config.m, config.d, config.sigma, seed)
                      : gen_classification(config.m, config.d, config.margin,
                                           config.flip_frac, seed);
  });

  struct Cell {
    OptimizerKind kind;
    std::optional<double> eta0;
    std::size_t seed_index;
  };
  std::vector<Cell> cells;
  for (OptimizerKind kind : config.algos) {
    std::vector<std::optional<double>> etas;
    if (is_parameter_free(kind))
      etas.push_back(std::nullopt);
    else
      for (double e : config.grid) etas.push_back(e);
    for (const auto& eta : etas)
      for (std::size_t i = 0; i < config.seeds.size(); ++i) cells.push_back({kind, eta, i});
  }

  std::vector<SynthRecord> records(cells.size());
  parallel_for(cells.size(), config.jobs, [&](std::size_t i) {
    const Cell& c = cells[i];
    const SyntheticProblem& problem = problems[c.seed_index];
    const std::uint64_t seed = config.seeds[c.seed_index];

    OptimizerRun run = make_run(c.kind, config.d, c.eta0);
    OptimizerStepper stepper(run, training_loss(config.task));
    // Fixed derivation: every optimizer sees the same stream per seed.
    const std::uint64_t stream_seed = seed ^ 0x9e3779b97f4a7c15ULL;
    const GapResult gap =
        iterations_to_gap(stepper, problem, config.threshold, config.budget, stream_seed);

    SynthRecord r;
    r.problem = problem_name;
    r.task = config.task;
    r.algorithm = std::string(kind_name(c.kind));
    r.eta0 = c.eta0;
    r.seed = seed;
    r.reached = gap.reached;
    r.iterations = gap.iterations;
    r.budget = config.budget;
    r.sigma = config.sigma;
    r.flip_frac = config.flip_frac;
    r.threshold = config.threshold;
    records[i] = std::move(r);
  });
  return records;
}

std::vector<SynthCurvePoint> synth_curves(std::span<const SynthRecord> records) {
  std::map<std::pair<std::string, std::optional<double>>, SynthCurvePoint> points;
  std::map<std::pair<std::string, std::optional<double>>, std::vector<double>> iters;
  for (const auto& r : records) {
    const std::pair<std::string, std::optional<double>> key{r.algorithm, r.eta0};
    auto& p = points[key];
    p.algorithm = r.algorithm;
    p.eta0 = r.eta0;
    if (r.reached) ++p.reached;
    ++p.cells;
    iters[key].push_back(static_cast<double>(r.reached ? r.iterations : r.budget));
  }
  std::vector<SynthCurvePoint> out;
  for (auto& [key, p] : points) {
    auto& v = iters[key];
    std::sort(v.begin(), v.end());
    double sum = 0.0;
    for (double x : v) sum += x;
    p.mean_iterations = v.empty() ? 0.0 : sum / static_cast<double>(v.size());
    out.push_back(p);
  }
  return out;
}

}  // namespace pfopt
