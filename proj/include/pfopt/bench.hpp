#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pfopt/data_io.hpp"
#include "pfopt/optimizers.hpp"
#include "pfopt/synthetic.hpp"

namespace pfopt {

/// 10^{-2.5}, 10^{-2.0}, ..., 10^{5.0}: 16 values.
std::vector<double> default_eta_grid();

/// One (dataset x algorithm x eta0 x seed x split) result row.
struct ExperimentRecord {
  std::string dataset;
  std::string algorithm;
  std::optional<double> eta0;  // blank in CSV for parameter-free optimizers
  std::uint64_t seed = 0;
  std::string split;   // "valid" or "test"
  std::string metric;  // "absolute"/"zero_one", plus "_avg" for the averaged iterate
  double raw_loss = 0.0;
  std::optional<double> normalized_loss;  // absent when the normalizer degenerates
  std::int64_t steps = 0;
  double wall_ms = 0.0;
};

inline constexpr const char* kRecordCsvHeader =
    "dataset,algorithm,eta0,seed,split,metric,raw_loss,normalized_loss,steps,wall_ms";

std::string to_csv(const ExperimentRecord& r);
ExperimentRecord record_from_csv(const std::string& line);
void write_records_csv(std::ostream& out, std::span<const ExperimentRecord> records);
std::vector<ExperimentRecord> read_records_csv(std::istream& in);

/// One synthetic gap measurement.
struct SynthRecord {
  std::string problem;
  Task task = Task::regression;
  std::string algorithm;
  std::optional<double> eta0;
  std::uint64_t seed = 0;
  bool reached = false;
  std::int64_t iterations = 0;  // budget when not reached
  std::int64_t budget = 0;
  double sigma = 0.0;
  double flip_frac = 0.0;
  double threshold = 0.0;
};

inline constexpr const char* kSynthCsvHeader =
    "problem,task,algorithm,eta0,seed,reached,iterations,budget,sigma,flip,threshold";

std::string to_csv(const SynthRecord& r);
SynthRecord synth_record_from_csv(const std::string& line);
void write_synth_csv(std::ostream& out, std::span<const SynthRecord> records);
std::vector<SynthRecord> read_synth_csv(std::istream& in);

/// Normalization + bias augmentation; datasets handed to run_single must have
/// gone through this exactly once.
Dataset prepare(Dataset raw);

/// One training cell: seeded 70/15/15 split, a single pass over the shuffled
/// training split, evaluation on the validation and test splits with the
/// final iterate (and the averaged iterate, reported under metric "_avg"),
/// normalized by the best constant predictor fitted on the training split.
std::vector<ExperimentRecord> run_single(const Dataset& prepared, OptimizerKind kind,
                                         std::optional<double> eta0, std::uint64_t seed);

struct SweepConfig {
  std::vector<Dataset> datasets;  // prepared
  std::vector<OptimizerKind> algos;
  std::vector<double> grid;  // eta0 candidates for the tuned optimizers
  std::vector<std::uint64_t> seeds{0, 1, 2};
  unsigned jobs = 0;  // 0: hardware concurrency
};

/// Runs every (dataset x algorithm x eta0 x seed) cell; cells execute in
/// parallel, output order is deterministic.
std::vector<ExperimentRecord> run_sweep(const SweepConfig& config);

/// Aggregate rows for the summary tables; one per (algorithm, metric).
struct SummaryRow {
  std::string algorithm;
  std::string metric;
  std::optional<double> eta0;  // best-fixed choice; absent for parameter-free
  double mean_normalized = 0.0;
  int cells = 0;  // (dataset x seed) cells aggregated
};

/// Single learning rate per algorithm, chosen to minimize the mean
/// normalized test loss across all datasets and repetitions.
std::vector<SummaryRow> best_fixed_summary(std::span<const ExperimentRecord> records);

/// Per-dataset tuning: the validation split picks eta0 per (dataset, seed),
/// the matching test loss is reported.
std::vector<SummaryRow> tuned_summary(std::span<const ExperimentRecord> records);

struct SynthConfig {
  Task task = Task::regression;
  std::size_t m = 1000;
  std::size_t d = 40;
  double sigma = 0.0;       // regression noise scale
  double margin = 0.05;     // classification margin
  double flip_frac = 0.0;   // classification label flips
  double threshold = 0.05;  // suboptimality gap
  std::int64_t budget = 100000;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<OptimizerKind> algos;
  std::vector<double> grid;
  unsigned jobs = 0;
};

std::string synth_problem_name(const SynthConfig& config);

/// Gap measurements for every (algorithm x eta0 x seed); parameter-free
/// optimizers run once per seed. All optimizers see the same seeded sample
/// stream for a given problem seed.
std::vector<SynthRecord> run_synth(const SynthConfig& config);

struct SynthCurvePoint {
  std::string algorithm;
  std::optional<double> eta0;
  double mean_iterations = 0.0;  // not-reached counted as the budget
  int reached = 0;
  int cells = 0;
};

std::vector<SynthCurvePoint> synth_curves(std::span<const SynthRecord> records);

// report.cpp ----------------------------------------------------------------

std::string render_summary_tables(std::span<const ExperimentRecord> records);
std::string render_synth_table(std::span<const SynthRecord> records);

/// Writes tables.txt plus SVG plots (normalized-loss scatter against code,
/// iterations-vs-eta0 curves) into out_dir.
void write_report(const std::string& out_dir, std::span<const ExperimentRecord> records,
                  std::span<const SynthRecord> synth_records);

}  // namespace pfopt
