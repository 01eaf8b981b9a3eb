// Benchmark harness for the parameter-free optimizers: single cells, grid
// sweeps over a dataset manifest, synthetic gap curves, and CSV reporting.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pfopt/bench.hpp"
#include "pfopt/errors.hpp"

namespace {

using namespace pfopt;

std::vector<std::uint64_t> parse_seed_list(const std::string& s) {
  std::vector<std::uint64_t> seeds;
  std::istringstream is(s);
  std::string tok;
  while (std::getline(is, tok, ',')) {
    if (tok.empty()) continue;
    seeds.push_back(std::stoull(tok));
  }
  if (seeds.empty()) throw std::invalid_argument("--seeds: empty list");
  return seeds;
}

OptimizerKind parse_algo(const std::string& name) {
  const auto kind = kind_from_name(name);
  if (!kind) throw std::invalid_argument("unknown algorithm: " + name);
  return *kind;
}

std::vector<OptimizerKind> parse_algo_list(const std::vector<std::string>& names) {
  if (names.empty())
    return {OptimizerKind::sgd,     OptimizerKind::iwa,  OptimizerKind::aprox,
            OptimizerKind::adagrad, OptimizerKind::adam, OptimizerKind::coin_kt,
            OptimizerKind::coin2,   OptimizerKind::code};
  std::vector<OptimizerKind> kinds;
  for (const auto& n : names) kinds.push_back(parse_algo(n));
  return kinds;
}

std::vector<double> resolve_grid(const std::string& grid_mode, bool has_eta0, double eta0) {
  if (has_eta0) return {eta0};
  if (grid_mode == "default") return default_eta_grid();
  if (grid_mode == "none") return {};
  throw std::invalid_argument("--grid must be 'default' or 'none'");
}

Dataset load_entry(const ManifestEntry& entry) {
  return prepare(parse_libsvm_file(entry.path, entry.task, entry.name));
}

void write_text(const std::string& path, const std::string& content) {
  if (path == "-") {
    std::cout << content;
    return;
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot write: " + path);
  out << content;
}

int run_main(int argc, char** argv) {
  CLI::App app{"benchmark harness for parameter-free stochastic optimizers"};
  app.require_subcommand(1);

  std::string manifest = "data/manifest.txt";
  std::string out = "-";
  std::string algo;
  std::vector<std::string> algos;
  std::vector<std::string> data_names;
  std::string grid_mode = "default";
  std::string seeds_list;
  std::string task_s = "reg";
  double eta0 = 0.0;
  std::uint64_t seed = 0;
  double sigma = 0.0, flip = 0.0, margin = 0.05, threshold = 0.05;
  std::int64_t budget = 100000;
  std::size_t m = 1000, d = 40;
  unsigned jobs = 0;

  auto* run_cmd = app.add_subcommand("run", "run one (dataset, algorithm, eta0, seed) cell");
  run_cmd->add_option("--manifest", manifest, "dataset registry file");
  std::string data_name;
  run_cmd->add_option("--data", data_name, "manifest entry name")->required();
  run_cmd->add_option("--algo", algo, "optimizer")->required();
  auto* run_eta = run_cmd->add_option("--eta0", eta0, "initial step size (tuned optimizers)");
  run_cmd->add_option("--seed", seed, "split/permutation seed");
  run_cmd->add_option("--out", out, "records CSV path, '-' for stdout");

  auto* sweep_cmd = app.add_subcommand("sweep", "grid sweep over manifest datasets");
  sweep_cmd->add_option("--manifest", manifest, "dataset registry file");
  sweep_cmd->add_option("--data", data_names, "manifest entries (default: all)");
  sweep_cmd->add_option("--algo", algos, "optimizers (default: all)");
  sweep_cmd->add_option("--grid", grid_mode, "eta0 grid: 'default' or 'none'");
  auto* sweep_eta = sweep_cmd->add_option("--eta0", eta0, "single eta0 instead of the grid");
  sweep_cmd->add_option("--seeds", seeds_list, "comma-separated seeds (default 0,1,2)");
  sweep_cmd->add_option("--jobs", jobs, "worker threads (default: hardware)");
  sweep_cmd->add_option("--out", out, "records CSV path, '-' for stdout");

  auto* synth_cmd = app.add_subcommand("synth", "synthetic iterations-to-gap curves");
  synth_cmd->add_option("--task", task_s, "reg or cls")
      ->check(CLI::IsMember({"reg", "cls"}));
  synth_cmd->add_option("--algo", algos, "optimizers (default: all)");
  synth_cmd->add_option("--grid", grid_mode, "eta0 grid: 'default' or 'none'");
  auto* synth_eta = synth_cmd->add_option("--eta0", eta0, "single eta0 instead of the grid");
  synth_cmd->add_option("--sigma", sigma, "regression noise scale");
  synth_cmd->add_option("--flip", flip, "classification label flip fraction");
  synth_cmd->add_option("--margin", margin, "classification margin");
  synth_cmd->add_option("--budget", budget, "step budget per run");
  synth_cmd->add_option("--threshold", threshold, "suboptimality gap threshold");
  synth_cmd->add_option("--m", m, "samples");
  synth_cmd->add_option("--d", d, "dimensions");
  synth_cmd->add_option("--seeds", seeds_list, "comma-separated seeds (default 0..9)");
  synth_cmd->add_option("--jobs", jobs, "worker threads (default: hardware)");
  synth_cmd->add_option("--out", out, "synthetic CSV path, '-' for stdout");

  auto* report_cmd = app.add_subcommand("report", "summaries and SVG plots from CSV files");
  std::vector<std::string> csv_paths;
  report_cmd->add_option("csv", csv_paths, "input CSV files")->required();
  std::string report_dir = "report";
  report_cmd->add_option("--out", report_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (*run_cmd) {
    const auto entries = load_manifest(manifest);
    const ManifestEntry* entry = nullptr;
    for (const auto& e : entries)
      if (e.name == data_name) entry = &e;
    if (!entry) throw DataError("dataset not in manifest: " + data_name);
    const Dataset ds = load_entry(*entry);
    const std::optional<double> eta =
        run_eta->count() ? std::optional<double>(eta0) : std::nullopt;
    const auto records = run_single(ds, parse_algo(algo), eta, seed);
    std::ostringstream os;
    write_records_csv(os, records);
    write_text(out, os.str());
  } else if (*sweep_cmd) {
    SweepConfig config;
    auto entries = load_manifest(manifest);
    if (!data_names.empty()) {
      std::vector<ManifestEntry> chosen;
      for (const auto& name : data_names) {
        bool found = false;
        for (const auto& e : entries)
          if (e.name == name) {
            chosen.push_back(e);
            found = true;
          }
        if (!found) throw DataError("dataset not in manifest: " + name);
      }
      entries = std::move(chosen);
    }
    for (const auto& e : entries) config.datasets.push_back(load_entry(e));
    config.algos = parse_algo_list(algos);
    config.grid = resolve_grid(grid_mode, sweep_eta->count() > 0, eta0);
    if (!seeds_list.empty()) config.seeds = parse_seed_list(seeds_list);
    config.jobs = jobs;
    const auto records = run_sweep(config);
    std::ostringstream os;
    write_records_csv(os, records);
    write_text(out, os.str());
    if (out != "-") std::cout << render_summary_tables(records);
  } else if (*synth_cmd) {
    SynthConfig config;
    config.task = task_s == "reg" ? Task::regression : Task::classification;
    config.m = m;
    config.d = d;
    config.sigma = sigma;
    config.margin = margin;
    config.flip_frac = flip;
    config.threshold = threshold;
    config.budget = budget;
    config.algos = parse_algo_list(algos);
    config.grid = resolve_grid(grid_mode, synth_eta->count() > 0, eta0);
    if (!seeds_list.empty()) config.seeds = parse_seed_list(seeds_list);
    config.jobs = jobs;
    const auto records = run_synth(config);
    std::ostringstream os;
    write_synth_csv(os, records);
    write_text(out, os.str());
    if (out != "-") std::cout << render_synth_table(records);
  } else if (*report_cmd) {
    std::vector<ExperimentRecord> records;
    std::vector<SynthRecord> synth_records;
    for (const auto& path : csv_paths) {
      std::ifstream in(path);
      if (!in) throw DataError("cannot open csv: " + path);
      std::string header;
      if (!std::getline(in, header)) throw DataError("empty csv: " + path);
      if (!header.empty() && header.back() == '\r') header.pop_back();
      in.seekg(0);
      if (header == kRecordCsvHeader) {
        for (auto& r : read_records_csv(in)) records.push_back(std::move(r));
      } else if (header == kSynthCsvHeader) {
        for (auto& r : read_synth_csv(in)) synth_records.push_back(std::move(r));
      } else {
        throw DataError("unrecognized csv header in " + path);
      }
    }
    write_report(report_dir, records, synth_records);
    if (!records.empty()) std::cout << render_summary_tables(records);
    if (!synth_records.empty()) std::cout << render_synth_table(synth_records);
    std::cout << "report written to " << report_dir << "/\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_main(argc, argv);
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return 2;
  } catch (const NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
