#include "pfopt/data_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include "pfopt/errors.hpp"
#include "pfopt/rng.hpp"

namespace pfopt {

namespace {

constexpr double kHalfSqrt2 = 0.70710678118654752440;

[[noreturn]] void parse_fail(const std::string& name, std::size_t line_no,
                             const std::string& what) {
  std::ostringstream os;
  os << name << ":" << line_no << ": " << what;
  throw DataError(os.str());
}

double parse_double(const std::string& tok, const std::string& name, std::size_t line_no) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tok, &used);
  } catch (const std::exception&) {
    parse_fail(name, line_no, "not a number: '" + tok + "'");
  }
  if (used != tok.size()) parse_fail(name, line_no, "trailing garbage in '" + tok + "'");
  return v;
}

// {-1,+1} kept, {0,1} and {1,2} remapped with the smaller label to -1.
double remap_label(double y, const std::set<double>& labels, const std::string& name) {
  auto subset_of = [&](std::initializer_list<double> allowed) {
    return std::all_of(labels.begin(), labels.end(), [&](double v) {
      return std::find(allowed.begin(), allowed.end(), v) != allowed.end();
    });
  };
  if (subset_of({-1.0, 1.0})) return y;
  if (subset_of({0.0, 1.0})) return y == 0.0 ? -1.0 : 1.0;
  if (subset_of({1.0, 2.0})) return y == 1.0 ? -1.0 : 1.0;
  std::ostringstream os;
  os << name << ": unmappable classification labels:";
  for (double v : labels) os << " " << v;
  throw DataError(os.str());
}

}  // namespace

Dataset parse_libsvm(std::istream& in, Task task, std::string name) {
  Dataset ds;
  ds.task = task;
  ds.name = std::move(name);

  std::string line;
  std::size_t line_no = 0;
  std::set<double> labels;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank or comment-only line

    Sample s;
    s.target = parse_double(tok, ds.name, line_no);
    int prev_idx = 0;
    while (ls >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos || colon == 0 || colon + 1 == tok.size())
        parse_fail(ds.name, line_no, "expected idx:val, got '" + tok + "'");
      int idx = 0;
      try {
        std::size_t used = 0;
        idx = std::stoi(tok.substr(0, colon), &used);
        if (used != colon) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        parse_fail(ds.name, line_no, "bad feature index in '" + tok + "'");
      }
      if (idx < 1) parse_fail(ds.name, line_no, "feature index must be >= 1");
      if (idx <= prev_idx) parse_fail(ds.name, line_no, "feature indices not increasing");
      const double val = parse_double(tok.substr(colon + 1), ds.name, line_no);
      s.features.emplace_back(idx, val);
      prev_idx = idx;
    }
    ds.dim = std::max(ds.dim, prev_idx);
    if (task == Task::classification) labels.insert(s.target);
    ds.samples.push_back(std::move(s));
  }

  if (task == Task::classification && !labels.empty())
    for (Sample& s : ds.samples) s.target = remap_label(s.target, labels, ds.name);
  return ds;
}

Dataset parse_libsvm_file(const std::string& path, Task task, std::string name) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open dataset file: " + path);
  return parse_libsvm(in, task, std::move(name));
}

void write_libsvm(const Dataset& ds, std::ostream& out) {
  char buf[64];
  for (const Sample& s : ds.samples) {
    std::snprintf(buf, sizeof(buf), "%.17g", s.target);
    out << buf;
    for (const auto& [idx, val] : s.features) {
      std::snprintf(buf, sizeof(buf), "%.17g", val);
      out << ' ' << idx << ':' << buf;
    }
    out << '\n';
  }
}

Dataset normalize_augment(Dataset ds) {
  const int bias_idx = ds.dim + 1;
  for (Sample& s : ds.samples) {
    double nsq = 0.0;
    for (const auto& [idx, val] : s.features) nsq += val * val;
    if (nsq > 0.0) {
      const double scale = kHalfSqrt2 / std::sqrt(nsq);
      for (auto& [idx, val] : s.features) val *= scale;
    }
    s.features.emplace_back(bias_idx, kHalfSqrt2);
  }
  ds.dim = bias_idx;
  return ds;
}

Split split(const Dataset& ds, const SplitSpec& spec) {
  const std::size_t n = ds.samples.size();
  if (n < 3) throw DataError("split: dataset needs at least 3 samples");

  // The tiny bump keeps floor() exact where frac*n is an exact integer
  // (0.70 * 10 evaluates just below 7 in binary).
  const auto count = [n](double frac) {
    return static_cast<std::size_t>(std::floor(frac * static_cast<double>(n) + 1e-9));
  };
  const std::size_t n_train = count(spec.train_frac);
  const std::size_t n_valid = count(spec.valid_frac);

  Rng rng(spec.seed);
  const std::vector<std::size_t> perm = rng.permutation(n);

  Split out;
  for (std::size_t i = 0; i < n; ++i) {
    const Sample& s = ds.samples[perm[i]];
    if (i < n_train)
      out.train.push_back(s);
    else if (i < n_train + n_valid)
      out.valid.push_back(s);
    else
      out.test.push_back(s);
  }
  return out;
}

std::vector<ManifestEntry> load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open manifest: " + path);

  std::string dir;
  if (const auto slash = path.find_last_of('/'); slash != std::string::npos)
    dir = path.substr(0, slash + 1);

  std::vector<ManifestEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    ManifestEntry e;
    std::string task;
    if (!(ls >> e.name)) continue;
    if (!(ls >> e.path >> task)) parse_fail(path, line_no, "expected: name path task");
    if (task == "reg")
      e.task = Task::regression;
    else if (task == "cls")
      e.task = Task::classification;
    else
      parse_fail(path, line_no, "task must be 'reg' or 'cls', got '" + task + "'");
    if (!e.path.empty() && e.path.front() != '/') e.path = dir + e.path;
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace pfopt
