#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "pfopt/bench.hpp"
#include "pfopt/errors.hpp"

namespace pfopt {

namespace {

std::string fmt(double v, const char* spec = "%.4f") {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string eta_label(const std::optional<double>& eta) {
  if (!eta.has_value()) return "-";
  return fmt(std::log10(*eta), "10^%.1f");
}

void append_table(std::ostringstream& os, const std::string& title,
                  const std::vector<SummaryRow>& rows, bool show_eta) {
  os << title << "\n";
  for (const std::string metric : {"absolute", "zero_one"}) {
    std::vector<SummaryRow> sel;
    for (const auto& r : rows)
      if (r.metric == metric) sel.push_back(r);
    if (sel.empty()) continue;
    std::sort(sel.begin(), sel.end(),
              [](const SummaryRow& a, const SummaryRow& b) { return a.algorithm < b.algorithm; });
    os << "  mean normalized " << (metric == std::string("absolute") ? "absolute" : "0-1")
       << " loss\n";
    char line[160];
    if (show_eta) {
      std::snprintf(line, sizeof(line), "  %-10s %-10s %-12s %s\n", "algorithm", "eta0",
                    "mean", "cells");
      os << line;
      for (const auto& r : sel) {
        std::snprintf(line, sizeof(line), "  %-10s %-10s %-12s %d\n", r.algorithm.c_str(),
                      eta_label(r.eta0).c_str(), fmt(r.mean_normalized).c_str(), r.cells);
        os << line;
      }
    } else {
      std::snprintf(line, sizeof(line), "  %-10s %-12s %s\n", "algorithm", "mean", "cells");
      os << line;
      for (const auto& r : sel) {
        std::snprintf(line, sizeof(line), "  %-10s %-12s %d\n", r.algorithm.c_str(),
                      fmt(r.mean_normalized).c_str(), r.cells);
        os << line;
      }
    }
  }
  os << "\n";
}

// Minimal SVG canvas: lines, circles, text.
class Svg {
 public:
  Svg(int width, int height) : width_(width), height_(height) {}

  void line(double x1, double y1, double x2, double y2, const std::string& color,
            double width = 1.0) {
    body_ << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
          << "\" stroke=\"" << color << "\" stroke-width=\"" << width << "\"/>\n";
  }
  void circle(double x, double y, double r, const std::string& color) {
    body_ << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"" << r << "\" fill=\"" << color
          << "\"/>\n";
  }
  void text(double x, double y, const std::string& s, int size = 11,
            const std::string& anchor = "start") {
    body_ << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"" << size
          << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\">" << s
          << "</text>\n";
  }
  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& color) {
    body_ << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : pts) body_ << x << "," << y << " ";
    body_ << "\"/>\n";
  }
  std::string str() const {
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width_ << "\" height=\""
       << height_ << "\" viewBox=\"0 0 " << width_ << " " << height_ << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << body_.str() << "</svg>\n";
    return os.str();
  }

 private:
  int width_;
  int height_;
  std::ostringstream body_;
};

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};

// Scatter of per-dataset normalized-loss differences (baseline - code) at the
// best fixed rate of each baseline; points above zero favor code.
std::string scatter_svg(std::span<const ExperimentRecord> records, const std::string& metric) {
  const auto best = best_fixed_summary(records);
  std::map<std::string, std::optional<double>> chosen_eta;
  for (const auto& row : best)
    if (row.metric == metric) chosen_eta[row.algorithm] = row.eta0;
  if (!chosen_eta.count("code")) return {};

  // (algorithm, dataset) -> mean normalized loss over seeds at the chosen eta.
  std::map<std::pair<std::string, std::string>, std::pair<double, int>> acc;
  for (const auto& r : records) {
    if (r.split != "test" || r.metric != metric || !r.normalized_loss.has_value()) continue;
    const auto it = chosen_eta.find(r.algorithm);
    if (it == chosen_eta.end() || it->second != r.eta0) continue;
    auto& slot = acc[{r.algorithm, r.dataset}];
    slot.first += *r.normalized_loss;
    slot.second += 1;
  }
  std::map<std::string, std::map<std::string, double>> by_algo;  // algo -> dataset -> mean
  for (const auto& [key, sum_n] : acc)
    by_algo[key.first][key.second] = sum_n.first / sum_n.second;

  const auto code_it = by_algo.find("code");
  if (code_it == by_algo.end()) return {};

  std::vector<std::string> algos;
  std::vector<std::tuple<int, double>> points;  // algo index, difference
  double max_abs = 0.1;
  for (const auto& [algo, by_ds] : by_algo) {
    if (algo == "code") continue;
    const int idx = static_cast<int>(algos.size());
    algos.push_back(algo);
    for (const auto& [ds, v] : by_ds) {
      const auto cv = code_it->second.find(ds);
      if (cv == code_it->second.end()) continue;
      const double diff = v - cv->second;
      points.emplace_back(idx, diff);
      max_abs = std::max(max_abs, std::abs(diff));
    }
  }
  if (algos.empty()) return {};

  const int W = 640, H = 420, L = 60, R = 20, T = 30, B = 50;
  Svg svg(W, H);
  const double plot_w = W - L - R, plot_h = H - T - B;
  const auto xpos = [&](int i) {
    return L + plot_w * (i + 0.5) / static_cast<double>(algos.size());
  };
  const auto ypos = [&](double v) { return T + plot_h * (0.5 - v / (2.2 * max_abs)); };

  svg.line(L, ypos(0.0), W - R, ypos(0.0), "#888888");
  svg.line(L, T, L, H - B, "#000000");
  for (double v : {-max_abs, -max_abs / 2, 0.0, max_abs / 2, max_abs}) {
    svg.line(L - 4, ypos(v), L, ypos(v), "#000000");
    svg.text(L - 8, ypos(v) + 4, fmt(v, "%.3f"), 10, "end");
  }
  for (std::size_t i = 0; i < algos.size(); ++i)
    svg.text(xpos(static_cast<int>(i)), H - B + 18, algos[i], 11, "middle");
  for (const auto& [idx, diff] : points)
    svg.circle(xpos(idx), ypos(diff), 3.5, kPalette[idx % 8]);
  svg.text(L, 18, "normalized " + metric + " loss difference vs code (above 0: code wins)", 12);
  return svg.str();
}

// Iterations-to-gap versus eta0, log-log; parameter-free rows as horizontal
// lines across the grid span.
std::string curves_svg(std::span<const SynthRecord> records) {
  const auto curves = synth_curves(records);
  if (curves.empty()) return {};

  double min_e = 0.0, max_e = 0.0;
  bool has_grid = false;
  double max_iter = 10.0;
  for (const auto& p : curves) {
    if (p.eta0.has_value()) {
      const double e = std::log10(*p.eta0);
      if (!has_grid) {
        min_e = max_e = e;
        has_grid = true;
      }
      min_e = std::min(min_e, e);
      max_e = std::max(max_e, e);
    }
    max_iter = std::max(max_iter, p.mean_iterations);
  }
  if (!has_grid) {
    min_e = -2.5;
    max_e = 5.0;
  }
  const double max_ly = std::log10(max_iter) + 0.2;

  const int W = 640, H = 420, L = 60, R = 150, T = 30, B = 50;
  Svg svg(W, H);
  const double plot_w = W - L - R, plot_h = H - T - B;
  const auto xpos = [&](double le) { return L + plot_w * (le - min_e) / (max_e - min_e); };
  const auto ypos = [&](double it) {
    return T + plot_h * (1.0 - std::log10(std::max(1.0, it)) / max_ly);
  };

  svg.line(L, H - B, W - R, H - B, "#000000");
  svg.line(L, T, L, H - B, "#000000");
  for (int e = static_cast<int>(std::ceil(min_e)); e <= static_cast<int>(std::floor(max_e));
       ++e) {
    svg.line(xpos(e), H - B, xpos(e), H - B + 4, "#000000");
    svg.text(xpos(e), H - B + 18, "1e" + std::to_string(e), 10, "middle");
  }
  for (int p = 0; p <= static_cast<int>(max_ly); ++p) {
    svg.line(L - 4, ypos(std::pow(10.0, p)), L, ypos(std::pow(10.0, p)), "#000000");
    svg.text(L - 8, ypos(std::pow(10.0, p)) + 4, "1e" + std::to_string(p), 10, "end");
  }

  std::map<std::string, std::vector<SynthCurvePoint>> by_algo;
  for (const auto& p : curves) by_algo[p.algorithm].push_back(p);

  int color = 0, legend_y = T + 10;
  for (auto& [algo, pts] : by_algo) {
    const std::string col = kPalette[color++ % 8];
    std::sort(pts.begin(), pts.end(), [](const SynthCurvePoint& a, const SynthCurvePoint& b) {
      return a.eta0.value_or(0.0) < b.eta0.value_or(0.0);
    });
    std::vector<std::pair<double, double>> line;
    for (const auto& p : pts) {
      if (p.eta0.has_value())
        line.emplace_back(xpos(std::log10(*p.eta0)), ypos(p.mean_iterations));
      else
        line = {{xpos(min_e), ypos(p.mean_iterations)}, {xpos(max_e), ypos(p.mean_iterations)}};
    }
    svg.polyline(line, col);
    svg.circle(W - R + 12, legend_y - 4, 4, col);
    svg.text(W - R + 22, legend_y, algo, 11);
    legend_y += 16;
  }
  svg.text(L, 18, "mean iterations to reach the gap threshold vs eta0", 12);
  return svg.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write: " + path.string());
  out << content;
}

}  // namespace

std::string render_summary_tables(std::span<const ExperimentRecord> records) {
  std::ostringstream os;
  append_table(os, "Best fixed learning rates (test split)", best_fixed_summary(records), true);
  append_table(os, "One learning rate per dataset (validation-tuned, test split)",
               tuned_summary(records), false);
  return os.str();
}

std::string render_synth_table(std::span<const SynthRecord> records) {
  std::ostringstream os;
  std::set<std::string> problems;
  for (const auto& r : records) problems.insert(r.problem);
  for (const auto& problem : problems) {
    std::vector<SynthRecord> sel;
    for (const auto& r : records)
      if (r.problem == problem) sel.push_back(r);
    os << problem << "\n";
    char line[160];
    std::snprintf(line, sizeof(line), "  %-10s %-10s %-14s %s\n", "algorithm", "eta0",
                  "mean iters", "reached");
    os << line;
    auto curves = synth_curves(sel);
    std::sort(curves.begin(), curves.end(),
              [](const SynthCurvePoint& a, const SynthCurvePoint& b) {
                if (a.algorithm != b.algorithm) return a.algorithm < b.algorithm;
                return a.eta0.value_or(-1.0) < b.eta0.value_or(-1.0);
              });
    for (const auto& p : curves) {
      std::snprintf(line, sizeof(line), "  %-10s %-10s %-14.1f %d/%d\n", p.algorithm.c_str(),
                    eta_label(p.eta0).c_str(), p.mean_iterations, p.reached, p.cells);
      os << line;
    }
    os << "\n";
  }
  return os.str();
}

void write_report(const std::string& out_dir, std::span<const ExperimentRecord> records,
                  std::span<const SynthRecord> synth_records) {
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);

  std::ostringstream tables;
  if (!records.empty()) tables << render_summary_tables(records);
  if (!synth_records.empty()) tables << render_synth_table(synth_records);
  write_file(dir / "tables.txt", tables.str());

  for (const std::string metric : {"absolute", "zero_one"}) {
    const std::string svg = scatter_svg(records, metric);
    if (!svg.empty()) write_file(dir / ("scatter_vs_code_" + metric + ".svg"), svg);
  }

  std::set<std::string> problems;
  for (const auto& r : synth_records) problems.insert(r.problem);
  for (const auto& problem : problems) {
    std::vector<SynthRecord> sel;
    for (const auto& r : synth_records)
      if (r.problem == problem) sel.push_back(r);
    const std::string svg = curves_svg(sel);
    if (!svg.empty()) write_file(dir / ("curves_" + problem + ".svg"), svg);
  }
}

}  // namespace pfopt
