#include "driftreg/results.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "json.hpp"

#include "driftreg/error.hpp"
#include "driftreg/stream_io.hpp"
#include "driftreg/svg_plot.hpp"

#ifndef DRIFTREG_VERSION
#define DRIFTREG_VERSION "unknown"
#endif

namespace driftreg {
namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open " + path.string() + " for writing");
  return out;
}

void check_written(const std::ofstream& out, const std::filesystem::path& path) {
  if (!out) throw DataError("write failed: " + path.string());
}

}  // namespace

std::string version_string() { return DRIFTREG_VERSION; }

void write_loss_csv(std::ostream& out, const std::vector<double>& loss, const std::vector<double>& cumloss) {
  if (loss.size() != cumloss.size()) throw InvalidArgument("write_loss_csv: loss and cumloss lengths differ");
  out << "t,loss,cumloss\n";
  for (std::size_t t = 0; t < loss.size(); ++t)
    out << (t + 1) << ',' << format_double(loss[t]) << ',' << format_double(cumloss[t]) << '\n';
}

void write_loss_csv(const std::filesystem::path& path, const std::vector<double>& loss,
                    const std::vector<double>& cumloss) {
  auto out = open_out(path);
  write_loss_csv(out, loss, cumloss);
  check_written(out, path);
}

void write_loss_csv(const std::filesystem::path& path, const Trajectory& traj) {
  std::vector<double> loss;
  loss.reserve(traj.size());
  for (const auto& s : traj.steps) loss.push_back(s.loss);
  write_loss_csv(path, loss, traj.cumloss);
}

LossCurve read_loss_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != "t,loss,cumloss") throw DataError(path.string() + ":1: bad header");
  LossCurve c;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto a = line.find(',');
    const auto b = line.find(',', a == std::string::npos ? a : a + 1);
    double t = 0, l = 0, cl = 0;
    const std::string_view v = line;
    if (a == std::string::npos || b == std::string::npos || !parse_double(v.substr(0, a), t) ||
        !parse_double(v.substr(a + 1, b - a - 1), l) || !parse_double(v.substr(b + 1), cl))
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": malformed row");
    c.loss.push_back(l);
    c.cumloss.push_back(cl);
  }
  return c;
}

EmittedFiles emit_results(const CompareResult& result, const ExperimentConfig& config,
                          const std::filesystem::path& dir, bool plot) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw DataError("cannot create " + dir.string() + ": " + ec.message());

  EmittedFiles files;
  for (std::size_t k = 0; k < result.algorithms.size(); ++k) {
    const auto& a = result.algorithms[k];
    char prefix[16];
    std::snprintf(prefix, sizeof prefix, "%02zu_", k + 1);
    const auto path = dir / (std::string(prefix) + std::string(algorithm_name(a.config.algorithm)) + ".csv");
    write_loss_csv(path, a.result.mean_loss, a.result.mean_cumloss);
    files.curves.push_back(path);
  }

  files.summary = dir / "summary.csv";
  {
    auto out = open_out(files.summary);
    out << "algorithm,label,final_cumloss_mean,final_cumloss_std,replications\n";
    for (const auto& a : result.algorithms) {
      const auto& reps = a.result.replicas;
      double mean = 0.0;
      for (const auto& r : reps) mean += r.final_loss;
      mean /= static_cast<double>(reps.size());
      double var = 0.0;
      for (const auto& r : reps) var += (r.final_loss - mean) * (r.final_loss - mean);
      const double sd = reps.size() > 1 ? std::sqrt(var / static_cast<double>(reps.size() - 1)) : 0.0;
      out << algorithm_name(a.config.algorithm) << ",\"" << a.config.label() << "\"," << format_double(mean) << ','
          << format_double(sd) << ',' << reps.size() << '\n';
    }
    check_written(out, files.summary);
  }

  files.metadata = dir / "metadata.json";
  {
    nlohmann::ordered_json m;
    m["version"] = version_string();
    m["config"] = to_json(config);
    m["replica_seeds"] = result.seeds;
    if (result.tuning_seed) m["tuning_seed"] = *result.tuning_seed;
    bool unit_ball = true;
    nlohmann::ordered_json algs = nlohmann::ordered_json::array();
    for (const auto& a : result.algorithms) {
      nlohmann::ordered_json aj;
      aj["label"] = a.config.label();
      aj["learner"] = to_json(a.config);
      if (a.tuning) {
        aj["tuning_score"] = a.tuning->best_score;
        aj["grid_points"] = a.tuning->scores.size();
      }
      aj["final_cumloss_mean"] = a.result.final_mean();
      std::size_t resets = 0;
      for (const auto& r : a.result.replicas) {
        resets += r.resets;
        unit_ball = unit_ball && r.x_bound <= 1.0;
      }
      aj["total_resets"] = resets;
      algs.push_back(aj);
    }
    m["algorithms"] = algs;
    m["inputs_within_unit_ball"] = unit_ball;
    auto out = open_out(files.metadata);
    out << m.dump(2) << '\n';
    check_written(out, files.metadata);
  }

  if (plot) {
    std::vector<PlotSeries> series;
    for (const auto& a : result.algorithms) series.push_back(PlotSeries{a.config.label(), a.result.mean_cumloss});
    PlotOptions opt;
    opt.title = "Mean cumulative squared loss (" + std::to_string(config.replications) + " replicas)";
    opt.log_y = config.log_scale;
    files.plot = dir / "cumloss.svg";
    auto out = open_out(files.plot);
    out << render_line_plot(series, opt);
    check_written(out, files.plot);
  }
  return files;
}

}  // namespace driftreg
