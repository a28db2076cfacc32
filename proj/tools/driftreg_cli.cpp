// driftreg command line: gen, run, tune, compare.
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "driftreg/error.hpp"
#include "driftreg/experiment_config.hpp"
#include "driftreg/harness.hpp"
#include "driftreg/results.hpp"
#include "driftreg/simd/kernels.hpp"
#include "driftreg/stream_io.hpp"

namespace fs = std::filesystem;
using namespace driftreg;

namespace {

enum Exit { ok = 0, usage = 1, data = 2, numerical = 3 };

DatasetSpec dataset_from(const std::string& data_file, const std::string& gen_spec) {
  if (!data_file.empty() && !gen_spec.empty()) throw InvalidArgument("give either --data or --gen, not both");
  if (!data_file.empty()) {
    DatasetSpec d;
    d.kind = DatasetKind::csv;
    d.csv_path = data_file;
    return d;
  }
  if (gen_spec.empty()) throw InvalidArgument("one of --data or --gen is required");
  return parse_dataset_spec(gen_spec);
}

void print_summary(const CompareResult& r) {
  for (const auto& a : r.algorithms)
    std::printf("%-40s final mean cumulative loss %.6g\n", a.config.label().c_str(), a.result.final_mean());
}

int cmd_gen(const std::string& kind, const std::string& params, const std::string& out, std::uint64_t seed,
            const std::string& comparator_out) {
  const DatasetSpec spec = parse_dataset_spec(params.empty() ? kind : kind + ":" + params);
  if (spec.kind == DatasetKind::csv) throw InvalidArgument("gen: kind must be rotating, fir-echo or flange-echo");
  const Dataset ds = make_dataset(spec, seed);
  write_csv_stream(ds.stream, fs::path(out));
  if (!comparator_out.empty()) {
    if (!ds.comparator) throw InvalidArgument("--comparator is only available for the rotating kind");
    std::ofstream f(comparator_out, std::ios::binary);
    if (!f) throw DataError("cannot open " + comparator_out);
    const std::size_t d = ds.stream.dim();
    f << "t";
    for (std::size_t j = 1; j <= d; ++j) f << ",u_" << j;
    f << '\n';
    for (std::size_t t = 0; t < ds.comparator->size(); ++t) {
      f << (t + 1);
      for (std::size_t j = 0; j < d; ++j) f << ',' << format_double(ds.comparator->u[t][j]);
      f << '\n';
    }
    std::printf("V1 = %.6g, V2 = %.6g\n", drift_variance(*ds.comparator, 1), drift_variance(*ds.comparator, 2));
  }
  std::printf("wrote %zu samples (d = %zu) to %s\n", ds.stream.size(), ds.stream.dim(), out.c_str());
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Second-order online regression under drift"};
  app.require_subcommand(1);
  app.set_version_flag("--version", version_string());
  std::string isa;
  app.add_option("--isa", isa, "Kernel set: scalar, avx2 or neon (default: best available)");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a stream CSV");
  std::string gen_kind, gen_out, gen_params, gen_comp;
  std::uint64_t gen_seed = 0;
  gen->add_option("--kind", gen_kind, "rotating | fir-echo | flange-echo")->required();
  gen->add_option("--out", gen_out, "Output CSV")->required();
  gen->add_option("--seed", gen_seed, "Generator seed");
  gen->add_option("--params", gen_params, "Generator parameters key=value,... (e.g. T=2000,drift_per_step=0.01)");
  gen->add_option("--comparator", gen_comp, "Also write the comparator sequence (rotating only)");

  // run
  auto* run = app.add_subcommand("run", "Run one learner, optionally replicated");
  std::string run_algo, run_data, run_gen, run_params, run_out;
  std::uint64_t run_seed = 0;
  std::int64_t run_reps = 1;
  bool run_plot = false, run_log = false;
  unsigned run_threads = 0;
  run->add_option("--algo", run_algo, "nlms | rls | crrls | arowr | aar | arcor | laser")->required();
  run->add_option("--data", run_data, "Stream CSV");
  run->add_option("--gen", run_gen, "Generator spec kind[:key=value,...]");
  run->add_option("--params", run_params, "Learner parameters key=value,...");
  run->add_option("--seed", run_seed, "Base seed");
  run->add_option("--reps", run_reps, "Replications")->check(CLI::PositiveNumber);
  run->add_option("--out", run_out, "Output directory")->required();
  run->add_flag("--plot", run_plot, "Write an SVG plot");
  run->add_flag("--log-y", run_log, "Logarithmic y axis");
  run->add_option("--threads", run_threads, "Worker threads (0 = all cores)");

  // tune
  auto* tune = app.add_subcommand("tune", "Grid-tune one learner on a prefix, evaluate on the rest");
  std::string tune_algo, tune_grid, tune_data, tune_gen, tune_out, tune_metric = "final";
  double tune_frac = 0.1;
  std::uint64_t tune_seed = 0;
  bool tune_plot = false;
  unsigned tune_threads = 0;
  tune->add_option("--algo", tune_algo, "Algorithm")->required();
  tune->add_option("--grid", tune_grid, "Grid JSON {\"key\": [values], ...}; default grid when omitted");
  tune->add_option("--data", tune_data, "Stream CSV");
  tune->add_option("--gen", tune_gen, "Generator spec kind[:key=value,...]");
  tune->add_option("--tune-frac", tune_frac, "Prefix fraction used for tuning");
  tune->add_option("--metric", tune_metric, "final | mean")->check(CLI::IsMember({"final", "mean"}));
  tune->add_option("--seed", tune_seed, "Seed for generated data");
  tune->add_option("--out", tune_out, "Output directory")->required();
  tune->add_flag("--plot", tune_plot, "Write an SVG plot");
  tune->add_option("--threads", tune_threads, "Worker threads (0 = all cores)");

  // compare
  auto* cmp = app.add_subcommand("compare", "Run an experiment config");
  std::string cmp_config, cmp_out;
  bool cmp_plot = false;
  int cmp_threads = -1;
  cmp->add_option("--config", cmp_config, "Experiment JSON")->required()->check(CLI::ExistingFile);
  cmp->add_option("--out", cmp_out, "Output directory (overrides output_dir)");
  cmp->add_flag("--plot", cmp_plot, "Write an SVG plot");
  cmp->add_option("--threads", cmp_threads, "Worker threads (overrides the config)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? ok : usage;
  }

  try {
    if (!isa.empty()) simd::set_active_isa(simd::parse_isa(isa));

    if (*gen) return cmd_gen(gen_kind, gen_params, gen_out, gen_seed, gen_comp);

    if (*run) {
      ExperimentConfig c;
      c.dataset = dataset_from(run_data, run_gen);
      c.learners = {parse_learner_params(parse_algorithm(run_algo), run_params)};
      c.replications = run_reps;
      c.seed = run_seed;
      c.output_dir = run_out;
      c.plot = run_plot;
      c.log_scale = run_log;
      c.threads = run_threads;
      const CompareResult r = run_compare(c);
      emit_results(r, c, run_out, run_plot);
      print_summary(r);
      return ok;
    }

    if (*tune) {
      ExperimentConfig c;
      c.dataset = dataset_from(tune_data, tune_gen);
      const Algorithm alg = parse_algorithm(tune_algo);
      c.learners = {LearnerConfig{}};
      c.learners.front().algorithm = alg;
      TuningSpec t;
      t.mode = TuneMode::fraction;
      t.fraction = tune_frac;
      t.metric = tune_metric == "mean" ? TuneMetric::mean_loss : TuneMetric::final_loss;
      if (!tune_grid.empty()) {
        std::ifstream in(tune_grid);
        if (!in) throw DataError("cannot open grid " + tune_grid);
        nlohmann::ordered_json j;
        try {
          j = nlohmann::ordered_json::parse(in);
        } catch (const nlohmann::json::parse_error& e) {
          throw DataError(tune_grid + ": " + e.what());
        }
        t.grids.emplace_back(alg, parse_grid_json(j));
      }
      c.tuning = t;
      c.seed = tune_seed;
      c.output_dir = tune_out;
      c.plot = tune_plot;
      c.threads = tune_threads;
      const CompareResult r = run_compare(c);
      const auto files = emit_results(r, c, tune_out, tune_plot);
      nlohmann::ordered_json scores = nlohmann::ordered_json::array();
      const auto& tr = *r.algorithms.front().tuning;
      const ParamGrid grid = t.grids.empty() ? default_grid(alg) : t.grids.front().second;
      const auto points = grid.expand(c.learners.front());
      for (std::size_t i = 0; i < points.size(); ++i) {
        nlohmann::ordered_json p;
        p["label"] = points[i].label();
        p["score"] = std::isfinite(tr.scores[i]) ? nlohmann::ordered_json(tr.scores[i]) : nlohmann::ordered_json("inf");
        scores.push_back(p);
      }
      nlohmann::ordered_json out;
      out["best"] = to_json(tr.best);
      out["best_label"] = tr.best.label();
      out["best_score"] = tr.best_score;
      out["grid"] = scores;
      std::ofstream f(fs::path(tune_out) / "tuning.json", std::ios::binary);
      f << out.dump(2) << '\n';
      if (!f) throw DataError("cannot write tuning.json");
      std::printf("best: %s (tuning score %.6g)\n", tr.best.label().c_str(), tr.best_score);
      print_summary(r);
      return ok;
    }

    if (*cmp) {
      ExperimentConfig c = load_experiment_config(cmp_config);
      if (!cmp_out.empty()) c.output_dir = cmp_out;
      if (cmp_plot) c.plot = true;
      if (cmp_threads >= 0) c.threads = static_cast<unsigned>(cmp_threads);
      if (c.output_dir.empty()) throw InvalidArgument("no output directory: pass --out or set output_dir");
      const CompareResult r = run_compare(c);
      emit_results(r, c, c.output_dir, c.plot);
      print_summary(r);
      return ok;
    }
  } catch (const InvalidArgument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return usage;
  } catch (const DataError& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return data;
  } catch (const NumericalError& e) {
    std::fprintf(stderr, "numerical error: %s\n", e.what());
    return numerical;
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "data error: %s\n", e.what());
    return data;
  }
  return usage;
}
