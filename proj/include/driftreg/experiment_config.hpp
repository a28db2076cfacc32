#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "driftreg/datagen.hpp"
#include "driftreg/learner_config.hpp"

namespace driftreg {

enum class DatasetKind { rotating, fir_echo, flange_echo, csv };

std::string_view dataset_kind_name(DatasetKind k) noexcept;
DatasetKind parse_dataset_kind(std::string_view name);

struct EchoParams {
  std::size_t signal_length = EchoDefaults::signal_length;
  std::size_t filter_order = EchoDefaults::filter_order;
  double noise_std = EchoDefaults::noise_std;
  std::int64_t taps = EchoDefaults::fir_taps;            // k, FIR only
  std::int64_t amplitude_period = 4000;                  // FIR A(n)
  double flange_amplitude = EchoDefaults::flange_amplitude;
  std::int64_t delay_period = 2000;                      // flange D(n)
  double sample_rate = 8000.0;
  // Source signal, one value per line; empty means the speech-like generator.
  std::string signal_path;

  bool operator==(const EchoParams&) const = default;
};

struct DatasetSpec {
  DatasetKind kind = DatasetKind::rotating;
  RotatingParams rotating;
  EchoParams echo;
  std::string csv_path;  // kind == csv

  bool generated() const noexcept { return kind != DatasetKind::csv; }
};

// Stream for one replica. Generated kinds are a pure function of (spec, seed);
// csv ignores the seed. The comparator is returned for the rotating kind.
struct Dataset {
  Stream stream;
  std::optional<ComparatorSeq> comparator;
};
Dataset make_dataset(const DatasetSpec& spec, std::uint64_t seed);

// "kind" or "kind:key=value,..." using the JSON key names, e.g.
// "rotating:T=500,drift_per_step=0.02" or "csv:path=data.csv".
DatasetSpec parse_dataset_spec(std::string_view text);

// Cartesian product of named axes, first axis outermost.
struct ParamGrid {
  std::vector<std::pair<std::string, std::vector<double>>> axes;

  std::size_t size() const noexcept;
  // Grid points applied on top of `base`, in lexicographic axis order.
  std::vector<LearnerConfig> expand(const LearnerConfig& base) const;
};

// Documented log-spaced grids per algorithm (not the paper's, which are unstated).
ParamGrid default_grid(Algorithm a);

enum class TuneMetric { final_loss, mean_loss };
enum class TuneMode { sequence, fraction };

struct TuningSpec {
  TuneMode mode = TuneMode::sequence;
  double fraction = 0.1;  // prefix share used for tuning in fraction mode
  TuneMetric metric = TuneMetric::final_loss;
  // Per-algorithm overrides; algorithms not listed use default_grid.
  std::vector<std::pair<Algorithm, ParamGrid>> grids;

  const ParamGrid* grid_for(Algorithm a) const noexcept;
};

struct ExperimentConfig {
  DatasetSpec dataset;
  std::vector<LearnerConfig> learners;
  std::int64_t replications = 1;
  std::uint64_t seed = 0;
  std::optional<TuningSpec> tuning;
  std::string output_dir;
  bool plot = false;
  bool log_scale = false;
  unsigned threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

// Strict parsing: unknown keys and wrong types raise InvalidArgument. Numbers
// may be given as the strings "inf" / "-inf".
ExperimentConfig parse_experiment_config(const nlohmann::ordered_json& j);
ExperimentConfig load_experiment_config(const std::filesystem::path& path);
LearnerConfig parse_learner_json(const nlohmann::ordered_json& j);
ParamGrid parse_grid_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json to_json(const ExperimentConfig& c);
nlohmann::ordered_json to_json(const LearnerConfig& c);
nlohmann::ordered_json to_json(const DatasetSpec& d);

// Single-column numeric signal file.
std::vector<double> load_signal(const std::filesystem::path& path);

}  // namespace driftreg
