#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "driftreg/harness.hpp"

namespace driftreg {

struct LossCurve {
  std::vector<double> loss;
  std::vector<double> cumloss;
};

// `t,loss,cumloss`, values in shortest round-trip form.
void write_loss_csv(std::ostream& out, const std::vector<double>& loss, const std::vector<double>& cumloss);
void write_loss_csv(const std::filesystem::path& path, const std::vector<double>& loss,
                    const std::vector<double>& cumloss);
void write_loss_csv(const std::filesystem::path& path, const Trajectory& traj);
LossCurve read_loss_csv(const std::filesystem::path& path);

struct EmittedFiles {
  std::vector<std::filesystem::path> curves;  // one per algorithm, config order
  std::filesystem::path summary;
  std::filesystem::path metadata;
  std::filesystem::path plot;  // empty when plotting is off
};

// Writes <dir>/NN_<algorithm>.csv, <dir>/summary.csv, <dir>/metadata.json and,
// when `plot` is set, <dir>/cumloss.svg. Creates the directory if needed.
EmittedFiles emit_results(const CompareResult& result, const ExperimentConfig& config,
                          const std::filesystem::path& dir, bool plot);

std::string version_string();

}  // namespace driftreg
