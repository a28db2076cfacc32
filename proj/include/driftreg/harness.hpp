#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "driftreg/experiment_config.hpp"
#include "driftreg/learner.hpp"

namespace driftreg {

struct StepRecord {
  std::int64_t t;  // 1-based
  double yhat;
  double y;
  double loss;  // (yhat - y)^2
};

struct Trajectory {
  LearnerConfig config;
  std::uint64_t seed = 0;
  std::vector<StepRecord> steps;
  // cumloss[t] = cumloss[t-1] + steps[t].loss, accumulated in step order.
  std::vector<double> cumloss;
  std::vector<std::int64_t> resets;  // ARCOR reset steps

  std::size_t size() const noexcept { return steps.size(); }
  double final_loss() const noexcept { return cumloss.empty() ? 0.0 : cumloss.back(); }
};

// Strict online protocol: predict(x_t), then update(x_t, y_t). Throws
// NumericalError naming the step when a prediction is not finite.
Trajectory run_learner(Learner& learner, const Stream& stream);
Trajectory run_experiment(const LearnerConfig& config, const Stream& stream, std::uint64_t seed = 0);

// Runs f(0..n-1) on up to `threads` workers (0 = hardware concurrency). The
// exception of the lowest failing index is rethrown after all workers stop.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& f);

struct ReplicaSummary {
  std::uint64_t seed;
  double final_loss;
  std::size_t resets;
  double x_bound;  // max |x_t| of the replica stream
};

struct ReplicateResult {
  LearnerConfig config;
  std::vector<double> mean_loss;     // pointwise mean instantaneous loss
  std::vector<double> mean_cumloss;  // prefix sums of mean_loss
  std::vector<ReplicaSummary> replicas;  // in seed-list order

  double final_mean() const noexcept { return mean_cumloss.empty() ? 0.0 : mean_cumloss.back(); }
};

using StreamFactory = std::function<Stream(std::uint64_t seed)>;

// One run per seed. Replica curves are summed in ascending seed order, so any
// permutation of `seeds` yields the same mean.
ReplicateResult replicate_mean(const LearnerConfig& config, const StreamFactory& make_stream,
                               const std::vector<std::uint64_t>& seeds, unsigned threads = 0);

// Seeds child_seed(base, 0..count-1).
std::vector<std::uint64_t> replica_seeds(std::uint64_t base, std::int64_t count);

struct TuneResult {
  LearnerConfig best;
  double best_score;
  std::vector<double> scores;  // per grid point; +inf when the run failed numerically
};

double tune_score(const Trajectory& traj, TuneMetric metric) noexcept;

// Lowest score wins; ties go to the earliest grid entry. Points that fail
// validation or diverge score +inf.
TuneResult grid_tune(const std::vector<LearnerConfig>& grid, const Stream& tuning_stream,
                     TuneMetric metric = TuneMetric::final_loss, unsigned threads = 0);

// Prefix [0, n) and remainder [n, T) of a stream, n = floor(fraction * T).
std::pair<Stream, Stream> split_stream(const Stream& stream, double fraction);

// L_T(alg) - sum_t (u_t^T x_t - y_t)^2.
double compute_regret(const Trajectory& traj, const ComparatorSeq& comparator, const Stream& stream);
double comparator_loss(const ComparatorSeq& comparator, const Stream& stream);
// Best fixed vector on the first `horizon` samples (ridge with reg 1e-10),
// repeated `horizon` times.
ComparatorSeq fixed_comparator(const Stream& stream, std::size_t horizon);

struct AlgorithmResult {
  LearnerConfig config;  // tuned when tuning is enabled
  std::optional<TuneResult> tuning;
  ReplicateResult result;
};

struct CompareResult {
  std::vector<AlgorithmResult> algorithms;
  std::vector<std::uint64_t> seeds;
  std::optional<std::uint64_t> tuning_seed;
};

// Seed of the dedicated tuning sequence in sequence mode.
std::uint64_t tuning_sequence_seed(std::uint64_t base) noexcept;

// Tunes (when configured) and replicates every learner of the config.
CompareResult run_compare(const ExperimentConfig& config);

}  // namespace driftreg
