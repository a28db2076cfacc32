#include "driftreg/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <thread>

#include "driftreg/arcor.hpp"
#include "driftreg/error.hpp"
#include "driftreg/oracles.hpp"
#include "driftreg/random.hpp"
#include "driftreg/tolerances.hpp"

namespace driftreg {

Trajectory run_learner(Learner& learner, const Stream& stream) {
  if (!stream.empty() && stream.dim() != learner.dim())
    throw DimensionMismatch("run_experiment: stream vs learner", learner.dim(), stream.dim());
  Trajectory traj;
  traj.steps.reserve(stream.size());
  traj.cumloss.reserve(stream.size());
  double cum = 0.0;
  for (std::size_t i = 0; i < stream.size(); ++i) {
    const Sample& s = stream.samples[i];
    const auto t = static_cast<std::int64_t>(i + 1);
    if (s.x.size() != learner.dim()) throw DimensionMismatch("sample " + std::to_string(t), learner.dim(), s.x.size());
    const double yhat = learner.predict(s.x);
    if (!std::isfinite(yhat)) throw NumericalError("non-finite prediction at step " + std::to_string(t));
    learner.update(s.x, s.y);
    const double loss = (yhat - s.y) * (yhat - s.y);
    cum += loss;
    if (!std::isfinite(cum)) throw NumericalError("cumulative loss overflow at step " + std::to_string(t));
    traj.steps.push_back(StepRecord{t, yhat, s.y, loss});
    traj.cumloss.push_back(cum);
  }
  if (const auto* arcor = dynamic_cast<const ArcorLearner*>(&learner)) traj.resets = arcor->state().resets;
  return traj;
}

Trajectory run_experiment(const LearnerConfig& config, const Stream& stream, std::uint64_t seed) {
  if (stream.empty()) throw DataError("run_experiment: empty stream");
  auto learner = make_learner(config, stream.dim());
  Trajectory traj = run_learner(*learner, stream);
  traj.config = config;
  traj.seed = seed;
  return traj;
}

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& f) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) f(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_index = std::numeric_limits<std::size_t>::max();
  std::exception_ptr failure;
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
          try {
            f(i);
          } catch (...) {
            std::lock_guard lock(mu);
            if (i < failed_index) {
              failed_index = i;
              failure = std::current_exception();
            }
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

std::vector<std::uint64_t> replica_seeds(std::uint64_t base, std::int64_t count) {
  if (count < 1) throw InvalidArgument("replications must be >= 1");
  std::vector<std::uint64_t> seeds(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < seeds.size(); ++i) seeds[i] = child_seed(base, i);
  return seeds;
}

ReplicateResult replicate_mean(const LearnerConfig& config, const StreamFactory& make_stream,
                               const std::vector<std::uint64_t>& seeds, unsigned threads) {
  if (seeds.empty()) throw InvalidArgument("replicate_mean: need at least one seed");
  std::vector<Trajectory> runs(seeds.size());
  std::vector<double> x_bounds(seeds.size(), 0.0);
  parallel_for(seeds.size(), threads, [&](std::size_t i) {
    const Stream stream = make_stream(seeds[i]);
    runs[i] = run_experiment(config, stream, seeds[i]);
    for (const Sample& s : stream.samples) x_bounds[i] = std::max(x_bounds[i], norm(s.x));
  });

  const std::size_t len = runs.front().size();
  for (const auto& r : runs)
    if (r.size() != len) throw DataError("replicate_mean: replicas have different lengths");

  std::vector<std::size_t> order(seeds.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return seeds[a] < seeds[b]; });

  ReplicateResult out;
  out.config = config;
  out.mean_loss.assign(len, 0.0);
  for (std::size_t i : order)
    for (std::size_t t = 0; t < len; ++t) out.mean_loss[t] += runs[i].steps[t].loss;
  const double n = static_cast<double>(seeds.size());
  double cum = 0.0;
  out.mean_cumloss.reserve(len);
  for (double& l : out.mean_loss) {
    l /= n;
    cum += l;
    out.mean_cumloss.push_back(cum);
  }
  for (std::size_t i = 0; i < runs.size(); ++i)
    out.replicas.push_back(ReplicaSummary{seeds[i], runs[i].final_loss(), runs[i].resets.size(), x_bounds[i]});
  return out;
}

double tune_score(const Trajectory& traj, TuneMetric metric) noexcept {
  if (traj.size() == 0) return 0.0;
  return metric == TuneMetric::final_loss ? traj.final_loss() : traj.final_loss() / static_cast<double>(traj.size());
}

TuneResult grid_tune(const std::vector<LearnerConfig>& grid, const Stream& tuning_stream, TuneMetric metric,
                     unsigned threads) {
  if (grid.empty()) throw InvalidArgument("grid_tune: empty grid");
  if (tuning_stream.empty()) throw DataError("grid_tune: empty tuning stream");
  std::vector<bool> valid(grid.size(), true);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    try {
      grid[i].validate();
    } catch (const InvalidArgument&) {
      valid[i] = false;  // e.g. a LASER point with c <= b
    }
  }
  if (std::find(valid.begin(), valid.end(), true) == valid.end())
    throw InvalidArgument("grid_tune: no valid grid point");
  std::vector<double> scores(grid.size(), std::numeric_limits<double>::infinity());
  parallel_for(grid.size(), threads, [&](std::size_t i) {
    if (!valid[i]) return;
    try {
      scores[i] = tune_score(run_experiment(grid[i], tuning_stream), metric);
    } catch (const NumericalError&) {
      // A diverging grid point simply loses.
    }
  });
  std::size_t best = 0;
  while (!valid[best]) ++best;
  for (std::size_t i = best + 1; i < scores.size(); ++i)
    if (scores[i] < scores[best]) best = i;
  return TuneResult{grid[best], scores[best], std::move(scores)};
}

std::pair<Stream, Stream> split_stream(const Stream& stream, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) throw InvalidArgument("split_stream: fraction must lie in (0, 1)");
  const auto n = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(stream.size())));
  if (n == 0 || n >= stream.size()) throw DataError("split_stream: stream too short for the tuning fraction");
  Stream head{{stream.samples.begin(), stream.samples.begin() + static_cast<std::ptrdiff_t>(n)}, stream.meta};
  Stream tail{{stream.samples.begin() + static_cast<std::ptrdiff_t>(n), stream.samples.end()}, stream.meta};
  return {std::move(head), std::move(tail)};
}

double comparator_loss(const ComparatorSeq& comparator, const Stream& stream) {
  if (comparator.size() != stream.size())
    throw InvalidArgument("comparator length " + std::to_string(comparator.size()) + " != stream length " +
                          std::to_string(stream.size()));
  double total = 0.0;
  for (std::size_t t = 0; t < stream.size(); ++t) {
    const double r = dot(comparator.u[t], stream.samples[t].x) - stream.samples[t].y;
    total += r * r;
  }
  return total;
}

double compute_regret(const Trajectory& traj, const ComparatorSeq& comparator, const Stream& stream) {
  if (traj.size() != stream.size())
    throw InvalidArgument("trajectory length " + std::to_string(traj.size()) + " != stream length " +
                          std::to_string(stream.size()));
  return traj.final_loss() - comparator_loss(comparator, stream);
}

ComparatorSeq fixed_comparator(const Stream& stream, std::size_t horizon) {
  if (horizon == 0 || horizon > stream.size()) throw InvalidArgument("fixed_comparator: bad horizon");
  const std::span<const Sample> prefix(stream.samples.data(), horizon);
  const Vector u = oracle::batch_ridge(prefix, 1.0, tol::comparator_ridge);
  return ComparatorSeq{std::vector<Vector>(horizon, u)};
}

std::uint64_t tuning_sequence_seed(std::uint64_t base) noexcept {
  // Distinct from every replica seed child_seed(base, i) for practical i.
  return splitmix64(base ^ 0x74756E696E67ULL);
}

CompareResult run_compare(const ExperimentConfig& config) {
  config.validate();
  CompareResult out;
  out.seeds = replica_seeds(config.seed, config.replications);

  const bool by_fraction = config.tuning && config.tuning->mode == TuneMode::fraction;
  const double fraction = by_fraction ? config.tuning->fraction : 0.0;
  const StreamFactory factory = [&](std::uint64_t seed) {
    Stream s = make_dataset(config.dataset, seed).stream;
    return by_fraction ? split_stream(s, fraction).second : s;
  };

  std::optional<Stream> tuning_stream;
  if (config.tuning) {
    if (by_fraction) {
      tuning_stream = split_stream(make_dataset(config.dataset, out.seeds.front()).stream, fraction).first;
    } else {
      out.tuning_seed = tuning_sequence_seed(config.seed);
      tuning_stream = make_dataset(config.dataset, *out.tuning_seed).stream;
    }
  }

  for (const LearnerConfig& base : config.learners) {
    AlgorithmResult ar{base, std::nullopt, {}};
    if (tuning_stream) {
      const ParamGrid* custom = config.tuning->grid_for(base.algorithm);
      const ParamGrid grid = custom ? *custom : default_grid(base.algorithm);
      ar.tuning = grid_tune(grid.expand(base), *tuning_stream, config.tuning->metric, config.threads);
      ar.config = ar.tuning->best;
    }
    ar.result = replicate_mean(ar.config, factory, out.seeds, config.threads);
    out.algorithms.push_back(std::move(ar));
  }
  return out;
}

}  // namespace driftreg
