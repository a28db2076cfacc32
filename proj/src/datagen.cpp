#include "driftreg/datagen.hpp"

#include <algorithm>
#include <numbers>

#include "driftreg/error.hpp"
#include "driftreg/random.hpp"

namespace driftreg {
namespace {

Vector tapped_window(const std::vector<double>& signal, std::size_t n, std::size_t order) {
  Vector v(order);
  for (std::size_t j = 0; j < order && j <= n; ++j) v[j] = signal[n - j];
  return v;
}

void check_echo_args(const std::vector<double>& signal, std::size_t order, double noise_std) {
  if (signal.empty()) throw InvalidArgument("echo stream: empty source signal");
  if (order < 1) throw InvalidArgument("echo stream: filter order must be >= 1");
  if (!(noise_std >= 0.0) || !std::isfinite(noise_std)) throw InvalidArgument("echo stream: noise std must be >= 0");
}

}  // namespace

void RotatingParams::validate() const {
  if (length < 1) throw InvalidArgument("rotating stream: T must be >= 1");
  if (pairs < 1 || dim < 2 * pairs) throw InvalidArgument("rotating stream: need pairs >= 1 and d >= 2 * pairs");
  if (!(sigma_major >= 0.0) || !(sigma_minor >= 0.0) || !(sigma_rest >= 0.0))
    throw InvalidArgument("rotating stream: standard deviations must be >= 0");
  if (!(drift_per_step >= 0.0 && drift_per_step <= 2.0))
    throw InvalidArgument("rotating stream: drift per step must lie in [0, 2]");
  if (!(noise_std >= 0.0) || !std::isfinite(noise_std)) throw InvalidArgument("rotating stream: noise std must be >= 0");
}

std::pair<Stream, ComparatorSeq> rotating_drift_stream(const RotatingParams& p, std::uint64_t seed) {
  p.validate();
  Rng rng(seed);
  const double h = std::numbers::sqrt2 / 2.0;
  // Chord 2 sin(omega / 2) equals the requested drift.
  const double omega = 2.0 * std::asin(p.drift_per_step / 2.0);
  const double theta0 = rng.uniform(0.0, 2.0 * std::numbers::pi);

  Stream stream;
  stream.meta.generator = "rotating";
  stream.meta.seed = seed;
  ComparatorSeq comp;
  stream.samples.reserve(static_cast<std::size_t>(p.length));
  comp.u.reserve(static_cast<std::size_t>(p.length));
  for (std::int64_t t = 0; t < p.length; ++t) {
    Vector x(p.dim);
    for (std::size_t k = 0; k < p.pairs; ++k) {
      const double z1 = rng.normal(0.0, p.sigma_major);
      const double z2 = rng.normal(0.0, p.sigma_minor);
      x[2 * k] = h * (z1 - z2);
      x[2 * k + 1] = h * (z1 + z2);
    }
    for (std::size_t j = 2 * p.pairs; j < p.dim; ++j) x[j] = rng.normal(0.0, p.sigma_rest);

    const double theta = theta0 + omega * static_cast<double>(t);
    Vector u(p.dim);
    u[0] = std::cos(theta);
    u[1] = std::sin(theta);
    double y = u[0] * x[0] + u[1] * x[1];
    if (p.noise_std > 0.0) y += rng.normal(0.0, p.noise_std);
    stream.samples.push_back(Sample{std::move(x), y});
    comp.u.push_back(std::move(u));
  }
  record_bounds(stream);
  return {std::move(stream), std::move(comp)};
}

std::vector<double> speech_like_signal(std::size_t length, std::uint64_t seed, double sample_rate) {
  if (!(sample_rate > 0.0)) throw InvalidArgument("speech-like signal: sample rate must be positive");
  Rng rng(seed);
  constexpr int chirps = 6;
  struct Chirp {
    double f0, slope, phase, env_rate, env_phase, gain;
  };
  std::vector<Chirp> cs;
  for (int i = 0; i < chirps; ++i) {
    const double f0 = rng.uniform(100.0, 1200.0);
    cs.push_back(Chirp{f0, rng.uniform(-200.0, 200.0), rng.uniform(0.0, 2.0 * std::numbers::pi),
                       rng.uniform(1.0, 5.0), rng.uniform(0.0, 2.0 * std::numbers::pi), rng.uniform(0.3, 1.0)});
  }
  std::vector<double> s(length);
  double peak = 0.0;
  for (std::size_t n = 0; n < length; ++n) {
    const double t = static_cast<double>(n) / sample_rate;
    double v = 0.01 * rng.normal();
    for (const Chirp& c : cs) {
      // Syllable-like envelope: rectified slow sinusoid.
      const double env = std::max(0.0, std::sin(2.0 * std::numbers::pi * c.env_rate * t + c.env_phase));
      v += c.gain * env * std::sin(2.0 * std::numbers::pi * (c.f0 * t + 0.5 * c.slope * t * t) + c.phase);
    }
    s[n] = v;
    peak = std::max(peak, std::abs(v));
  }
  if (peak > 0.0)
    for (double& v : s) v /= peak;
  return s;
}

Stream fir_echo_stream(const std::vector<double>& signal, std::int64_t k, const AmplitudeFn& amplitude,
                       double noise_std, std::size_t filter_order, std::uint64_t seed) {
  check_echo_args(signal, filter_order, noise_std);
  if (k < 0) throw InvalidArgument("fir echo: k must be >= 0");
  Rng rng(seed);
  Stream stream;
  stream.meta.generator = "fir-echo";
  stream.meta.seed = seed;
  stream.samples.reserve(signal.size());
  for (std::size_t n = 0; n < signal.size(); ++n) {
    const auto ni = static_cast<std::int64_t>(n);
    double echo = 0.0;
    for (std::int64_t d = 1; d <= k && d <= ni; ++d) echo += signal[n - static_cast<std::size_t>(d)];
    double y = signal[n] + (k > 0 ? amplitude(ni) * echo : 0.0);
    if (noise_std > 0.0) y += rng.normal(0.0, noise_std);
    stream.samples.push_back(Sample{tapped_window(signal, n, filter_order), y});
  }
  record_bounds(stream);
  return stream;
}

Stream flange_echo_stream(const std::vector<double>& signal, double amplitude, const DelayFn& delay,
                          double noise_std, std::size_t filter_order, std::uint64_t seed) {
  check_echo_args(signal, filter_order, noise_std);
  Rng rng(seed);
  Stream stream;
  stream.meta.generator = "flange-echo";
  stream.meta.seed = seed;
  stream.samples.reserve(signal.size());
  std::vector<double> y(signal.size());
  for (std::size_t n = 0; n < signal.size(); ++n) {
    const auto ni = static_cast<std::int64_t>(n);
    const std::int64_t d = delay(ni);
    if (d < 1) throw InvalidArgument("flange echo: delay must be >= 1 at step " + std::to_string(n));
    const double past = d <= ni ? y[n - static_cast<std::size_t>(d)] : 0.0;
    y[n] = signal[n] + amplitude * past;
    if (noise_std > 0.0) y[n] += rng.normal(0.0, noise_std);
    stream.samples.push_back(Sample{tapped_window(signal, n, filter_order), y[n]});
  }
  record_bounds(stream);
  return stream;
}

AmplitudeFn default_fir_amplitude(std::int64_t period) {
  return [period](std::int64_t n) {
    return 0.5 + 0.3 * std::sin(2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(period));
  };
}

DelayFn default_flange_delay(std::int64_t period) {
  return [period](std::int64_t n) {
    return 4 + static_cast<std::int64_t>(std::lround(
                   3.0 * std::sin(2.0 * std::numbers::pi * static_cast<double>(n) / static_cast<double>(period))));
  };
}

double drift_variance(const ComparatorSeq& u, int power) {
  if (power != 1 && power != 2) throw InvalidArgument("drift_variance: power must be 1 or 2");
  if (u.u.empty()) throw InvalidArgument("drift_variance: empty comparator sequence");
  double total = 0.0;
  for (std::size_t t = 0; t + 1 < u.u.size(); ++t) {
    const double sq = squared_norm(u.u[t] - u.u[t + 1]);
    total += power == 2 ? sq : std::sqrt(sq);
  }
  return total;
}

void record_bounds(Stream& stream) {
  double xb = 0.0;
  double yb = 0.0;
  for (const Sample& s : stream.samples) {
    xb = std::max(xb, norm(s.x));
    yb = std::max(yb, std::abs(s.y));
  }
  stream.meta.x_bound = xb;
  stream.meta.y_bound = yb;
}

}  // namespace driftreg
