#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "driftreg/sample.hpp"

namespace driftreg {

struct RotatingParams {
  std::int64_t length = 2000;  // T
  std::size_t dim = 20;
  std::size_t pairs = 5;
  double sigma_major = 10.0;
  double sigma_minor = 1.0;
  double sigma_rest = std::sqrt(2.0);
  // Chord length |u_t - u_{t-1}|; at most 2.
  double drift_per_step = 0.01;
  double noise_std = 0.0;

  void validate() const;
};

// Inputs: each of the first `pairs` coordinate pairs is a Gaussian with
// standard deviations (sigma_major, sigma_minor) rotated by 45 degrees; the
// other coordinates are N(0, sigma_rest^2). The comparator is a unit vector in
// the first two coordinates rotating at a constant angular rate from a random
// start. Labels y_t = u_t^T x_t + N(0, noise_std^2).
std::pair<Stream, ComparatorSeq> rotating_drift_stream(const RotatingParams& params,
                                                       std::uint64_t seed);

// Synthetic speech-like source: a sum of linear chirps with slowly varying
// envelopes plus a small white noise floor, normalized to peak amplitude 1.
std::vector<double> speech_like_signal(std::size_t length, std::uint64_t seed,
                                       double sample_rate = 8000.0);

using AmplitudeFn = std::function<double(std::int64_t)>;
using DelayFn = std::function<std::int64_t(std::int64_t)>;

// y(n) = x(n) + sum_{D=1}^{k} A(n) x(n - D) + v(n), v ~ N(0, noise_std^2).
// Inputs are tapped-delay windows (x(n), ..., x(n - order + 1)), zero padded.
Stream fir_echo_stream(const std::vector<double>& signal, std::int64_t k, const AmplitudeFn& amplitude,
                       double noise_std, std::size_t filter_order, std::uint64_t seed);

// y(n) = x(n) + A y(n - D(n)) + v(n) with y(m) = 0 for m < 0.
Stream flange_echo_stream(const std::vector<double>& signal, double amplitude, const DelayFn& delay,
                          double noise_std, std::size_t filter_order, std::uint64_t seed);

// Defaults used by the CLI and the example configs for the echo streams.
struct EchoDefaults {
  static constexpr std::size_t signal_length = 10000;
  static constexpr std::size_t filter_order = 8;
  static constexpr double noise_std = 0.031622776601683794;  // sqrt(1e-3)
  static constexpr std::int64_t fir_taps = 4;                 // k
  static constexpr double flange_amplitude = 0.5;
};
// A(n) = 0.5 + 0.3 sin(2 pi n / period)
AmplitudeFn default_fir_amplitude(std::int64_t period = 4000);
// D(n) = 4 + round(3 sin(2 pi n / period)), within [1, 7]
DelayFn default_flange_delay(std::int64_t period = 2000);

// V^(P) = sum_{t=1}^{T-1} |u_t - u_{t+1}|^P for P in {1, 2}.
double drift_variance(const ComparatorSeq& u, int power);

// Largest |x_t| and |y_t| of a stream; stored in the stream metadata.
void record_bounds(Stream& stream);

}  // namespace driftreg
