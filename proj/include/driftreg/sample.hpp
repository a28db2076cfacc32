#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "driftreg/linalg.hpp"

namespace driftreg {

struct Sample {
  Vector x;
  double y = 0.0;
};

// Provenance of a stream: enough to regenerate it bit-exactly.
struct StreamMeta {
  std::string generator;  // "rotating", "fir-echo", "flange-echo", "csv", ...
  std::uint64_t seed = 0;
  // Declared bounds; generators fill these with the observed maxima.
  std::optional<double> x_bound;
  std::optional<double> y_bound;
};

struct Stream {
  std::vector<Sample> samples;
  StreamMeta meta;

  std::size_t size() const noexcept { return samples.size(); }
  bool empty() const noexcept { return samples.empty(); }
  // Input dimension; 0 for an empty stream.
  std::size_t dim() const noexcept { return samples.empty() ? 0 : samples.front().x.size(); }
};

// Sequence of comparator weight vectors u_1..u_T.
struct ComparatorSeq {
  std::vector<Vector> u;

  std::size_t size() const noexcept { return u.size(); }
};

}  // namespace driftreg
