#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include "driftreg/arcor.hpp"
#include "driftreg/learner.hpp"
#include "driftreg/tolerances.hpp"

namespace driftreg {

enum class Algorithm { nlms, rls, crrls, arowr, aar, arcor, laser };

std::string_view algorithm_name(Algorithm a) noexcept;
Algorithm parse_algorithm(std::string_view name);

// Parameters of any learner; only the fields of `algorithm` are consulted.
struct LearnerConfig {
  Algorithm algorithm = Algorithm::rls;
  double r = 1.0;                                            // RLS, CR-RLS, AROWR, ARCOR
  double b = 1.0;                                            // AAR, LASER
  double c = std::numeric_limits<double>::infinity();        // LASER
  std::optional<std::int64_t> reset_period;                  // CR-RLS T0; empty = infinity
  double mu = 1.0;                                           // NLMS step size
  double eps = tol::nlms_eps;                                // NLMS regularizer
  double radius = std::numeric_limits<double>::infinity();   // ARCOR R_B
  LambdaSchedule schedule = LambdaSchedule::polynomial(2.0); // ARCOR
  std::optional<double> y_bound;                             // LASER clipping

  void validate() const;
  // Short human-readable identifier, e.g. "laser(b=0.5,c=100)".
  std::string label() const;

  bool operator==(const LearnerConfig&) const = default;
};

// Sets one parameter by its short key: r b c T0 mu eps RB q lambda Y.
// T0 = inf means no resets; lambda = 0 selects the zero schedule, any other
// lambda a constant schedule. Does not validate the result.
void set_learner_param(LearnerConfig& config, std::string_view key, double value);

// Parses "key=value,key=value" with the keys above. Values accept "inf".
LearnerConfig parse_learner_params(Algorithm algorithm, std::string_view params);

std::unique_ptr<Learner> make_learner(const LearnerConfig& config, std::size_t dim);

}  // namespace driftreg
