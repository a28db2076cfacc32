#include "driftreg/learner_config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "driftreg/error.hpp"
#include "driftreg/laser.hpp"
#include "driftreg/learners.hpp"

namespace driftreg {
namespace {

double parse_number(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last) {
    throw InvalidArgument("parameter " + std::string(key) + ": not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::string num(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string schedule_label(const LambdaSchedule& s) {
  switch (s.kind()) {
    case LambdaSchedule::Kind::polynomial:
      return "q=" + num(s.q());
    case LambdaSchedule::Kind::zero:
      return "lambda=0";
    case LambdaSchedule::Kind::explicit_list:
      if (s.repeats_last() && s.values().size() == 1) return "lambda=" + num(s.values().front());
      return "lambda=list" + std::to_string(s.values().size());
  }
  return {};
}

}  // namespace

std::string_view algorithm_name(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::nlms: return "nlms";
    case Algorithm::rls: return "rls";
    case Algorithm::crrls: return "crrls";
    case Algorithm::arowr: return "arowr";
    case Algorithm::aar: return "aar";
    case Algorithm::arcor: return "arcor";
    case Algorithm::laser: return "laser";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::nlms, Algorithm::rls, Algorithm::crrls, Algorithm::arowr,
                      Algorithm::aar, Algorithm::arcor, Algorithm::laser}) {
    if (algorithm_name(a) == name) return a;
  }
  throw InvalidArgument("unknown algorithm '" + std::string(name) + "'");
}

void LearnerConfig::validate() const {
  switch (algorithm) {
    case Algorithm::rls:
    case Algorithm::crrls:
      if (!(r > 0.0 && r <= 1.0)) throw InvalidArgument("r must lie in (0, 1]");
      if (reset_period && *reset_period < 1) throw InvalidArgument("T0 must be >= 1");
      break;
    case Algorithm::arowr:
      if (!(r > 0.0) || !std::isfinite(r)) throw InvalidArgument("r must be positive");
      break;
    case Algorithm::aar:
      if (!(b > 0.0) || !std::isfinite(b)) throw InvalidArgument("b must be positive");
      break;
    case Algorithm::nlms:
      if (!(mu > 0.0 && mu <= 2.0)) throw InvalidArgument("mu must lie in (0, 2]");
      if (!(eps >= 0.0) || !std::isfinite(eps)) throw InvalidArgument("eps must be >= 0");
      break;
    case Algorithm::arcor:
      ArcorConfig{r, radius, schedule}.validate();
      break;
    case Algorithm::laser:
      LaserConfig{b, c, y_bound, false}.validate();
      break;
  }
}

std::string LearnerConfig::label() const {
  std::string out(algorithm_name(algorithm));
  switch (algorithm) {
    case Algorithm::nlms:
      out += "(mu=" + num(mu) + ",eps=" + num(eps) + ")";
      break;
    case Algorithm::rls:
    case Algorithm::arowr:
      out += "(r=" + num(r) + ")";
      break;
    case Algorithm::crrls:
      out += "(r=" + num(r) + ",T0=" + (reset_period ? std::to_string(*reset_period) : "inf") + ")";
      break;
    case Algorithm::aar:
      out += "(b=" + num(b) + ")";
      break;
    case Algorithm::arcor:
      out += "(r=" + num(r) + ",RB=" + num(radius) + "," + schedule_label(schedule) + ")";
      break;
    case Algorithm::laser:
      out += "(b=" + num(b) + ",c=" + num(c) + (y_bound ? ",Y=" + num(*y_bound) : "") + ")";
      break;
  }
  return out;
}

void set_learner_param(LearnerConfig& cfg, std::string_view key, double value) {
  if (key == "r") {
    cfg.r = value;
  } else if (key == "b") {
    cfg.b = value;
  } else if (key == "c") {
    cfg.c = value;
  } else if (key == "T0") {
    if (std::isinf(value) && value > 0) {
      cfg.reset_period.reset();
    } else {
      if (value != std::floor(value) || value < 1) throw InvalidArgument("T0 must be a positive integer or inf");
      cfg.reset_period = static_cast<std::int64_t>(value);
    }
  } else if (key == "mu") {
    cfg.mu = value;
  } else if (key == "eps") {
    cfg.eps = value;
  } else if (key == "RB") {
    cfg.radius = value;
  } else if (key == "q") {
    cfg.schedule = LambdaSchedule::polynomial(value);
  } else if (key == "lambda") {
    cfg.schedule = value == 0.0 ? LambdaSchedule::zero() : LambdaSchedule::constant(value);
  } else if (key == "Y") {
    cfg.y_bound = value;
  } else {
    throw InvalidArgument("unknown parameter '" + std::string(key) + "'");
  }
}

LearnerConfig parse_learner_params(Algorithm algorithm, std::string_view params) {
  LearnerConfig cfg;
  cfg.algorithm = algorithm;
  while (!params.empty()) {
    const auto comma = params.find(',');
    const std::string_view item = params.substr(0, comma);
    params = comma == std::string_view::npos ? std::string_view{} : params.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw InvalidArgument("parameter '" + std::string(item) + "' is not key=value");
    const std::string_view key = item.substr(0, eq);
    const std::string_view value = item.substr(eq + 1);
    set_learner_param(cfg, key, parse_number(key, value));
  }
  cfg.validate();
  return cfg;
}

std::unique_ptr<Learner> make_learner(const LearnerConfig& config, std::size_t dim) {
  config.validate();
  switch (config.algorithm) {
    case Algorithm::nlms:
      return std::make_unique<NlmsLearner>(dim, config.mu, config.eps);
    case Algorithm::rls:
      return std::make_unique<RlsLearner>(dim, config.r);
    case Algorithm::crrls:
      return std::make_unique<CrRlsLearner>(dim, config.r, config.reset_period);
    case Algorithm::arowr:
      return std::make_unique<ArowrLearner>(dim, config.r);
    case Algorithm::aar:
      return std::make_unique<AarLearner>(dim, config.b);
    case Algorithm::arcor:
      return std::make_unique<ArcorLearner>(dim, ArcorConfig{config.r, config.radius, config.schedule});
    case Algorithm::laser:
      return std::make_unique<LaserLearner>(dim, LaserConfig{config.b, config.c, config.y_bound, false});
  }
  throw InvalidArgument("unknown algorithm");
}

}  // namespace driftreg
