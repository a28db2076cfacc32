#include "driftreg/experiment_config.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "driftreg/error.hpp"
#include "driftreg/random.hpp"
#include "driftreg/stream_io.hpp"

namespace driftreg {
namespace {

using Json = nlohmann::ordered_json;

void reject_unknown(const Json& j, std::initializer_list<std::string_view> allowed, const std::string& where) {
  if (!j.is_object()) throw InvalidArgument(where + ": expected an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (std::string_view a : allowed) ok = ok || key == a;
    if (!ok) throw InvalidArgument(where + ": unknown key '" + key + "'");
  }
}

double as_number(const Json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw InvalidArgument(where + ": expected a number");
}

std::int64_t as_integer(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (d == std::floor(d) && std::abs(d) < 9.0e15) return static_cast<std::int64_t>(d);
  }
  throw InvalidArgument(where + ": expected an integer");
}

std::size_t as_count(const Json& v, const std::string& where) {
  const std::int64_t n = as_integer(v, where);
  if (n < 0) throw InvalidArgument(where + ": must be >= 0");
  return static_cast<std::size_t>(n);
}

bool as_bool(const Json& v, const std::string& where) {
  if (!v.is_boolean()) throw InvalidArgument(where + ": expected true or false");
  return v.get<bool>();
}

std::string as_string(const Json& v, const std::string& where) {
  if (!v.is_string()) throw InvalidArgument(where + ": expected a string");
  return v.get<std::string>();
}

Json number_json(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

}  // namespace

std::string_view dataset_kind_name(DatasetKind k) noexcept {
  switch (k) {
    case DatasetKind::rotating: return "rotating";
    case DatasetKind::fir_echo: return "fir-echo";
    case DatasetKind::flange_echo: return "flange-echo";
    case DatasetKind::csv: return "csv";
  }
  return "unknown";
}

DatasetKind parse_dataset_kind(std::string_view name) {
  for (DatasetKind k : {DatasetKind::rotating, DatasetKind::fir_echo, DatasetKind::flange_echo, DatasetKind::csv})
    if (dataset_kind_name(k) == name) return k;
  throw InvalidArgument("unknown dataset kind '" + std::string(name) + "'");
}

std::vector<double> load_signal(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view s = line;
    if (!s.empty() && s.back() == '\r') s.remove_suffix(1);
    if (s.empty()) continue;
    double v = 0.0;
    if (!parse_double(s, v) || !std::isfinite(v))
      throw DataError(path.string() + ":" + std::to_string(lineno) + ": not a finite number");
    out.push_back(v);
  }
  if (out.empty()) throw DataError(path.string() + ": empty signal");
  return out;
}

Dataset make_dataset(const DatasetSpec& spec, std::uint64_t seed) {
  Dataset out;
  if (spec.kind == DatasetKind::rotating) {
    auto [stream, comp] = rotating_drift_stream(spec.rotating, seed);
    out.stream = std::move(stream);
    out.comparator = std::move(comp);
    return out;
  }
  if (spec.kind == DatasetKind::csv) {
    out.stream = load_csv_stream(spec.csv_path);
    return out;
  }
  const EchoParams& e = spec.echo;
  const std::vector<double> signal = e.signal_path.empty()
                                         ? speech_like_signal(e.signal_length, child_seed(seed, 0), e.sample_rate)
                                         : load_signal(e.signal_path);
  if (spec.kind == DatasetKind::fir_echo) {
    out.stream = fir_echo_stream(signal, e.taps, default_fir_amplitude(e.amplitude_period), e.noise_std,
                                 e.filter_order, child_seed(seed, 1));
  } else {
    out.stream = flange_echo_stream(signal, e.flange_amplitude, default_flange_delay(e.delay_period), e.noise_std,
                                    e.filter_order, child_seed(seed, 1));
  }
  out.stream.meta.seed = seed;
  return out;
}

namespace {

DatasetSpec parse_dataset_json(const Json& j) {
  const std::string where = "dataset";
  if (!j.is_object() || !j.contains("kind")) throw InvalidArgument(where + ": missing 'kind'");
  DatasetSpec d;
  d.kind = parse_dataset_kind(as_string(j.at("kind"), where + ".kind"));
  const auto key = [&](const char* k) { return where + "." + k; };
  switch (d.kind) {
    case DatasetKind::rotating: {
      reject_unknown(j, {"kind", "T", "d", "pairs", "sigma_major", "sigma_minor", "sigma_rest", "drift_per_step", "noise_std"}, where);
      RotatingParams& p = d.rotating;
      if (j.contains("T")) p.length = as_integer(j["T"], key("T"));
      if (j.contains("d")) p.dim = as_count(j["d"], key("d"));
      if (j.contains("pairs")) p.pairs = as_count(j["pairs"], key("pairs"));
      if (j.contains("sigma_major")) p.sigma_major = as_number(j["sigma_major"], key("sigma_major"));
      if (j.contains("sigma_minor")) p.sigma_minor = as_number(j["sigma_minor"], key("sigma_minor"));
      if (j.contains("sigma_rest")) p.sigma_rest = as_number(j["sigma_rest"], key("sigma_rest"));
      if (j.contains("drift_per_step")) p.drift_per_step = as_number(j["drift_per_step"], key("drift_per_step"));
      if (j.contains("noise_std")) p.noise_std = as_number(j["noise_std"], key("noise_std"));
      p.validate();
      break;
    }
    case DatasetKind::fir_echo:
    case DatasetKind::flange_echo: {
      if (d.kind == DatasetKind::fir_echo) {
        reject_unknown(j, {"kind", "signal_length", "filter_order", "noise_std", "taps", "amplitude_period", "sample_rate", "signal_path"}, where);
      } else {
        reject_unknown(j, {"kind", "signal_length", "filter_order", "noise_std", "amplitude", "delay_period", "sample_rate", "signal_path"}, where);
      }
      EchoParams& e = d.echo;
      if (j.contains("signal_length")) e.signal_length = as_count(j["signal_length"], key("signal_length"));
      if (j.contains("filter_order")) e.filter_order = as_count(j["filter_order"], key("filter_order"));
      if (j.contains("noise_std")) e.noise_std = as_number(j["noise_std"], key("noise_std"));
      if (j.contains("taps")) e.taps = as_integer(j["taps"], key("taps"));
      if (j.contains("amplitude_period")) e.amplitude_period = as_integer(j["amplitude_period"], key("amplitude_period"));
      if (j.contains("amplitude")) e.flange_amplitude = as_number(j["amplitude"], key("amplitude"));
      if (j.contains("delay_period")) e.delay_period = as_integer(j["delay_period"], key("delay_period"));
      if (j.contains("sample_rate")) e.sample_rate = as_number(j["sample_rate"], key("sample_rate"));
      if (j.contains("signal_path")) e.signal_path = as_string(j["signal_path"], key("signal_path"));
      if (e.signal_length < 1 && e.signal_path.empty()) throw InvalidArgument(key("signal_length") + ": must be >= 1");
      if (e.filter_order < 1) throw InvalidArgument(key("filter_order") + ": must be >= 1");
      if (e.amplitude_period < 1 || e.delay_period < 1) throw InvalidArgument(where + ": periods must be >= 1");
      break;
    }
    case DatasetKind::csv:
      reject_unknown(j, {"kind", "path"}, where);
      if (!j.contains("path")) throw InvalidArgument(where + ": csv dataset needs 'path'");
      d.csv_path = as_string(j["path"], key("path"));
      break;
  }
  return d;
}

TuningSpec parse_tuning_json(const Json& j) {
  reject_unknown(j, {"mode", "fraction", "metric", "grids"}, "tuning");
  TuningSpec t;
  if (j.contains("mode")) {
    const auto m = as_string(j["mode"], "tuning.mode");
    if (m == "sequence") t.mode = TuneMode::sequence;
    else if (m == "fraction") t.mode = TuneMode::fraction;
    else throw InvalidArgument("tuning.mode: expected 'sequence' or 'fraction'");
  }
  if (j.contains("fraction")) {
    t.fraction = as_number(j["fraction"], "tuning.fraction");
    if (!j.contains("mode")) t.mode = TuneMode::fraction;
  }
  if (j.contains("metric")) {
    const auto m = as_string(j["metric"], "tuning.metric");
    if (m == "final") t.metric = TuneMetric::final_loss;
    else if (m == "mean") t.metric = TuneMetric::mean_loss;
    else throw InvalidArgument("tuning.metric: expected 'final' or 'mean'");
  }
  if (j.contains("grids")) {
    if (!j["grids"].is_object()) throw InvalidArgument("tuning.grids: expected an object");
    for (const auto& [name, grid] : j["grids"].items()) t.grids.emplace_back(parse_algorithm(name), parse_grid_json(grid));
  }
  return t;
}

}  // namespace

LearnerConfig parse_learner_json(const Json& j) {
  const std::string where = "learner";
  reject_unknown(j, {"algorithm", "r", "b", "c", "T0", "mu", "eps", "RB", "q", "lambda", "lambdas", "Y"}, where);
  if (!j.contains("algorithm")) throw InvalidArgument(where + ": missing 'algorithm'");
  LearnerConfig cfg;
  cfg.algorithm = parse_algorithm(as_string(j["algorithm"], where + ".algorithm"));
  for (const auto& [key, value] : j.items()) {
    if (key == "algorithm") continue;
    if (key == "lambdas") {
      if (!value.is_array()) throw InvalidArgument(where + ".lambdas: expected an array");
      std::vector<double> v;
      for (const auto& x : value) v.push_back(as_number(x, where + ".lambdas"));
      cfg.schedule = LambdaSchedule::explicit_list(std::move(v));
      continue;
    }
    set_learner_param(cfg, key, as_number(value, where + "." + key));
  }
  cfg.validate();
  return cfg;
}

ParamGrid parse_grid_json(const Json& j) {
  if (!j.is_object()) throw InvalidArgument("grid: expected an object of key -> list");
  ParamGrid g;
  LearnerConfig probe;
  for (const auto& [key, values] : j.items()) {
    if (!values.is_array() || values.empty()) throw InvalidArgument("grid." + key + ": expected a nonempty array");
    std::vector<double> v;
    for (const auto& x : values) v.push_back(as_number(x, "grid." + key));
    set_learner_param(probe, key, v.front());  // rejects unknown keys
    g.axes.emplace_back(key, std::move(v));
  }
  if (g.axes.empty()) throw InvalidArgument("grid: no parameters");
  return g;
}

std::size_t ParamGrid::size() const noexcept {
  if (axes.empty()) return 0;
  std::size_t n = 1;
  for (const auto& [_, v] : axes) n *= v.size();
  return n;
}

std::vector<LearnerConfig> ParamGrid::expand(const LearnerConfig& base) const {
  std::vector<LearnerConfig> out;
  const std::size_t n = size();
  out.reserve(n);
  std::vector<std::size_t> idx(axes.size(), 0);
  for (std::size_t k = 0; k < n; ++k) {
    LearnerConfig cfg = base;
    for (std::size_t a = 0; a < axes.size(); ++a) set_learner_param(cfg, axes[a].first, axes[a].second[idx[a]]);
    out.push_back(std::move(cfg));
    for (std::size_t a = axes.size(); a-- > 0;) {
      if (++idx[a] < axes[a].second.size()) break;
      idx[a] = 0;
    }
  }
  return out;
}

ParamGrid default_grid(Algorithm a) {
  const double inf = std::numeric_limits<double>::infinity();
  ParamGrid g;
  switch (a) {
    case Algorithm::nlms:
      g.axes = {{"mu", {0.01, 0.03, 0.1, 0.3, 1.0}}};
      break;
    case Algorithm::rls:
      g.axes = {{"r", {0.9, 0.95, 0.99, 0.995, 0.999, 1.0}}};
      break;
    case Algorithm::crrls:
      g.axes = {{"r", {0.99, 0.999, 1.0}}, {"T0", {20, 50, 100, 200, 500, 1000, inf}}};
      break;
    case Algorithm::arowr:
      g.axes = {{"r", {0.01, 0.1, 1.0, 10.0, 100.0, 1000.0}}};
      break;
    case Algorithm::aar:
      g.axes = {{"b", {0.01, 0.1, 1.0, 10.0, 100.0}}};
      break;
    case Algorithm::arcor:
      g.axes = {{"r", {0.1, 1.0, 10.0, 100.0}}, {"RB", {1.0, 2.0, 5.0, inf}}, {"q", {4.0 / 3.0, 1.5, 2.0, 3.0}}};
      break;
    case Algorithm::laser:
      g.axes = {{"b", {0.1, 1.0, 10.0}}, {"c", {20.0, 100.0, 1e3, 1e4, 1e5, 1e6}}};
      break;
  }
  return g;
}

const ParamGrid* TuningSpec::grid_for(Algorithm a) const noexcept {
  for (const auto& [alg, grid] : grids)
    if (alg == a) return &grid;
  return nullptr;
}

void ExperimentConfig::validate() const {
  if (learners.empty()) throw InvalidArgument("config: at least one learner is required");
  if (replications < 1) throw InvalidArgument("config: replications must be >= 1");
  for (const auto& l : learners) l.validate();
  if (tuning) {
    if (tuning->mode == TuneMode::fraction && !(tuning->fraction > 0.0 && tuning->fraction < 1.0))
      throw InvalidArgument("config: tuning fraction must lie in (0, 1)");
    for (const auto& [_, g] : tuning->grids)
      if (g.size() == 0) throw InvalidArgument("config: empty tuning grid");
  }
  if (dataset.kind == DatasetKind::rotating) dataset.rotating.validate();
}

ExperimentConfig parse_experiment_config(const Json& j) {
  reject_unknown(j, {"dataset", "learners", "replications", "seed", "tuning", "output_dir", "plot", "log_scale", "threads"}, "config");
  ExperimentConfig c;
  if (!j.contains("dataset")) throw InvalidArgument("config: missing 'dataset'");
  c.dataset = parse_dataset_json(j["dataset"]);
  if (!j.contains("learners") || !j["learners"].is_array()) throw InvalidArgument("config: 'learners' must be an array");
  for (const auto& l : j["learners"]) c.learners.push_back(parse_learner_json(l));
  if (j.contains("replications")) c.replications = as_integer(j["replications"], "config.replications");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw InvalidArgument("config.seed: expected a nonnegative integer");
    c.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("tuning") && !j["tuning"].is_null()) c.tuning = parse_tuning_json(j["tuning"]);
  if (j.contains("output_dir")) c.output_dir = as_string(j["output_dir"], "config.output_dir");
  if (j.contains("plot")) c.plot = as_bool(j["plot"], "config.plot");
  if (j.contains("log_scale")) c.log_scale = as_bool(j["log_scale"], "config.log_scale");
  if (j.contains("threads")) c.threads = static_cast<unsigned>(as_count(j["threads"], "config.threads"));
  c.validate();
  return c;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw DataError(path.string() + ": " + e.what());
  }
  return parse_experiment_config(j);
}

DatasetSpec parse_dataset_spec(std::string_view text) {
  Json j;
  const auto colon = text.find(':');
  j["kind"] = std::string(text.substr(0, colon));
  if (colon != std::string_view::npos) {
    std::string_view rest = text.substr(colon + 1);
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
      if (item.empty()) continue;
      const auto eq = item.find('=');
      if (eq == std::string_view::npos) throw InvalidArgument("dataset spec: '" + std::string(item) + "' is not key=value");
      const std::string key(item.substr(0, eq));
      const std::string_view value = item.substr(eq + 1);
      double v = 0.0;
      if (parse_double(value, v)) j[key] = v;
      else j[key] = std::string(value);
    }
  }
  return parse_dataset_json(j);
}

Json to_json(const LearnerConfig& c) {
  Json j;
  j["algorithm"] = std::string(algorithm_name(c.algorithm));
  switch (c.algorithm) {
    case Algorithm::nlms:
      j["mu"] = number_json(c.mu);
      j["eps"] = number_json(c.eps);
      break;
    case Algorithm::rls:
    case Algorithm::arowr:
      j["r"] = number_json(c.r);
      break;
    case Algorithm::crrls:
      j["r"] = number_json(c.r);
      j["T0"] = c.reset_period ? Json(*c.reset_period) : Json("inf");
      break;
    case Algorithm::aar:
      j["b"] = number_json(c.b);
      break;
    case Algorithm::arcor:
      j["r"] = number_json(c.r);
      j["RB"] = number_json(c.radius);
      switch (c.schedule.kind()) {
        case LambdaSchedule::Kind::polynomial: j["q"] = c.schedule.q(); break;
        case LambdaSchedule::Kind::zero: j["lambda"] = 0.0; break;
        case LambdaSchedule::Kind::explicit_list:
          if (c.schedule.repeats_last()) j["lambda"] = c.schedule.values().front();
          else j["lambdas"] = c.schedule.values();
          break;
      }
      break;
    case Algorithm::laser:
      j["b"] = number_json(c.b);
      j["c"] = number_json(c.c);
      if (c.y_bound) j["Y"] = number_json(*c.y_bound);
      break;
  }
  return j;
}

Json to_json(const DatasetSpec& d) {
  Json j;
  j["kind"] = std::string(dataset_kind_name(d.kind));
  switch (d.kind) {
    case DatasetKind::rotating:
      j["T"] = d.rotating.length;
      j["d"] = d.rotating.dim;
      j["pairs"] = d.rotating.pairs;
      j["sigma_major"] = d.rotating.sigma_major;
      j["sigma_minor"] = d.rotating.sigma_minor;
      j["sigma_rest"] = d.rotating.sigma_rest;
      j["drift_per_step"] = d.rotating.drift_per_step;
      j["noise_std"] = d.rotating.noise_std;
      break;
    case DatasetKind::fir_echo:
    case DatasetKind::flange_echo:
      j["signal_length"] = d.echo.signal_length;
      j["filter_order"] = d.echo.filter_order;
      j["noise_std"] = d.echo.noise_std;
      if (d.kind == DatasetKind::fir_echo) {
        j["taps"] = d.echo.taps;
        j["amplitude_period"] = d.echo.amplitude_period;
      } else {
        j["amplitude"] = d.echo.flange_amplitude;
        j["delay_period"] = d.echo.delay_period;
      }
      j["sample_rate"] = d.echo.sample_rate;
      if (!d.echo.signal_path.empty()) j["signal_path"] = d.echo.signal_path;
      break;
    case DatasetKind::csv:
      j["path"] = d.csv_path;
      break;
  }
  return j;
}

Json to_json(const ExperimentConfig& c) {
  Json j;
  j["dataset"] = to_json(c.dataset);
  j["learners"] = Json::array();
  for (const auto& l : c.learners) j["learners"].push_back(to_json(l));
  j["replications"] = c.replications;
  j["seed"] = c.seed;
  if (c.tuning) {
    Json t;
    t["mode"] = c.tuning->mode == TuneMode::sequence ? "sequence" : "fraction";
    if (c.tuning->mode == TuneMode::fraction) t["fraction"] = c.tuning->fraction;
    t["metric"] = c.tuning->metric == TuneMetric::final_loss ? "final" : "mean";
    Json grids = Json::object();
    for (const auto& [alg, g] : c.tuning->grids) {
      Json gj = Json::object();
      for (const auto& [k, v] : g.axes) {
        Json arr = Json::array();
        for (double x : v) arr.push_back(number_json(x));
        gj[k] = arr;
      }
      grids[std::string(algorithm_name(alg))] = gj;
    }
    t["grids"] = grids;
    j["tuning"] = t;
  }
  j["output_dir"] = c.output_dir;
  j["plot"] = c.plot;
  j["log_scale"] = c.log_scale;
  j["threads"] = c.threads;
  return j;
}

}  // namespace driftreg
