#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <limits>

#include "driftreg/error.hpp"
#include "driftreg/experiment_config.hpp"

using namespace driftreg;
using Json = nlohmann::ordered_json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Json base_json() {
  return Json::parse(R"({
    "dataset": {"kind": "rotating", "T": 300, "d": 8, "pairs": 2, "drift_per_step": 0.02},
    "learners": [
      {"algorithm": "laser", "b": 1, "c": 100},
      {"algorithm": "crrls", "r": 0.99, "T0": "inf"},
      {"algorithm": "arcor", "r": 1, "RB": 2, "lambdas": [0.5, 0.4, 0.3]}
    ],
    "replications": 5,
    "seed": 42,
    "tuning": {"mode": "sequence", "metric": "mean", "grids": {"laser": {"b": [1, 10], "c": [100, 1000, 10000]}}},
    "output_dir": "out",
    "plot": true,
    "log_scale": true,
    "threads": 2
  })");
}

}  // namespace

TEST(ExperimentConfig, ParsesEveryField) {
  const ExperimentConfig c = parse_experiment_config(base_json());
  EXPECT_EQ(c.dataset.kind, DatasetKind::rotating);
  EXPECT_EQ(c.dataset.rotating.length, 300);
  EXPECT_EQ(c.dataset.rotating.dim, 8u);
  EXPECT_EQ(c.dataset.rotating.drift_per_step, 0.02);
  ASSERT_EQ(c.learners.size(), 3u);
  EXPECT_EQ(c.learners[0].c, 100.0);
  EXPECT_FALSE(c.learners[1].reset_period.has_value());
  EXPECT_EQ(c.learners[2].schedule.kind(), LambdaSchedule::Kind::explicit_list);
  EXPECT_EQ(c.replications, 5);
  EXPECT_EQ(c.seed, 42u);
  ASSERT_TRUE(c.tuning.has_value());
  EXPECT_EQ(c.tuning->metric, TuneMetric::mean_loss);
  ASSERT_NE(c.tuning->grid_for(Algorithm::laser), nullptr);
  EXPECT_EQ(c.tuning->grid_for(Algorithm::laser)->size(), 6u);
  EXPECT_EQ(c.tuning->grid_for(Algorithm::rls), nullptr);
  EXPECT_EQ(c.output_dir, "out");
  EXPECT_TRUE(c.plot);
  EXPECT_TRUE(c.log_scale);
  EXPECT_EQ(c.threads, 2u);
}

TEST(ExperimentConfig, RejectsUnknownKeysEverywhere) {
  Json j = base_json();
  j["extra"] = 1;
  EXPECT_THROW(parse_experiment_config(j), InvalidArgument);
  j = base_json();
  j["dataset"]["colour"] = "red";
  EXPECT_THROW(parse_experiment_config(j), InvalidArgument);
  j = base_json();
  j["learners"][0]["gamma"] = 1;
  EXPECT_THROW(parse_experiment_config(j), InvalidArgument);
  j = base_json();
  j["tuning"]["budget"] = 3;
  EXPECT_THROW(parse_experiment_config(j), InvalidArgument);
  j = base_json();
  j["dataset"]["taps"] = 3;  // an echo key on the rotating kind
  EXPECT_THROW(parse_experiment_config(j), InvalidArgument);
}

TEST(ExperimentConfig, RejectsBadValues) {
  Json j = base_json();
  j["replications"] = 0;
  EXPECT_THROW(parse_experiment_config(j), InvalidArgument);
  j = base_json();
  j["replications"] = "five";
  EXPECT_THROW(parse_experiment_config(j), InvalidArgument);
  j = base_json();
  j["learners"] = Json::array();
  EXPECT_THROW(parse_experiment_config(j), InvalidArgument);
  j = base_json();
  j["tuning"] = Json::parse(R"({"fraction": 1.5})");
  EXPECT_THROW(parse_experiment_config(j), InvalidArgument);
  j = base_json();
  j["learners"][0]["c"] = 0.5;
  EXPECT_THROW(parse_experiment_config(j), InvalidArgument);
  j = base_json();
  j["dataset"]["kind"] = "wav";
  EXPECT_THROW(parse_experiment_config(j), InvalidArgument);
  j = base_json();
  j["seed"] = -3;
  EXPECT_THROW(parse_experiment_config(j), InvalidArgument);
  j = base_json();
  j.erase("dataset");
  EXPECT_THROW(parse_experiment_config(j), InvalidArgument);
}

TEST(ExperimentConfig, FractionImpliesFractionMode) {
  Json j = base_json();
  j["tuning"] = Json::parse(R"({"fraction": 0.25})");
  const ExperimentConfig c = parse_experiment_config(j);
  EXPECT_EQ(c.tuning->mode, TuneMode::fraction);
  EXPECT_EQ(c.tuning->fraction, 0.25);
  EXPECT_EQ(c.tuning->metric, TuneMetric::final_loss);
}

TEST(ExperimentConfig, JsonRoundTrip) {
  const ExperimentConfig c = parse_experiment_config(base_json());
  const Json once = to_json(c);
  const ExperimentConfig back = parse_experiment_config(once);
  EXPECT_EQ(to_json(back), once);
  EXPECT_EQ(back.learners, c.learners);
}

TEST(ExperimentConfig, LoadFromFile) {
  const auto path = std::filesystem::temp_directory_path() / "driftreg_cfg_test.json";
  {
    std::ofstream out(path);
    out << base_json().dump();
  }
  EXPECT_EQ(load_experiment_config(path).seed, 42u);
  {
    std::ofstream out(path);
    out << "{ \"dataset\": ";
  }
  EXPECT_THROW(load_experiment_config(path), DataError);
  std::filesystem::remove(path);
  EXPECT_THROW(load_experiment_config(path), DataError);
}

TEST(ParamGrid, ExpansionOrderFirstAxisOutermost) {
  const ParamGrid g{{{"b", {1, 2}}, {"c", {10, 20, 30}}}};
  EXPECT_EQ(g.size(), 6u);
  LearnerConfig base;
  base.algorithm = Algorithm::laser;
  const auto pts = g.expand(base);
  ASSERT_EQ(pts.size(), 6u);
  const std::vector<std::pair<double, double>> expected{{1, 10}, {1, 20}, {1, 30}, {2, 10}, {2, 20}, {2, 30}};
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(pts[i].b, expected[i].first);
    EXPECT_EQ(pts[i].c, expected[i].second);
  }
}

TEST(ParamGrid, JsonPreservesAxisOrder) {
  const ParamGrid g = parse_grid_json(Json::parse(R"({"q": [2, 3], "r": [1], "RB": ["inf", 1]})"));
  ASSERT_EQ(g.axes.size(), 3u);
  EXPECT_EQ(g.axes[0].first, "q");
  EXPECT_EQ(g.axes[2].first, "RB");
  EXPECT_EQ(g.axes[2].second.front(), kInf);
  EXPECT_THROW(parse_grid_json(Json::parse(R"({"r": []})")), InvalidArgument);
  EXPECT_THROW(parse_grid_json(Json::parse(R"({})")), InvalidArgument);
  EXPECT_THROW(parse_grid_json(Json::parse(R"({"zeta": [1]})")), InvalidArgument);
}

TEST(DefaultGrid, EveryAlgorithmHasValidPoints) {
  for (Algorithm a : {Algorithm::nlms, Algorithm::rls, Algorithm::crrls, Algorithm::arowr, Algorithm::aar,
                      Algorithm::arcor, Algorithm::laser}) {
    LearnerConfig base;
    base.algorithm = a;
    const auto pts = default_grid(a).expand(base);
    ASSERT_FALSE(pts.empty());
    for (const auto& p : pts) EXPECT_NO_THROW(p.validate()) << p.label();
  }
}

TEST(DatasetSpec, ParseShortForm) {
  const DatasetSpec r = parse_dataset_spec("rotating:T=500,drift_per_step=0.02");
  EXPECT_EQ(r.kind, DatasetKind::rotating);
  EXPECT_EQ(r.rotating.length, 500);
  EXPECT_EQ(r.rotating.drift_per_step, 0.02);
  EXPECT_EQ(parse_dataset_spec("rotating").rotating.length, 2000);

  const DatasetSpec f = parse_dataset_spec("flange-echo:amplitude=0.3,delay_period=100");
  EXPECT_EQ(f.kind, DatasetKind::flange_echo);
  EXPECT_EQ(f.echo.flange_amplitude, 0.3);
  EXPECT_EQ(f.echo.delay_period, 100);

  const DatasetSpec c = parse_dataset_spec("csv:path=data/x.csv");
  EXPECT_EQ(c.kind, DatasetKind::csv);
  EXPECT_EQ(c.csv_path, "data/x.csv");

  EXPECT_THROW(parse_dataset_spec("rotating:T"), InvalidArgument);
  EXPECT_THROW(parse_dataset_spec("rotating:bogus=1"), InvalidArgument);
  EXPECT_THROW(parse_dataset_spec("nope"), InvalidArgument);
}

TEST(DatasetSpec, MakeDatasetIsPureInSeed) {
  const DatasetSpec spec = parse_dataset_spec("fir-echo:signal_length=400,filter_order=4");
  const Dataset a = make_dataset(spec, 5);
  const Dataset b = make_dataset(spec, 5);
  const Dataset c = make_dataset(spec, 6);
  ASSERT_EQ(a.stream.size(), 400u);
  EXPECT_EQ(a.stream.dim(), 4u);
  EXPECT_FALSE(a.comparator.has_value());
  for (std::size_t t = 0; t < a.stream.size(); ++t) EXPECT_EQ(a.stream.samples[t].y, b.stream.samples[t].y);
  EXPECT_NE(a.stream.samples[10].y, c.stream.samples[10].y);

  const Dataset rot = make_dataset(parse_dataset_spec("rotating:T=50"), 1);
  ASSERT_TRUE(rot.comparator.has_value());
  EXPECT_EQ(rot.comparator->size(), 50u);
}

TEST(LearnerJson, LambdaForms) {
  EXPECT_EQ(parse_learner_json(Json::parse(R"({"algorithm": "arcor", "lambda": 0})")).schedule.kind(),
            LambdaSchedule::Kind::zero);
  EXPECT_EQ(parse_learner_json(Json::parse(R"({"algorithm": "arcor", "q": 3})")).schedule.q(), 3.0);
  EXPECT_THROW(parse_learner_json(Json::parse(R"({"algorithm": "arcor", "lambdas": [0.2, 0.5]})")),
               InvalidArgument);
  EXPECT_THROW(parse_learner_json(Json::parse(R"({"r": 1})")), InvalidArgument);
}
