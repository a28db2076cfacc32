#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "driftreg/error.hpp"
#include "driftreg/laser.hpp"
#include "driftreg/learners.hpp"
#include "driftreg/oracles.hpp"
#include "test_util.hpp"

using namespace driftreg;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Sample sample1(double x, double y) { return Sample{Vector{x}, y}; }

}  // namespace

TEST(LaserPredict, ZeroEvidence) {
  const LaserConfig cfg{0.5, 10.0};
  LaserState s = LaserState::initial(3, cfg);
  EXPECT_EQ(laser_predict(s, Vector{1, -2, 3}, cfg), 0.0);
}

TEST(LaserPredict, FiniteCHandExample) {
  const LaserConfig cfg{0.5, 1.0};
  LaserState s = LaserState::initial(1, cfg);
  EXPECT_EQ(laser_step(s, sample1(1, 1), cfg), 0.0);
  EXPECT_NEAR(laser_predict(s, Vector{1}, cfg), 0.25, 1e-15);
}

TEST(LaserPredict, InfiniteCHandExample) {
  const LaserConfig cfg{1.0, kInf};
  LaserState s = LaserState::initial(1, cfg);
  laser_update(s, sample1(1, 1), cfg);
  const double laser = laser_predict(s, Vector{1}, cfg);
  EXPECT_NEAR(laser, 1.0 / 3.0, 1e-15);

  LinearState aar = LinearState::initial(1, 1.0);
  aar_step(aar, sample1(1, 1), 1.0);
  LinearState probe = aar;
  EXPECT_NEAR(aar_step(probe, sample1(1, 0), 1.0), laser, 1e-15);
}

TEST(LaserUpdate, BaseCase) {
  const LaserConfig cfg{1.0, kInf, std::nullopt, true};
  LaserState s = LaserState::initial(1, cfg);
  laser_update(s, sample1(1, 1), cfg);
  EXPECT_EQ(s.d(0, 0), 2.0);
  EXPECT_EQ(s.e[0], 1.0);
  EXPECT_EQ(s.f, 1.0);
}

TEST(LaserUpdate, TwoStepRecursion) {
  const LaserConfig cfg{0.5, 1.0};
  LaserState s = LaserState::initial(1, cfg);
  EXPECT_EQ(laser_step(s, sample1(1, 1), cfg), 0.0);
  EXPECT_NEAR(laser_step(s, sample1(1, 1), cfg), 0.25, 1e-15);
  EXPECT_NEAR(s.d(0, 0), 1.6, 1e-15);
  EXPECT_NEAR(s.e[0], 1.4, 1e-15);
}

TEST(LaserUpdate, ZeroSampleAtInfiniteC) {
  const LaserConfig cfg{1.0, kInf};
  LaserState s = LaserState::initial(2, cfg);
  laser_update(s, Sample{Vector{1, 2}, 3}, cfg);
  const LaserState before = s;
  laser_update(s, Sample{Vector{0, 0}, 0}, cfg);
  EXPECT_EQ(s.d, before.d);
  EXPECT_EQ(s.e, before.e);
}

TEST(LaserStep, InfiniteCMatchesAar) {
  Rng rng(1);
  for (double b : {0.1, 1.0, 7.0}) {
    const LaserConfig cfg{b, kInf};
    LaserState s = LaserState::initial(4, cfg);
    LinearState aar = LinearState::initial(4, 1.0 / b);
    for (const auto& smp : testutil::random_samples(rng, 200, 4)) {
      EXPECT_NEAR(laser_step(s, smp, cfg), aar_step(aar, smp, b), 1e-12);
    }
  }
}

TEST(LaserStep, ShrinkageFormAgrees) {
  Rng rng(2);
  for (double c : {2.0, 30.0, 1e4}) {
    const LaserConfig cfg{0.5, c};
    LaserState s = LaserState::initial(3, cfg);
    for (const auto& smp : testutil::random_samples(rng, 150, 3)) {
      const double direct = laser_predict(s, smp.x, cfg);
      const double shrink = laser_predict_shrinkage(s, smp.x, cfg);
      EXPECT_NEAR(direct, shrink, 1e-9 * std::max(1.0, std::abs(direct)));
      laser_update(s, smp, cfg);
    }
  }
}

TEST(LaserStep, ClosedFormMinimumOfQ) {
  Rng rng(3);
  for (int k = 0; k < 30; ++k) {
    const std::size_t d = 1 + k % 3;
    const std::size_t t = 1 + k % 5;
    const LaserConfig cfg{rng.uniform(0.2, 2.0), rng.uniform(3.0, 50.0), std::nullopt, true};
    const auto samples = testutil::random_samples(rng, t, d);
    LaserState s = LaserState::initial(d, cfg);
    for (const auto& smp : samples) laser_update(s, smp, cfg);
    const double closed = s.f - dot(s.e, spd_solve(s.d, s.e));
    const auto brute = oracle::min_q_bruteforce(samples, cfg.b, cfg.c);
    EXPECT_NEAR(closed, brute.value, 1e-6);
    // The minimizing last comparator is D_t^{-1} e_t.
    const Vector w = laser_weights(s);
    for (std::size_t i = 0; i < d; ++i) EXPECT_NEAR(brute.argmin.back()[i], w[i], 1e-6);
  }
}

TEST(LaserStep, EigenvalueCapAlongRun) {
  Rng rng(4);
  const LaserConfig cfg{1.0, 40.0};
  LaserState s = LaserState::initial(3, cfg);
  double x_max = 0.0;
  for (const auto& smp : testutil::random_samples(rng, 400, 3, 2.0)) {
    laser_update(s, smp, cfg);
    x_max = std::max(x_max, norm(smp.x));
    EXPECT_LE(max_eigenvalue(s.d), laser_eigenvalue_cap(x_max, cfg.b, cfg.c) + 1e-9);
  }
}

TEST(LaserStep, ClippingIsOptIn) {
  const LaserConfig open{1.0, kInf};
  const LaserConfig clipped{1.0, kInf, 0.2};
  LaserState a = LaserState::initial(1, open);
  LaserState b = LaserState::initial(1, clipped);
  laser_update(a, sample1(1, 1), open);
  laser_update(b, sample1(1, 1), clipped);
  EXPECT_NEAR(laser_predict(a, Vector{1}, open), 1.0 / 3.0, 1e-15);
  EXPECT_EQ(laser_predict(b, Vector{1}, clipped), 0.2);
}

TEST(LaserView, InitialSigma) {
  const LaserConfig cfg{0.5, 2.0};
  const LaserState s = LaserState::initial(2, cfg);
  EXPECT_EQ(laser_sigma(s, cfg), SymMatrix::identity(2, 1.5));
  EXPECT_EQ(laser_weights(s), Vector(2));
}

TEST(LaserLearner, WrapperMatchesStepFunction) {
  Rng rng(5);
  const LaserConfig cfg{0.7, 25.0};
  LaserLearner l(3, cfg);
  LaserState s = LaserState::initial(3, cfg);
  for (const auto& smp : testutil::random_samples(rng, 60, 3)) {
    EXPECT_EQ(l.step(smp), laser_step(s, smp, cfg));
  }
  EXPECT_EQ(l.state().d, s.d);
  // update without a preceding predict recomputes the terms.
  const Sample extra{Vector{0.1, 0.2, 0.3}, 1.0};
  l.update(extra.x, extra.y);
  laser_update(s, extra, cfg);
  EXPECT_EQ(l.state().e, s.e);
}

TEST(LaserConfig, Validation) {
  EXPECT_THROW((LaserConfig{0.0, 1.0}.validate()), InvalidArgument);
  EXPECT_THROW((LaserConfig{2.0, 1.0}.validate()), InvalidArgument);
  EXPECT_THROW((LaserConfig{1.0, 1.0}.validate()), InvalidArgument);
  EXPECT_THROW((LaserConfig{1.0, 5.0, -1.0}.validate()), InvalidArgument);
  EXPECT_NO_THROW((LaserConfig{1.0, kInf}.validate()));
}

TEST(TuneC, LowDrift) {
  EXPECT_NEAR(tune_c_low_drift(1000, 1, 2, 1, 8, 1.0).c, 50.0, 1e-9);
  EXPECT_NEAR(tune_c_low_drift(1000, 1, 2, 1, std::sqrt(2.0) * 2000.0, 1.0).c, 1.0, 1e-12);
  EXPECT_TRUE(tune_c_low_drift(1000, 1, 2, 1, 8, 1.0).applicable);
  EXPECT_FALSE(tune_c_low_drift(1000, 1, 2, 1, 1e6, 1.0).applicable);
  EXPECT_THROW(tune_c_low_drift(0, 1, 2, 1, 8, 1.0), InvalidArgument);
}

TEST(TuneC, HighDrift) {
  EXPECT_NEAR(tune_c_high_drift(300, 1, 1, 1, 0.5, 4), 15.0, 1e-12);
  EXPECT_NEAR(tune_c_high_drift(300, 1, 1, 1, 0.5, 900), 1.0, 1e-12);
  EXPECT_NEAR(tune_c_high_drift(1200, 1, 1, 1, 0.5, 4), 30.0, 1e-12);
  EXPECT_THROW(tune_c_high_drift(300, 1, 1, 1, 0.5, 0), InvalidArgument);
}
