#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "driftreg/error.hpp"
#include "driftreg/learner_config.hpp"
#include "driftreg/learners.hpp"
#include "test_util.hpp"

using namespace driftreg;

namespace {

LinearState scalar_state(double w, double sigma) {
  LinearState s = LinearState::initial(1);
  s.w[0] = w;
  s.sigma = SymMatrix::identity(1, sigma);
  return s;
}

Sample sample1(double x, double y) { return Sample{Vector{x}, y}; }

}  // namespace

TEST(PredictLinear, Examples) {
  LinearState s = LinearState::initial(2);
  EXPECT_EQ(predict_linear(s, Vector{3, -7}), 0.0);
  s.w = Vector{1, 2};
  EXPECT_EQ(predict_linear(s, Vector{3, 1}), 5.0);
  s.w = Vector{1, 0};
  EXPECT_EQ(predict_linear(s, Vector{0, 1}), 0.0);
  EXPECT_THROW(predict_linear(s, Vector{1}), DimensionMismatch);
}

TEST(Rls, UnitForgettingStep) {
  LinearState s = scalar_state(0, 1);
  EXPECT_EQ(rls_step(s, sample1(1, 1), 1.0), 0.0);
  EXPECT_DOUBLE_EQ(s.w[0], 0.5);
  EXPECT_DOUBLE_EQ(s.sigma(0, 0), 0.5);
  EXPECT_EQ(s.t, 1);
}

TEST(Rls, HalfForgettingStep) {
  LinearState s = scalar_state(0, 1);
  rls_step(s, sample1(1, 1), 0.5);
  EXPECT_NEAR(s.w[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(s.sigma(0, 0), 2.0 / 3.0, 1e-15);
}

TEST(Rls, ZeroInputLeavesStateWithUnitForgetting) {
  Rng rng(1);
  LinearState s = LinearState::initial(3);
  for (const auto& smp : testutil::random_samples(rng, 5, 3)) rls_step(s, smp, 1.0);
  const LinearState before = s;
  EXPECT_DOUBLE_EQ(rls_step(s, Sample{Vector(3), 2.0}, 1.0), predict_linear(before, Vector(3)));
  EXPECT_EQ(s.w, before.w);
  EXPECT_EQ(s.sigma, before.sigma);
}

TEST(Rls, ZeroInputWithForgettingInflatesSigma) {
  // For r < 1, (r Sigma^{-1})^{-1} = Sigma / r even when x = 0.
  LinearState s = scalar_state(0.3, 0.8);
  rls_step(s, Sample{Vector{0.0}, 1.0}, 0.5);
  EXPECT_DOUBLE_EQ(s.w[0], 0.3);
  EXPECT_DOUBLE_EQ(s.sigma(0, 0), 1.6);
}

TEST(Rls, MatchesInverseFormRecursion) {
  // Sigma_t^{-1} = r Sigma_{t-1}^{-1} + x x^T, tracked by explicit inversion.
  Rng rng(2);
  const double r = 0.9;
  LinearState s = LinearState::initial(4);
  SymMatrix precision = SymMatrix::identity(4);
  for (const auto& smp : testutil::random_samples(rng, 30, 4)) {
    rls_step(s, smp, r);
    precision *= r;
    precision.rank_one_update(1.0, smp.x);
    EXPECT_LT(max_abs_diff(s.sigma, spd_inverse(precision)), 1e-9);
  }
}

TEST(Rls, RejectsBadInput) {
  LinearState s = LinearState::initial(2);
  EXPECT_THROW(rls_step(s, Sample{Vector{1, std::nan("")}, 1.0}, 1.0), DataError);
  EXPECT_THROW(rls_step(s, Sample{Vector{1, 2}, std::numeric_limits<double>::infinity()}, 1.0), DataError);
  EXPECT_THROW(rls_step(s, Sample{Vector{1}, 1.0}, 1.0), DimensionMismatch);
  EXPECT_THROW(RlsLearner(2, 1.5), InvalidArgument);
  EXPECT_THROW(RlsLearner(2, 0.0), InvalidArgument);
  EXPECT_THROW(RlsLearner(0, 1.0), InvalidArgument);
}

TEST(Aar, HandRecursion) {
  LinearState s = LinearState::initial(1, 1.0 / 1.0);
  EXPECT_EQ(aar_step(s, sample1(1, 1), 1.0), 0.0);
  EXPECT_DOUBLE_EQ(s.w[0], 0.5);
  EXPECT_DOUBLE_EQ(s.sigma(0, 0), 0.5);
  EXPECT_NEAR(aar_step(s, sample1(1, 0), 1.0), 1.0 / 3.0, 1e-15);
}

TEST(Aar, ZeroWeightsPredictZero) {
  AarLearner l(3, 2.0);
  EXPECT_EQ(l.predict(Vector{1, 2, 3}), 0.0);
  EXPECT_EQ(l.covariance(), SymMatrix::identity(3, 0.5));
}

TEST(Arowr, HandStep) {
  LinearState s = scalar_state(0, 1);
  arowr_step(s, sample1(1, 1), 0.5);
  EXPECT_NEAR(s.w[0], 2.0 / 3.0, 1e-15);
  EXPECT_NEAR(s.sigma(0, 0), 1.0 / 3.0, 1e-15);
}

TEST(Arowr, UnitRIsRls) {
  Rng rng(3);
  LinearState a = LinearState::initial(5);
  LinearState b = LinearState::initial(5);
  for (const auto& smp : testutil::random_samples(rng, 50, 5)) {
    EXPECT_EQ(arowr_step(a, smp, 1.0), rls_step(b, smp, 1.0));
    EXPECT_EQ(a.w, b.w);
    EXPECT_EQ(a.sigma, b.sigma);
  }
}

TEST(Arowr, ZeroInputUnchanged) {
  LinearState s = scalar_state(0.7, 0.4);
  arowr_step(s, sample1(0, 3), 2.0);
  EXPECT_EQ(s.w[0], 0.7);
  EXPECT_EQ(s.sigma(0, 0), 0.4);
}

TEST(Arowr, SharesMatrixTrajectoryWithAar) {
  // AROWR(r) on x and AAR(b = 1) on x / sqrt(r) have Sigma^AAR = Sigma^AROWR.
  Rng rng(4);
  const double r = 2.5;
  LinearState arowr = LinearState::initial(3);
  LinearState aar = LinearState::initial(3);
  for (const auto& smp : testutil::random_samples(rng, 40, 3)) {
    arowr_step(arowr, smp, r);
    aar_step(aar, Sample{(1.0 / std::sqrt(r)) * smp.x, smp.y}, 1.0);
    EXPECT_LT(max_abs_diff(arowr.sigma, aar.sigma), 1e-9);
  }
}

TEST(PrecisionMonotonicity, ArowrAarAndUnitRls) {
  Rng rng(5);
  LinearState rls = LinearState::initial(4);
  LinearState arowr = LinearState::initial(4);
  LinearState aar = LinearState::initial(4, 0.5);
  for (const auto& smp : testutil::random_samples(rng, 25, 4)) {
    for (auto* st : {&rls, &arowr, &aar}) {
      const SymMatrix before = spd_inverse(st->sigma);
      if (st == &rls) rls_step(*st, smp, 1.0);
      else if (st == &arowr) arowr_step(*st, smp, 0.7);
      else aar_step(*st, smp, 2.0);
      EXPECT_TRUE(is_positive_definite(st->sigma));
      EXPECT_GE(min_eigenvalue(spd_inverse(st->sigma) - before), -1e-10);
    }
  }
}

TEST(CrRls, InfinitePeriodIsBitIdenticalToRls) {
  Rng rng(6);
  LinearState a = LinearState::initial(4);
  LinearState b = LinearState::initial(4);
  for (const auto& smp : testutil::random_samples(rng, 100, 4)) {
    EXPECT_EQ(crrls_step(a, smp, 0.95, std::nullopt), rls_step(b, smp, 0.95));
    EXPECT_EQ(a.w, b.w);
    EXPECT_EQ(a.sigma, b.sigma);
  }
}

TEST(CrRls, PeriodOneResetsEveryStep) {
  Rng rng(7);
  LinearState s = LinearState::initial(3);
  for (const auto& smp : testutil::random_samples(rng, 10, 3)) {
    crrls_step(s, smp, 0.9, 1);
    EXPECT_EQ(s.sigma, SymMatrix::identity(3));
  }
}

TEST(CrRls, ResetFiresOnMultiples) {
  Rng rng(8);
  LinearState s = LinearState::initial(2);
  const auto samples = testutil::random_samples(rng, 4, 2);
  for (std::size_t i = 0; i < 4; ++i) {
    crrls_step(s, samples[i], 1.0, 2);
    EXPECT_EQ(s.sigma == SymMatrix::identity(2), (i + 1) % 2 == 0) << "t=" << i + 1;
  }
}

TEST(CrRls, WeightUpdateUsesPreviousSigma) {
  // With T0 = 1 the weight step still uses Sigma_{t-1} = I, not the reset value.
  LinearState s = scalar_state(0, 1);
  crrls_step(s, sample1(2, 2), 1.0, 1);
  EXPECT_DOUBLE_EQ(s.w[0], 2.0 * 2.0 / (1.0 + 4.0));
}

TEST(Nlms, Examples) {
  LinearState s = LinearState::initial(2);
  nlms_step(s, Sample{Vector{1, 0}, 1.0}, 1.0, 0.0);
  EXPECT_EQ(s.w, (Vector{1, 0}));

  s = LinearState::initial(2);
  nlms_step(s, Sample{Vector{1, 0}, 1.0}, 0.5, 0.0);
  EXPECT_EQ(s.w, (Vector{0.5, 0}));

  s = LinearState::initial(2);
  nlms_step(s, Sample{Vector{2, 0}, 2.0}, 1.0, 0.0);
  EXPECT_EQ(s.w, (Vector{1, 0}));
}

TEST(Nlms, ZeroInputWithoutRegularizerLeavesWeights) {
  LinearState s = LinearState::initial(2);
  s.w = Vector{0.3, -0.2};
  nlms_step(s, Sample{Vector{0, 0}, 5.0}, 1.0, 0.0);
  EXPECT_EQ(s.w, (Vector{0.3, -0.2}));
}

TEST(Nlms, OneStepFitIsExact) {
  Rng rng(9);
  for (int i = 0; i < 50; ++i) {
    LinearState s = LinearState::initial(6);
    s.w = testutil::random_vector(rng, 6);
    const Sample smp{testutil::random_vector(rng, 6), rng.normal()};
    nlms_step(s, smp, 1.0, 0.0);
    EXPECT_NEAR(predict_linear(s, smp.x), smp.y, 1e-12);
  }
}

TEST(Nlms, Validation) {
  EXPECT_THROW(NlmsLearner(2, 0.0, 0.0), InvalidArgument);
  EXPECT_THROW(NlmsLearner(2, 2.5, 0.0), InvalidArgument);
  EXPECT_THROW(NlmsLearner(2, 1.0, -1.0), InvalidArgument);
  EXPECT_NO_THROW(NlmsLearner(2, 2.0, 0.0));
}

TEST(Learners, SigmaStaysSpdOnLongRuns) {
  Rng rng(10);
  const auto samples = testutil::random_samples(rng, 300, 5, 3.0);
  for (Algorithm a : {Algorithm::rls, Algorithm::crrls, Algorithm::arowr, Algorithm::aar}) {
    LearnerConfig c;
    c.algorithm = a;
    c.r = a == Algorithm::arowr ? 0.5 : 0.98;
    c.reset_period = 50;
    auto l = make_learner(c, 5);
    for (const auto& smp : samples) {
      l->step(smp);
      ASSERT_TRUE(is_positive_definite(l->covariance())) << algorithm_name(a) << " t=" << l->steps();
    }
    EXPECT_EQ(l->steps(), 300);
  }
}

TEST(Learners, CloneIsIndependent) {
  RlsLearner a(2, 1.0);
  a.step(Sample{Vector{1, 2}, 3});
  auto b = a.clone();
  b->step(Sample{Vector{-1, 0.5}, 1});
  EXPECT_EQ(a.steps(), 1);
  EXPECT_EQ(b->steps(), 2);
  EXPECT_NE(a.weights(), b->weights());
}

TEST(LearnerConfig, ParseAndLabel) {
  const LearnerConfig c = parse_learner_params(Algorithm::laser, "b=0.5,c=100");
  EXPECT_EQ(c.b, 0.5);
  EXPECT_EQ(c.c, 100.0);
  EXPECT_EQ(c.label(), "laser(b=0.5,c=100)");
  EXPECT_EQ(parse_learner_params(Algorithm::crrls, "T0=inf").label(), "crrls(r=1,T0=inf)");
  EXPECT_EQ(parse_learner_params(Algorithm::crrls, "T0=20").reset_period, 20);
  EXPECT_EQ(parse_learner_params(Algorithm::arcor, "q=2,RB=inf").label(), "arcor(r=1,RB=inf,q=2)");
  EXPECT_EQ(parse_learner_params(Algorithm::arcor, "lambda=0").schedule.kind(), LambdaSchedule::Kind::zero);
}

TEST(LearnerConfig, ParseErrors) {
  EXPECT_THROW(parse_learner_params(Algorithm::laser, "b=1,c=0.5"), InvalidArgument);
  EXPECT_THROW(parse_learner_params(Algorithm::rls, "r=1.5"), InvalidArgument);
  EXPECT_THROW(parse_learner_params(Algorithm::rls, "zz=1"), InvalidArgument);
  EXPECT_THROW(parse_learner_params(Algorithm::rls, "r"), InvalidArgument);
  EXPECT_THROW(parse_learner_params(Algorithm::rls, "r=abc"), InvalidArgument);
  EXPECT_THROW(parse_learner_params(Algorithm::crrls, "T0=2.5"), InvalidArgument);
  EXPECT_THROW(parse_algorithm("kalman"), InvalidArgument);
}

TEST(LearnerConfig, FactoryBuildsEveryAlgorithm) {
  for (Algorithm a : {Algorithm::nlms, Algorithm::rls, Algorithm::crrls, Algorithm::arowr, Algorithm::aar,
                      Algorithm::arcor, Algorithm::laser}) {
    LearnerConfig c;
    c.algorithm = a;
    auto l = make_learner(c, 3);
    EXPECT_EQ(l->name(), algorithm_name(a));
    EXPECT_EQ(l->dim(), 3u);
    EXPECT_EQ(l->predict(Vector{1, 2, 3}), 0.0);
  }
}
