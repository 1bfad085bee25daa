#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "roitrack/metrics.hpp"

using namespace roitrack;

namespace {

TrialRecord record_from_p(const std::vector<double>& ps, double dt) {
  TrialRecord rec;
  rec.config.dt = dt;
  for (std::size_t i = 0; i < ps.size(); ++i) {
    TrialSample s;
    s.tick = i;
    s.t = static_cast<double>(i) * dt;
    s.p = ps[i];
    rec.samples.push_back(s);
  }
  return rec;
}

TrialRecord random_record(std::mt19937_64& rng, std::size_t len) {
  std::uniform_real_distribution<double> p(0.2, 2.0);
  std::vector<double> ps;
  for (std::size_t i = 0; i < len; ++i) ps.push_back(p(rng));
  auto rec = record_from_p(ps, 1.0 / 30.0);
  std::bernoulli_distribution coin(0.3);
  for (auto& s : rec.samples) {
    if (s.p > 1.0) (coin(rng) ? s.yaw_cmd : s.pitch_cmd) = 0.3;
  }
  return rec;
}

}  // namespace

TEST(DetectExcursions, NeverExits) {
  EXPECT_TRUE(detect_excursions(record_from_p({0.5, 0.5, 0.5}, 1.0)).empty());
}

TEST(DetectExcursions, HandWalk) {
  const auto ex = detect_excursions(record_from_p({0.8, 1.2, 1.4, 0.9}, 1.0));
  ASSERT_EQ(ex.size(), 1u);
  EXPECT_EQ(ex[0].t_start, 1.0);
  EXPECT_EQ(ex[0].t_end, 3.0);
  EXPECT_EQ(ex[0].p_max, 1.4);
  EXPECT_FALSE(ex[0].open);
}

TEST(DetectExcursions, BoundaryIsNotAnExcursion) {
  EXPECT_TRUE(detect_excursions(record_from_p({1.0, 1.0, 0.9}, 1.0)).empty());
}

TEST(DetectExcursions, OpenAtEndIsClosedAndFlagged) {
  const auto ex = detect_excursions(record_from_p({0.5, 1.5, 1.7, 1.6}, 1.0));
  ASSERT_EQ(ex.size(), 1u);
  EXPECT_TRUE(ex[0].open);
  EXPECT_EQ(ex[0].t_start, 1.0);
  EXPECT_EQ(ex[0].t_end, 3.0);
  EXPECT_EQ(ex[0].p_max, 1.7);
}

TEST(DetectExcursions, OpeningOnLastSampleGetsOneStep) {
  const auto ex = detect_excursions(record_from_p({0.5, 0.5, 1.3}, 0.5));
  ASSERT_EQ(ex.size(), 1u);
  EXPECT_TRUE(ex[0].open);
  EXPECT_DOUBLE_EQ(ex[0].breadth(), 0.5);
}

TEST(DetectExcursions, EmptyRecordRejected) {
  EXPECT_THROW(detect_excursions(TrialRecord{}), std::invalid_argument);
}

TEST(DetectExcursions, CountMatchesDownwardCrossings) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rec = random_record(rng, 300);
    int down = 0;
    for (std::size_t i = 1; i < rec.samples.size(); ++i) {
      down += rec.samples[i - 1].p > 1.0 && rec.samples[i].p <= 1.0;
    }
    const auto ex = detect_excursions(rec);
    const int open = rec.samples.back().p > 1.0;
    ASSERT_EQ(static_cast<int>(ex.size()), down + open);
    for (const auto& e : ex) {
      ASSERT_GT(e.t_end, e.t_start);
      ASSERT_GT(e.p_max, 1.0);
    }
  }
}

TEST(PeakSensitivity, HeightOverBreadth) {
  EXPECT_NEAR(peak_sensitivity({0.0, 1.0, 1.6, false}), 0.6, 1e-15);
  EXPECT_NEAR(peak_sensitivity({0.0, 1.0, 1.6, false}, PeakHeight::Absolute), 1.6, 1e-15);
}

TEST(PeakSensitivity, ShallowSlowPeaksScoreLow) {
  EXPECT_LT(peak_sensitivity({0.0, 1000.0, 1.0 + 1e-6, false}), 1e-8);
}

TEST(PeakSensitivity, RatioInvariant) {
  const double a = peak_sensitivity({2.0, 2.5, 1.3, false});
  const double b = peak_sensitivity({2.0, 3.0, 1.6, false});
  EXPECT_NEAR(a, b, 1e-12);
}

TEST(PeakSensitivity, ZeroBreadthRejected) {
  EXPECT_THROW(peak_sensitivity({1.0, 1.0, 1.5, false}), std::invalid_argument);
}

TEST(Normalize, TwoArenaArithmetic) {
  const auto a1 = normalize(0.6045, 18);
  const auto a2 = normalize(0.4536, 13);
  ASSERT_TRUE(a1 && a2);
  EXPECT_NEAR(*a1, 0.0336, 5e-5);
  EXPECT_NEAR(*a2, 0.0349, 5e-5);
  SensitivityReport r1, r2;
  r1.normalized_s = a1;
  r2.normalized_s = a2;
  const std::vector<SensitivityReport> both{r1, r2};
  const auto cross = cross_arena_normalized(both);
  ASSERT_TRUE(cross);
  EXPECT_NEAR(*cross, 0.0342, 5e-5);
  EXPECT_NEAR(*cross, 0.034, 0.001);
}

TEST(Normalize, AbsentForZeroCount) {
  EXPECT_FALSE(normalize(0.5, 0).has_value());
  EXPECT_FALSE(cross_arena_normalized({}).has_value());
}

TEST(ControlExpenditure, AllIdle) {
  EXPECT_EQ(control_expenditure(record_from_p({0.1, 0.2}, 1.0 / 30)), (ControlExpenditure{0, 0, 0}));
}

TEST(ControlExpenditure, TenYawSamples) {
  auto rec = record_from_p(std::vector<double>(10, 2.0), 1.0 / 30.0);
  for (auto& s : rec.samples) s.yaw_cmd = 0.3;
  const auto e = control_expenditure(rec);
  EXPECT_NEAR(e.yaw_seconds, 0.3333, 1e-4);
  EXPECT_EQ(e.pitch_seconds, 0.0);
  EXPECT_EQ(e.overlap_seconds, 0.0);
}

TEST(ControlExpenditure, OverlapCountsBothAxes) {
  auto rec = record_from_p({2.0, 2.0}, 1.0);
  rec.samples[0].yaw_cmd = 0.3;
  rec.samples[0].pitch_cmd = 0.3;
  EXPECT_EQ(control_expenditure(rec), (ControlExpenditure{1.0, 1.0, 1.0}));
}

TEST(Summarize, NoExcursions) {
  const std::vector<TrialRecord> recs{record_from_p({0.5, 0.6}, 1.0)};
  const auto r = summarize(recs);
  EXPECT_EQ(r.n, 0u);
  EXPECT_TRUE(r.success);
  EXPECT_FALSE(r.mean_s.has_value());
  EXPECT_FALSE(r.normalized_s.has_value());
}

TEST(Summarize, HandComputed) {
  // Two excursions: (h 0.4, b 2) -> 0.2 and (h 1.0, b 1) -> 1.0; mean 0.6 over 2 per trial.
  const std::vector<TrialRecord> recs{record_from_p({0.5, 1.2, 1.4, 0.9, 2.0, 0.7}, 1.0)};
  const auto r = summarize(recs);
  ASSERT_EQ(r.n, 2u);
  EXPECT_NEAR(r.per_peak_s[0], 0.2, 1e-12);
  EXPECT_NEAR(r.per_peak_s[1], 1.0, 1e-12);
  EXPECT_NEAR(*r.mean_s, 0.6, 1e-12);
  EXPECT_NEAR(*r.normalized_s, 0.3, 1e-12);
}

TEST(Summarize, IdenticalRecordsKeepTheMean) {
  const auto rec = record_from_p({0.5, 1.2, 1.4, 0.9, 2.0, 0.7}, 1.0);
  const std::vector<TrialRecord> one{rec}, two{rec, rec};
  const auto a = summarize(one);
  const auto b = summarize(two);
  EXPECT_EQ(a.mean_s, b.mean_s);
  EXPECT_EQ(a.n_per_trial, b.n_per_trial);
  EXPECT_EQ(b.n, 2 * a.n);
}

TEST(Summarize, LostSampleMeansFailure) {
  auto rec = record_from_p({0.5, 0.5}, 1.0);
  rec.samples[1].visible = false;
  const std::vector<TrialRecord> recs{rec};
  const auto r = summarize(recs);
  EXPECT_FALSE(r.success);
  EXPECT_EQ(r.lost_samples, 1u);
}

TEST(Summarize, OpenExcursionsCanBeExcluded) {
  const std::vector<TrialRecord> recs{record_from_p({0.5, 1.5, 0.5, 1.5}, 1.0)};
  EXPECT_EQ(summarize(recs).n, 2u);
  EXPECT_EQ(summarize(recs, {PeakHeight::AboveBoundary, false}).n, 1u);
}

TEST(Summarize, PermutationInvariant) {
  std::mt19937_64 rng(77);
  std::vector<TrialRecord> recs;
  for (int i = 0; i < 12; ++i) recs.push_back(random_record(rng, 400));
  const auto base = summarize(recs);
  for (int k = 0; k < 20; ++k) {
    std::shuffle(recs.begin(), recs.end(), rng);
    ASSERT_EQ(summarize(recs), base);
  }
}

TEST(Summarize, SimulatedBatchHasNoOverlapAndActiveExcursions) {
  for (int arena : {1, 2}) {
    auto cfg = baseline_config(arena);
    const auto seeds = consecutive_seeds(3, 4);
    const auto recs = run_batch(cfg, 4, seeds);
    const auto r = summarize(recs);
    EXPECT_EQ(r.overlap_seconds, 0.0);
    for (const auto& rec : recs) {
      // Every sample strictly inside an excursion carries a nonzero command.
      for (std::size_t i = 1; i + 1 < rec.samples.size(); ++i) {
        const auto& s = rec.samples[i];
        if (s.p > 1.0 && rec.samples[i - 1].p > 1.0 && rec.samples[i + 1].p > 1.0) {
          ASSERT_TRUE(s.yaw_cmd != 0.0 || s.pitch_cmd != 0.0);
        }
      }
    }
  }
}
