#include "gcdmd/pipeline.hpp"
#include "gcdmd/synth.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>
#include <cmath>

using namespace gcdmd;

TEST(Validate, ConstantSeriesFailsPe) {
  const TimeSeries ts(Matrix::Constant(6, 50, 1.5), 0.01);
  const ValidationReport v = validate(ts, 2);
  EXPECT_FALSE(v.pe.satisfied);
  EXPECT_FALSE(v.gct_run);
  EXPECT_FALSE(v.usable);
}

TEST(Validate, CoherencySmallLagNotUsable) {
  const Split sp = testutil::coherency_split();
  const ValidationReport v = validate(sp.train, 2, testutil::coherency_options());
  EXPECT_FALSE(v.usable);
}

TEST(Validate, CoherencyUsableAtSweepOptimum) {
  const Split sp = testutil::coherency_split();
  const auto opts = testutil::coherency_options();
  const SweepReport rep = sweep(sp.train, sp.test, 1, testutil::coherency_lag_max, opts);
  ASSERT_TRUE(rep.l_star.has_value());
  const ValidationReport v = validate(sp.train, *rep.l_star, opts);
  EXPECT_TRUE(v.pe.satisfied);
  EXPECT_TRUE(v.gct.causal);
  EXPECT_TRUE(v.usable);
}

TEST(Rmse, Basics) {
  const Matrix a = testutil::random_matrix(3, 20, 1);
  EXPECT_EQ(rmse(a, a), Vector::Zero(3));
  const Vector ones = rmse(a.array() + 1.0, a);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(ones(i), 1.0, 1e-15);
  const Matrix b = testutil::random_matrix(3, 20, 2);
  const Vector r = rmse(a, b);
  for (int i = 0; i < 3; ++i) {
    double s = 0.0;
    for (int t = 0; t < 20; ++t) s += (a(i, t) - b(i, t)) * (a(i, t) - b(i, t));
    EXPECT_NEAR(r(i), std::sqrt(s / 20), 1e-12);
  }
  EXPECT_THROW(rmse(a, b.leftCols(3)), Error);
}

TEST(Split, Sizes) {
  const TimeSeries ts(testutil::random_matrix(2, 360, 3), 0.01);
  const Split sp = split_series(ts, 2.0 / 3.0);
  EXPECT_EQ(sp.train.samples(), 240);
  EXPECT_EQ(sp.test.samples(), 120);
  EXPECT_EQ(sp.test.data.col(0), ts.data.col(240));
  EXPECT_THROW(split_series(ts, 1.0), Error);
}

TEST(Analyze, TwoModeLinearSystemExact) {
  // one channel carrying two damped oscillations, so four eigenvalues
  Matrix d(1, 150);
  for (int k = 0; k < 150; ++k) d(0, k) = std::pow(0.99, k) * std::cos(0.2 * k) + 0.5 * std::pow(0.97, k) * std::sin(0.7 * k);
  const Split sp = split_series(TimeSeries(d, 1.0), 2.0 / 3.0);
  PipelineOptions o;
  o.rank = RankPolicy::fixed(4);
  const auto [v, a] = analyze(sp.train, sp.test, 6, o);
  EXPECT_FALSE(v.pe.satisfied);  // rank 4 < 6 lags
  EXPECT_LE(a.train_rmse(0), 1e-6);
  EXPECT_LE(a.test_rmse(0), 1e-6);
  EXPECT_TRUE(a.spectrum.all_inside);
}

TEST(Analyze, CoherencyLagOneUnderfits) {
  const Split sp = testutil::coherency_split();
  const auto opts = testutil::coherency_options();
  const SweepReport rep = sweep(sp.train, sp.test, 1, testutil::coherency_lag_max, opts);
  ASSERT_TRUE(rep.l_star.has_value());
  const auto [v1, a1] = analyze(sp.train, sp.test, 1, opts);
  const auto [vs, as] = analyze(sp.train, sp.test, *rep.l_star, opts);
  EXPECT_GT(a1.train_rmse.mean(), 10.0 * as.train_rmse.mean());
}

TEST(Analyze, CoherencyOverfitsWhenGctFails) {
  const Split sp = testutil::coherency_split();
  const auto opts = testutil::coherency_options();
  const SweepReport rep = sweep(sp.train, sp.test, 1, testutil::coherency_lag_max, opts);
  bool found = false;
  for (const auto& r : rep.records) {
    if (!r.ok || !r.validation.pe.satisfied || r.validation.gct.causal) continue;
    if (r.analysis.test_rmse.mean() > 10.0 * r.analysis.train_rmse.mean()) found = true;
  }
  EXPECT_TRUE(found);
}

TEST(Sweep, WidthOneRange) {
  const Split sp = testutil::coherency_split();
  const SweepReport rep = sweep(sp.train, sp.test, 5, 5, testutil::coherency_options());
  ASSERT_EQ(rep.records.size(), 1u);
  EXPECT_EQ(rep.records[0].lag, 5);
  EXPECT_THROW(rep.at(6), Error);
  EXPECT_THROW(sweep(sp.train, sp.test, 3, 2), Error);
}

TEST(Sweep, PValueDropsAndConditionFalls) {
  const Split sp = testutil::coherency_split();
  const SweepReport rep = sweep(sp.train, sp.test, 1, testutil::coherency_lag_max, testutil::coherency_options());
  ASSERT_TRUE(rep.l_star.has_value());
  const int ls = *rep.l_star;
  EXPECT_LT(rep.at(ls).validation.gct.wald.p_value, rep.alpha);
  if (ls > 1 && rep.at(ls - 1).validation.gct_run) EXPECT_GE(rep.at(ls - 1).validation.gct.wald.p_value, rep.alpha);
  const auto first = rep.first_pe_lag();
  ASSERT_TRUE(first.has_value());
  EXPECT_LT(rep.at(ls + 2).analysis.operator_condition.value, rep.at(*first).analysis.operator_condition.value);
}

TEST(Sweep, RecordsErrorsAndContinues) {
  // lags beyond m-1 cannot be embedded
  const TimeSeries tr(testutil::random_matrix(1, 8, 4), 1.0), te(testutil::random_matrix(1, 4, 5), 1.0);
  const SweepReport rep = sweep(tr, te, 6, 9);
  ASSERT_EQ(rep.records.size(), 4u);
  EXPECT_FALSE(rep.at(9).ok);
  EXPECT_FALSE(rep.at(9).error.empty());
}

TEST(GctSeriesTest, EdgeModeUsesOldestAndNewestBlocks) {
  const Matrix d = testutil::random_matrix(2, 12, 6);
  const HankelPair hp = build_hankel(d, 3);
  const GctSeries s = gct_series(hp, 2, GctMode::edge);
  ASSERT_EQ(s.target.size(), 9);
  for (int j = 0; j < 9; ++j) {
    EXPECT_NEAR(s.source(j), 0.5 * (d(0, j) + d(1, j)), 1e-15);
    EXPECT_NEAR(s.target(j), 0.5 * (d(0, j + 2) + d(1, j + 2)), 1e-15);
  }
  const GctSeries f = gct_series(hp, 2, GctMode::first_row);
  for (int j = 0; j < 9; ++j) EXPECT_NEAR(f.source(j), 0.5 * (d(0, j + 1) + d(1, j + 1)), 1e-15);
}

TEST(GctSeriesTest, EdgeAtLagOneIsNonIdentified) {
  const Split sp = testutil::coherency_split();
  const HankelPair hp = build_hankel(sp.train, 1);
  const GctResult g = run_gct(hp, 6, 0.05, GctMode::edge, OrderSpec::of(2));
  EXPECT_EQ(g.status, GctStatus::non_identified);
  EXPECT_FALSE(g.causal);
}
