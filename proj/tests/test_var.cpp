#include "gcdmd/synth.hpp"
#include "gcdmd/var.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>
#include <Eigen/Eigenvalues>
#include <cmath>

using namespace gcdmd;

namespace {

Matrix simulate(const std::vector<Matrix>& a, int t, std::uint64_t seed) {
  Rng rng(seed);
  return simulate_var(a, Vector::Zero(a[0].rows()), 1.0, t, 200, rng);
}

Matrix m2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

}

TEST(FitVar, DeterministicAr1) {
  Matrix d(1, 50);
  d(0, 0) = 1.0;
  for (int k = 1; k < 50; ++k) d(0, k) = 0.5 * d(0, k - 1);
  const VarModel v = fit_var(d, 1, false);
  EXPECT_NEAR(v.coeffs[0](0, 0), 0.5, 1e-10);
  EXPECT_LT(std::fabs(v.residual_cov(0, 0)), 1e-20);
  EXPECT_LT(residuals(v, d).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(FitVar, MonteCarloVar1) {
  const Matrix a = m2(0.5, 0.2, 0.0, 0.3);
  const VarModel v = fit_var(simulate({a}, 5000, 42), 1);
  EXPECT_LT((v.coeffs[0] - a).cwiseAbs().maxCoeff(), 0.05);
}

TEST(FitVar, WhiteNoiseCoefficientsSmall) {
  const VarModel v = fit_var(simulate({Matrix::Zero(2, 2)}, 5000, 7), 1);
  EXPECT_LT(v.coeffs[0].cwiseAbs().maxCoeff(), 0.05);
}

TEST(FitVar, NormalEquationsOracle) {
  const Matrix d = testutil::random_matrix(2, 40, 3);
  const VarModel v = fit_var(d, 2);
  // regressors [1, x_{t-1}, x_{t-2}]
  Matrix z(5, 38), y = d.rightCols(38);
  for (int t = 2; t < 40; ++t) {
    z(0, t - 2) = 1.0;
    z.block(1, t - 2, 2, 1) = d.col(t - 1);
    z.block(3, t - 2, 2, 1) = d.col(t - 2);
  }
  const Matrix beta = y * z.transpose() * (z * z.transpose()).inverse();
  EXPECT_LT((v.intercept - beta.col(0)).norm(), 1e-10);
  EXPECT_LT((v.coeffs[0] - beta.middleCols(1, 2)).norm(), 1e-10);
  EXPECT_LT((v.coeffs[1] - beta.middleCols(3, 2)).norm(), 1e-10);
  EXPECT_LT((v.regressor_gram - z * z.transpose()).norm(), 1e-10);
  const Matrix res = y - beta * z;
  EXPECT_LT((residuals(v, d) - res).norm(), 1e-10);
  EXPECT_LT((v.residual_cov - res * res.transpose() / (38 - 5)).norm(), 1e-10);
}

TEST(FitVar, InterceptResidualsHaveZeroMean) {
  const Matrix d = testutil::random_matrix(3, 60, 8).array() + 5.0;
  const VarModel v = fit_var(d, 2);
  EXPECT_LT(residuals(v, d).rowwise().mean().cwiseAbs().maxCoeff(), 1e-10);
}

TEST(FitVar, Errors) {
  EXPECT_THROW(fit_var(testutil::random_matrix(2, 5, 1), 3), Error);
  EXPECT_THROW(fit_var(testutil::random_matrix(2, 50, 1), 0), Error);
}

TEST(FitVar, CollinearRegressorsFlagged) {
  Matrix d(2, 50);
  d.row(0) = testutil::random_matrix(1, 50, 4);
  d.row(1) = 2.0 * d.row(0);
  const VarModel v = fit_var(d, 1);
  EXPECT_TRUE(v.rank_deficient);
  EXPECT_GT(v.regressor_null.cols(), 0);
}

TEST(InformationCriterion, PenaltyTerms) {
  EXPECT_NEAR(information_criterion(Criterion::aic, 0.0, 2, 3, 100), 0.24, 1e-15);
  EXPECT_NEAR(information_criterion(Criterion::bic, 0.0, 2, 3, 100), std::log(100.0) * 12 / 100, 1e-15);
  EXPECT_NEAR(information_criterion(Criterion::bic, 0.0, 2, 3, 100), 0.5526, 1e-4);
}

TEST(SelectOrder, FindsVar2) {
  const std::vector<Matrix> a{m2(0.4, 0.1, 0.0, 0.3), m2(-0.3, 0.0, 0.2, 0.25)};
  const OrderSelection o = select_order(simulate(a, 5000, 11), 6, Criterion::bic);
  EXPECT_EQ(o.chosen, 2);
  EXPECT_EQ(o.scores.size(), 6u);
}

TEST(SelectOrder, WhiteNoiseChoosesOne) {
  const OrderSelection o = select_order(simulate({Matrix::Zero(2, 2)}, 2000, 12), 6, Criterion::bic);
  EXPECT_EQ(o.chosen, 1);
}

TEST(Stability, ScalarRoots) {
  VarModel v;
  v.dims = 1;
  v.coeffs = {Matrix::Constant(1, 1, 0.5)};
  auto s = check_var_stability(v);
  EXPECT_TRUE(s.stable);
  EXPECT_NEAR(s.magnitudes[0], 0.5, 1e-15);
  v.coeffs = {Matrix::Constant(1, 1, 1.0)};
  EXPECT_FALSE(check_var_stability(v).stable);
}

TEST(Stability, CompanionMatchesHandBuilt) {
  VarModel v;
  v.order = 2;
  v.dims = 2;
  v.coeffs = {m2(0.4, 0.1, 0.0, 0.3), m2(-0.3, 0.0, 0.2, 0.25)};
  Matrix c(4, 4);
  c << 0.4, 0.1, -0.3, 0.0, 0.0, 0.3, 0.2, 0.25, 1, 0, 0, 0, 0, 1, 0, 0;
  EXPECT_EQ(companion_matrix(v), c);
  std::vector<double> want;
  const Eigen::EigenSolver<Matrix> es(c);
  for (auto z : es.eigenvalues()) want.push_back(std::abs(z));
  std::sort(want.rbegin(), want.rend());
  auto got = check_var_stability(v).magnitudes;
  std::sort(got.rbegin(), got.rend());
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-10);
}
