#include "gcdmd/granger.hpp"

#include <cmath>
#include <limits>

namespace gcdmd {

namespace {

double residual_variance(const VarModel& m, int eq) {
  const int k = m.dims * m.order + (m.with_intercept ? 1 : 0);
  return m.residual_cov(eq, eq) * (m.effective_samples - k) / m.effective_samples;
}

}

GciResult gci(const Vector& x, const Vector& y, int p) {
  if (x.size() != y.size()) throw Error("gci: series lengths differ");
  if (x.size() <= 2 * p + 2) throw Error("gci: series too short for order " + std::to_string(p));
  Matrix uni(1, x.size());
  uni.row(0) = x.transpose();
  Matrix bi(2, x.size());
  bi.row(0) = x.transpose();
  bi.row(1) = y.transpose();

  GciResult g;
  g.order = p;
  g.var_restricted = residual_variance(fit_var(uni, p), 0);
  g.var_unrestricted = residual_variance(fit_var(bi, p), 0);
  const double scale = x.squaredNorm() / static_cast<double>(x.size());
  if (!(g.var_restricted > 1e-28 * scale)) throw Error("degenerate regression");
  g.value = g.var_unrestricted > 0.0 ? std::log(g.var_restricted / g.var_unrestricted)
                                     : std::numeric_limits<double>::infinity();
  return g;
}

WaldResult wald_test(const VarModel& model, int i, int j, double alpha) {
  const int n = model.dims, p = model.order;
  if (i == j) throw Error("wald_test: target and source must differ");
  if (i < 0 || j < 0 || i >= n || j >= n) throw Error("wald_test: channel index out of range");
  if (model.regressor_gram.rows() == 0) throw Error("wald_test: model carries no regressor Gram");

  std::vector<int> idx;
  for (int k = 1; k <= p; ++k) idx.push_back(model.regressor_index(k, j));

  if (model.rank_deficient) {
    double leak = 0.0;
    for (int r : idx) leak = std::max(leak, model.regressor_null.row(r).cwiseAbs().maxCoeff());
    if (leak > 1e-8) throw NonIdentified();
  }

  WaldResult w;
  w.df = p;
  w.alpha = alpha;
  w.target = i;
  w.source = j;
  Vector beta(p);
  for (int k = 0; k < p; ++k) beta(k) = model.coeffs[static_cast<std::size_t>(k)](i, j);
  w.restriction.assign(beta.data(), beta.data() + p);

  const Matrix ginv = pinv(model.regressor_gram);
  Matrix block(p, p);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b) block(a, b) = ginv(idx[a], idx[b]);
  const double sigma = model.residual_cov(i, i);

  if (beta.cwiseAbs().maxCoeff() == 0.0) {
    w.statistic = 0.0;
  } else if (!(sigma > 0.0)) {
    w.statistic = std::numeric_limits<double>::infinity();
  } else {
    Eigen::LDLT<Matrix> ldlt(sigma * block);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive() || ldlt.vectorD().minCoeff() <= 0.0)
      throw NonIdentified();
    w.statistic = std::max(0.0, beta.dot(ldlt.solve(beta)));
  }
  w.p_value = std::isinf(w.statistic) ? 0.0 : chi2_sf(w.statistic, p);
  w.reject_null = w.p_value < alpha;
  return w;
}

int resolve_order(const Matrix& data, const OrderSpec& spec) {
  if (spec.fixed > 0) return spec.fixed;
  return select_order(data, spec.p_max, spec.criterion).chosen;
}

CausalityMatrix causality_matrix(const Matrix& data, const OrderSpec& order, double alpha) {
  const int n = static_cast<int>(data.rows());
  if (n < 2) throw Error("causality_matrix: need at least 2 channels");
  const int p = resolve_order(data, order);
  const VarModel model = fit_var(data, p);
  CausalityMatrix cm;
  cm.dims = n;
  cm.alpha = alpha;
  cm.order = p;
  cm.binary = Eigen::MatrixXi::Zero(n, n);
  cm.stats = Matrix::Zero(n, n);
  cm.pvals = Matrix::Ones(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const WaldResult w = wald_test(model, i, j, alpha);
      cm.stats(i, j) = w.statistic;
      cm.pvals(i, j) = w.p_value;
      cm.binary(i, j) = w.reject_null ? 1 : 0;
    }
  return cm;
}

GctResult gct_pair(const Vector& x1_series, const Vector& x2_series, double alpha, const OrderSpec& order) {
  if (x1_series.size() != x2_series.size()) throw Error("gct_pair: series lengths differ");
  Matrix data(2, x1_series.size());
  data.row(0) = x1_series.transpose();
  data.row(1) = x2_series.transpose();
  GctResult g;
  g.order = resolve_order(data, order);
  g.wald.df = g.order;
  g.wald.alpha = alpha;
  const VarModel model = fit_var(data, g.order);
  try {
    g.wald = wald_test(model, 0, 1, alpha);
    g.causal = g.wald.reject_null;
  } catch (const NonIdentified&) {
    g.status = GctStatus::non_identified;
    g.causal = false;
  }
  return g;
}

}
