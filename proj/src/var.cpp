#include "gcdmd/var.hpp"

#include "gcdmd/kernels.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>

namespace gcdmd {

namespace {

// T x (np [+1]) design matrix for samples start..m-1
Matrix design(const Matrix& data, int p, int start, bool with_intercept) {
  const int n = static_cast<int>(data.rows());
  const int m = static_cast<int>(data.cols());
  const int T = m - start;
  const int off = with_intercept ? 1 : 0;
  Matrix z(T, off + n * p);
  if (with_intercept) z.col(0).setOnes();
  for (int k = 1; k <= p; ++k)
    z.middleCols(off + (k - 1) * n, n) = data.middleCols(start - k, T).transpose();
  return z;
}

Matrix gram(const Matrix& z) {
  const Eigen::Index k = z.cols();
  const auto T = static_cast<std::size_t>(z.rows());
  Matrix g(k, k);
  for (Eigen::Index i = 0; i < k; ++i)
    for (Eigen::Index j = i; j < k; ++j) g(i, j) = g(j, i) = kernels::dot(z.col(i).data(), z.col(j).data(), T);
  return g;
}

}

VarModel fit_var_window(const Matrix& data, int p, int start, bool with_intercept) {
  const int n = static_cast<int>(data.rows());
  const int m = static_cast<int>(data.cols());
  if (p < 1) throw Error("fit_var: order must be >= 1");
  if (start < p || start >= m) throw Error("fit_var: window start out of range");
  require_finite(data, "fit_var");
  const int T = m - start;
  const int k = n * p + (with_intercept ? 1 : 0);
  if (T <= k) throw Error("fit_var: insufficient samples for order " + std::to_string(p));

  const Matrix z = design(data, p, start, with_intercept);
  const Matrix y = data.middleCols(start, T).transpose();  // T x n

  auto svd = Eigen::BDCSVD<Matrix>(z, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Vector& s = svd.singularValues();
  const double tol = rank_tolerance(z, s(0));
  Vector inv = Vector::Zero(s.size());
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol) {
      inv(i) = 1.0 / s(i);
      ++rank;
    }
  const Matrix beta = svd.matrixV() * inv.asDiagonal() * (svd.matrixU().transpose() * y);  // k x n
  const Matrix resid = y - z * beta;

  VarModel mdl;
  mdl.order = p;
  mdl.dims = n;
  mdl.with_intercept = with_intercept;
  mdl.effective_samples = T;
  mdl.rank_deficient = rank < k;
  if (mdl.rank_deficient) mdl.regressor_null = svd.matrixV().rightCols(k - rank);
  mdl.regressor_gram = gram(z);
  const int off = with_intercept ? 1 : 0;
  mdl.intercept = with_intercept ? Vector(beta.row(0).transpose()) : Vector::Zero(n);
  for (int lag = 1; lag <= p; ++lag) mdl.coeffs.push_back(beta.middleRows(off + (lag - 1) * n, n).transpose());
  const int dof = T - k;
  Matrix cov(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      cov(i, j) = cov(j, i) = kernels::dot(resid.col(i).data(), resid.col(j).data(), static_cast<std::size_t>(T)) / dof;
  mdl.residual_cov = cov;
  mdl.rss_trace = cov.trace() * dof;
  return mdl;
}

VarModel fit_var(const Matrix& data, int p, bool with_intercept) { return fit_var_window(data, p, p, with_intercept); }

double information_criterion(Criterion c, double log_det_sigma, int n, int p, int T) {
  const double k = static_cast<double>(p) * n * n;
  return c == Criterion::aic ? log_det_sigma + 2.0 * k / T : log_det_sigma + std::log(static_cast<double>(T)) * k / T;
}

int default_p_max(int n, int m) { return std::max(1, std::min(10, (m - 1) / (n + 1))); }

OrderSelection select_order(const Matrix& data, int p_max, Criterion criterion, bool with_intercept) {
  if (p_max < 1) throw Error("select_order: p_max must be >= 1");
  OrderSelection sel;
  sel.criterion = criterion;
  double best = 0.0;
  for (int p = 1; p <= p_max; ++p) {
    const VarModel mdl = fit_var_window(data, p, p_max, with_intercept);
    const double det = mdl.residual_cov.determinant();
    const double ld = det > 0.0 ? std::log(det) : -std::numeric_limits<double>::infinity();
    const double score = information_criterion(criterion, ld, mdl.dims, p, mdl.effective_samples);
    sel.scores.push_back(score);
    if (p == 1 || score < best) {
      best = score;
      sel.chosen = p;
    }
  }
  return sel;
}

Matrix companion_matrix(const VarModel& model) {
  const int n = model.dims, p = model.order;
  Matrix c = Matrix::Zero(n * p, n * p);
  for (int k = 0; k < p; ++k) c.block(0, k * n, n, n) = model.coeffs[static_cast<std::size_t>(k)];
  if (p > 1) c.block(n, 0, n * (p - 1), n * (p - 1)).setIdentity();
  return c;
}

StabilityResult check_var_stability(const VarModel& model) {
  Eigen::EigenSolver<Matrix> es(companion_matrix(model), false);
  StabilityResult res;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) res.magnitudes.push_back(std::abs(es.eigenvalues()(i)));
  std::sort(res.magnitudes.begin(), res.magnitudes.end(), std::greater<>());
  res.stable = res.magnitudes.empty() || res.magnitudes.front() < 1.0 - stability_margin;
  return res;
}

Matrix residuals(const VarModel& model, const Matrix& data) {
  if (data.rows() != model.dims) throw Error("residuals: dimension mismatch");
  const int p = model.order;
  const int m = static_cast<int>(data.cols());
  if (m <= p) throw Error("residuals: series shorter than order");
  Matrix e = data.rightCols(m - p);
  e.colwise() -= model.intercept;
  for (int k = 1; k <= p; ++k) e -= model.coeffs[static_cast<std::size_t>(k - 1)] * data.middleCols(p - k, m - p);
  return e;
}

}
