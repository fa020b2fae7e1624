#pragma once

#include "gcdmd/numerics.hpp"

#include <vector>

namespace gcdmd {

struct VarModel {
  int order = 1;
  int dims = 1;
  bool with_intercept = true;
  std::vector<Matrix> coeffs;  // A_1..A_p
  Vector intercept;
  Matrix residual_cov;
  int effective_samples = 0;
  // Gram of the stacked regressors [1, x_{t-1}, ..., x_{t-p}]
  Matrix regressor_gram;
  // Regressors were collinear and the fit went through the pseudoinverse.
  bool rank_deficient = false;
  // Basis of the regressor null space when rank deficient (columns), else empty.
  Matrix regressor_null;
  double rss_trace = 0.0;

  // Column of the regressor vector holding lag k (1-based) of channel j.
  int regressor_index(int k, int j) const { return (with_intercept ? 1 : 0) + (k - 1) * dims + j; }
};

VarModel fit_var(const Matrix& data, int p, bool with_intercept = true);
// Regresses samples start..m-1 only (start >= p), so several orders share one window.
VarModel fit_var_window(const Matrix& data, int p, int start, bool with_intercept = true);

enum class Criterion { aic, bic };

struct OrderSelection {
  Criterion criterion = Criterion::bic;
  std::vector<double> scores;  // index 0 is p = 1
  int chosen = 1;
};

double information_criterion(Criterion c, double log_det_sigma, int n, int p, int T);
OrderSelection select_order(const Matrix& data, int p_max, Criterion criterion, bool with_intercept = true);
int default_p_max(int n, int m);

struct StabilityResult {
  bool stable = true;
  std::vector<double> magnitudes;
};

inline constexpr double stability_margin = 1e-10;

Matrix companion_matrix(const VarModel& model);
StabilityResult check_var_stability(const VarModel& model);

// Residuals for samples p..m-1 as an n x (m-p) matrix.
Matrix residuals(const VarModel& model, const Matrix& data);

}
