#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace gcdmd {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RankPolicy {
  enum class Kind { fixed, energy };
  Kind kind = Kind::energy;
  int rank = 0;
  double tau = 0.999;

  static RankPolicy fixed(int r) { return {Kind::fixed, r, 1.0}; }
  static RankPolicy energy(double t) { return {Kind::energy, 0, t}; }
};

struct SvdTruncation {
  Matrix u;
  Vector s;
  Matrix v;
  int r = 0;
};

// Full thin SVD with the sign convention applied (largest |u_ik| of each column positive).
SvdTruncation svd_full(const Matrix& a);
SvdTruncation svd_truncate(const Matrix& a, const RankPolicy& policy);

double rank_tolerance(const Matrix& a, double s1);
int numeric_rank(const Matrix& a);
Matrix pinv(const Matrix& a);
CMatrix pinv(const CMatrix& a);

struct Condition {
  double value = 1.0;
  // s_min fell below the rank tolerance; value then uses the tolerance instead.
  bool infinite = false;
};
Condition condition_number(const Matrix& a);

double frobenius_norm(const Matrix& a);

// P(X > x) for X ~ chi-square(df)
double chi2_sf(double x, int df);
// Regularized upper incomplete gamma Q(a, x)
double gamma_q(double a, double x);

void require_finite(const Matrix& a, const char* what);

}
