#include "gcdmd/numerics.hpp"

#include "gcdmd/kernels.hpp"

#include <cmath>
#include <limits>

namespace gcdmd {

namespace {

void check_nonempty(const Matrix& a, const char* what) {
  if (a.rows() == 0 || a.cols() == 0) throw Error(std::string(what) + ": empty matrix");
}

template <class M>
auto thin_svd(const M& a) {
  return Eigen::BDCSVD<M>(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
}

}

void require_finite(const Matrix& a, const char* what) {
  if (!a.allFinite()) throw Error(std::string(what) + ": non-finite entries");
}

SvdTruncation svd_full(const Matrix& a) {
  check_nonempty(a, "svd");
  require_finite(a, "svd");
  auto svd = thin_svd(a);
  SvdTruncation out;
  out.u = svd.matrixU();
  out.s = svd.singularValues();
  out.v = svd.matrixV();
  out.r = static_cast<int>(out.s.size());
  for (Eigen::Index k = 0; k < out.u.cols(); ++k) {
    Eigen::Index imax = 0;
    out.u.col(k).cwiseAbs().maxCoeff(&imax);
    if (out.u(imax, k) < 0) {
      out.u.col(k) *= -1.0;
      out.v.col(k) *= -1.0;
    }
  }
  return out;
}

double rank_tolerance(const Matrix& a, double s1) {
  return static_cast<double>(std::max(a.rows(), a.cols())) * std::numeric_limits<double>::epsilon() * s1;
}

SvdTruncation svd_truncate(const Matrix& a, const RankPolicy& policy) {
  SvdTruncation full = svd_full(a);
  const Eigen::Index k = full.s.size();
  if (full.s(0) == 0.0) throw Error("svd_truncate: zero matrix");
  const double tol = rank_tolerance(a, full.s(0));
  int nz = 0;
  while (nz < k && full.s(nz) > tol) ++nz;

  int r = 0;
  if (policy.kind == RankPolicy::Kind::fixed) {
    if (policy.rank < 1 || policy.rank > k) throw Error("svd_truncate: fixed rank exceeds min(rows, cols)");
    if (policy.rank > nz) throw Error("svd_truncate: fixed rank exceeds numerical rank of data");
    r = policy.rank;
  } else {
    if (!(policy.tau > 0.0 && policy.tau <= 1.0)) throw Error("svd_truncate: energy threshold outside (0, 1]");
    // tail sums from the small end, so tau = 1 keeps every nonzero value
    const double total = full.s.squaredNorm();
    const double allowed = (1.0 - policy.tau) * total;
    double tail = full.s.tail(k - nz).squaredNorm();
    r = nz;
    while (r > 1) {
      const double next = tail + full.s(r - 1) * full.s(r - 1);
      if (next > allowed) break;
      tail = next;
      --r;
    }
  }
  full.u.conservativeResize(Eigen::NoChange, r);
  full.v.conservativeResize(Eigen::NoChange, r);
  full.s.conservativeResize(r);
  full.r = r;
  return full;
}

int numeric_rank(const Matrix& a) {
  check_nonempty(a, "numeric_rank");
  require_finite(a, "numeric_rank");
  Vector s = Eigen::BDCSVD<Matrix>(a).singularValues();
  if (s(0) == 0.0) return 0;
  const double tol = rank_tolerance(a, s(0));
  return static_cast<int>((s.array() > tol).count());
}

template <class M>
static M pinv_impl(const M& a) {
  auto svd = thin_svd(a);
  const auto& s = svd.singularValues();
  using Real = double;
  const Real tol = s.size() && s(0) > 0
                       ? static_cast<Real>(std::max(a.rows(), a.cols())) * std::numeric_limits<Real>::epsilon() * s(0)
                       : 0.0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > tol) inv(i) = 1.0 / s(i);
  return svd.matrixV() * inv.asDiagonal() * svd.matrixU().adjoint();
}

Matrix pinv(const Matrix& a) {
  check_nonempty(a, "pinv");
  require_finite(a, "pinv");
  return pinv_impl(a);
}

CMatrix pinv(const CMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) throw Error("pinv: empty matrix");
  if (!a.allFinite()) throw Error("pinv: non-finite entries");
  return pinv_impl(a);
}

Condition condition_number(const Matrix& a) {
  check_nonempty(a, "condition_number");
  require_finite(a, "condition_number");
  Vector s = Eigen::BDCSVD<Matrix>(a).singularValues();
  if (s(0) == 0.0) throw Error("condition_number: zero matrix");
  const double tol = rank_tolerance(a, s(0));
  const double smin = s(s.size() - 1);
  if (smin <= tol) return {s(0) / tol, true};
  return {s(0) / smin, false};
}

double frobenius_norm(const Matrix& a) {
  return std::sqrt(kernels::sum_sq(a.data(), static_cast<std::size_t>(a.size())));
}

// Series for P(a, x), valid for x < a + 1.
static double gamma_p_series(double a, double x) {
  double ap = a;
  double del = 1.0 / a;
  double sum = del;
  for (int n = 0; n < 10000; ++n) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::fabs(del) < std::fabs(sum) * 1e-17) break;
  }
  return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Modified Lentz continued fraction for Q(a, x), valid for x >= a + 1.
static double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < 1e-16) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

double gamma_q(double a, double x) {
  if (!(a > 0.0)) throw Error("gamma_q: shape must be positive");
  if (std::isnan(x) || x < 0.0) throw Error("gamma_q: negative argument");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - gamma_p_series(a, x);
  return gamma_q_cf(a, x);
}

double chi2_sf(double x, int df) {
  if (df < 1) throw Error("chi2_sf: df must be >= 1");
  if (std::isnan(x) || x < 0.0) throw Error("chi2_sf: negative statistic");
  return gamma_q(0.5 * df, 0.5 * x);
}

}
