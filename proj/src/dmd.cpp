#include "gcdmd/dmd.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace gcdmd {

namespace {

cdouble mode_factor(const DmdModel& m, Eigen::Index k, double t) {
  const cdouble lam = m.eigenvalues(k);
  if (lam == cdouble(0.0, 0.0)) return t == 0.0 ? cdouble(1.0, 0.0) : cdouble(0.0, 0.0);
  return std::exp(m.cont_exponents(k) * t);
}

CVector least_squares_amplitudes(const CMatrix& phi, const CVector& lam, const Matrix& x1) {
  const Eigen::Index r = lam.size();
  const Eigen::Index K = x1.cols();
  CMatrix vand(r, K);
  for (Eigen::Index i = 0; i < r; ++i) {
    cdouble p(1.0, 0.0);
    for (Eigen::Index k = 0; k < K; ++k) {
      vand(i, k) = p;
      p *= lam(i);
    }
  }
  CMatrix p = (phi.adjoint() * phi).cwiseProduct((vand * vand.adjoint()).conjugate());
  CMatrix g = vand * x1.transpose().cast<cdouble>() * phi;
  CVector q = g.diagonal().conjugate();
  return p.completeOrthogonalDecomposition().solve(q);
}

}

DmdModel fit_dmd(const Matrix& x1, const Matrix& x2, double dt, const RankPolicy& policy, const DmdOptions& opts) {
  if (x1.rows() != x2.rows() || x1.cols() != x2.cols()) throw Error("fit_dmd: x1 and x2 dimensions differ");
  if (x1.cols() < 2) throw Error("fit_dmd: need at least 2 snapshot columns");
  if (!(dt > 0.0)) throw Error("fit_dmd: dt must be positive");
  if (opts.lag < 1 || x1.rows() % opts.lag != 0) throw Error("fit_dmd: state rows not divisible by lag");
  require_finite(x1, "fit_dmd x1");
  require_finite(x2, "fit_dmd x2");
  if (x1.cwiseAbs().maxCoeff() == 0.0) throw Error("fit_dmd: x1 is numerically zero");

  SvdTruncation svd = svd_truncate(x1, policy);
  const int r = svd.r;
  const Vector sinv = svd.s.cwiseInverse();
  const Matrix x2vs = x2 * svd.v * sinv.asDiagonal();
  Matrix atilde = svd.u.transpose() * x2vs;

  Eigen::EigenSolver<Matrix> es(atilde, true);
  if (es.info() != Eigen::Success) throw Error("fit_dmd: eigendecomposition failed");
  CVector lam = es.eigenvalues();
  CMatrix w = es.eigenvectors();
  CMatrix phi = x2vs.cast<cdouble>() * w;

  CVector b;
  if (opts.amplitudes == AmplitudeMode::least_squares)
    b = least_squares_amplitudes(phi, lam, x1);
  else
    b = pinv(phi) * x1.col(0).cast<cdouble>();

  std::vector<Eigen::Index> order(static_cast<std::size_t>(r));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    const double mi = std::abs(lam(i)), mj = std::abs(lam(j));
    if (mi != mj) return mi > mj;
    const double bi = std::abs(b(i)), bj = std::abs(b(j));
    if (bi != bj) return bi > bj;
    return lam(i).imag() > lam(j).imag();
  });

  DmdModel m;
  m.rank = r;
  m.lag = opts.lag;
  m.channels = static_cast<int>(x1.rows()) / opts.lag;
  m.dt = dt;
  m.basis = std::move(svd.u);
  m.reduced_op = std::move(atilde);
  m.singular_values = std::move(svd.s);
  m.eigenvalues.resize(r);
  m.modes.resize(phi.rows(), r);
  m.amplitudes.resize(r);
  m.cont_exponents.resize(r);
  for (int k = 0; k < r; ++k) {
    const Eigen::Index src = order[static_cast<std::size_t>(k)];
    m.eigenvalues(k) = lam(src);
    m.modes.col(k) = phi.col(src);
    m.amplitudes(k) = b(src);
    m.cont_exponents(k) = lam(src) == cdouble(0.0, 0.0)
                              ? cdouble(-std::numeric_limits<double>::infinity(), 0.0)
                              : std::log(lam(src)) / dt;
  }
  return m;
}

Matrix predict(const DmdModel& model, const std::vector<double>& times) {
  Matrix out(model.state_dim(), static_cast<Eigen::Index>(times.size()));
  CVector coeff(model.rank);
  for (std::size_t c = 0; c < times.size(); ++c) {
    const double t = times[c];
    if (!(t >= 0.0)) throw Error("predict: negative time");
    for (int k = 0; k < model.rank; ++k) coeff(k) = mode_factor(model, k, t) * model.amplitudes(k);
    out.col(static_cast<Eigen::Index>(c)) = (model.modes * coeff).real();
  }
  return out;
}

Matrix predict_steps(const DmdModel& model, int first, int count) {
  if (first < 0) throw Error("predict: negative time");
  std::vector<double> t(static_cast<std::size_t>(std::max(count, 0)));
  for (int i = 0; i < count; ++i) t[static_cast<std::size_t>(i)] = (first + i) * model.dt;
  return predict(model, t);
}

Matrix forecast(const DmdModel& model, int first, int count, DehankelMode mode) {
  if (count < 1) throw Error("forecast: need at least one step");
  const int n = model.channels;
  if (mode == DehankelMode::first_block || model.lag == 1) return predict_steps(model, first, count).topRows(n);

  // Sample t sits in block i of column t - i; average over the blocks whose column is >= 0.
  const int L = model.lag;
  const int c0 = std::max(first - (L - 1), 0);
  const Matrix cols = predict_steps(model, c0, first + count - c0);
  Matrix out = Matrix::Zero(n, count);
  for (int s = 0; s < count; ++s) {
    const int t = first + s;
    int used = 0;
    for (int i = 0; i < L; ++i) {
      const int col = t - i;
      if (col < c0) break;
      out.col(s) += cols.block(i * n, col - c0, n, 1);
      ++used;
    }
    out.col(s) /= used;
  }
  return out;
}

Matrix reconstruct(const DmdModel& model, int n_steps, DehankelMode mode) {
  if (n_steps < 1) throw Error("reconstruct: n_steps must be >= 1");
  return forecast(model, 0, n_steps, mode);
}

double fit_residual(const DmdModel& model, const Matrix& x1, const Matrix& x2) {
  if (x1.rows() != model.basis.rows() || x2.rows() != model.basis.rows() || x1.cols() != x2.cols())
    throw Error("fit_residual: dimension mismatch");
  const Matrix lifted = model.basis * (model.reduced_op * (model.basis.transpose() * x1));
  return frobenius_norm(x2 - lifted);
}

SpectrumReport spectrum_report(const DmdModel& model) {
  SpectrumReport rep;
  for (int k = 0; k < model.rank; ++k) {
    EigenRecord e;
    e.lambda = model.eigenvalues(k);
    e.magnitude = std::abs(e.lambda);
    e.inside_unit_circle = e.magnitude <= 1.0 + unit_circle_tol;
    e.omega = model.cont_exponents(k);
    e.growth_rate = e.omega.real();
    e.frequency_hz = std::isfinite(e.omega.real()) ? e.omega.imag() / (2.0 * M_PI) : 0.0;
    rep.all_inside = rep.all_inside && e.inside_unit_circle;
    rep.max_magnitude = std::max(rep.max_magnitude, e.magnitude);
    rep.records.push_back(e);
  }
  return rep;
}

}
