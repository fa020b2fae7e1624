#include "gcdmd/synth.hpp"

#include "gcdmd/kernels.hpp"
#include "gcdmd/var.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <set>

namespace gcdmd {

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do u1 = uniform(); while (u1 <= 0.0);
  const double u2 = uniform();
  const double rad = std::sqrt(-2.0 * std::log(u1));
  spare_ = rad * std::sin(2.0 * M_PI * u2);
  have_spare_ = true;
  return rad * std::cos(2.0 * M_PI * u2);
}

TimeSeries gen_linear_system(const Matrix& a, const Vector& x0, int m, double dt) {
  if (a.rows() != a.cols()) throw Error("gen_linear_system: matrix must be square");
  if (x0.size() != a.rows()) throw Error("gen_linear_system: x0 dimension mismatch");
  if (m < 2) throw Error("gen_linear_system: need m >= 2");
  Matrix x(a.rows(), m);
  x.col(0) = x0;
  for (int k = 1; k < m; ++k) x.col(k) = a * x.col(k - 1);
  return TimeSeries(std::move(x), dt);
}

CausalGraphSpec three_channel_graph(std::uint64_t seed) {
  CausalGraphSpec s;
  s.dims = 3;
  s.order = 4;
  s.adjacency = Eigen::MatrixXi::Ones(3, 3);
  s.adjacency(0, 1) = 0;
  s.seed = seed;
  return s;
}

CausalGraphSpec null_spec(int dims, int order, std::uint64_t seed) {
  CausalGraphSpec s;
  s.dims = dims;
  s.order = order;
  s.adjacency = Eigen::MatrixXi::Zero(dims, dims);
  s.seed = seed;
  return s;
}

static double companion_radius(const std::vector<Matrix>& coeffs) {
  const int n = static_cast<int>(coeffs.front().rows());
  const int p = static_cast<int>(coeffs.size());
  Matrix c = Matrix::Zero(n * p, n * p);
  for (int k = 0; k < p; ++k) c.block(0, k * n, n, n) = coeffs[static_cast<std::size_t>(k)];
  if (p > 1) c.block(n, 0, n * (p - 1), n * (p - 1)).setIdentity();
  return Eigen::EigenSolver<Matrix>(c, false).eigenvalues().cwiseAbs().maxCoeff();
}

VarDraw draw_var_coefficients(const CausalGraphSpec& spec, Rng& rng) {
  const int n = spec.dims;
  if (spec.adjacency.rows() != n || spec.adjacency.cols() != n) throw Error("graph spec: adjacency must be n x n");
  if (spec.order < 1) throw Error("graph spec: order must be >= 1");
  VarDraw d;
  for (d.attempts = 1; d.attempts <= spec.max_attempts; ++d.attempts) {
    d.coeffs.assign(static_cast<std::size_t>(spec.order), Matrix::Zero(n, n));
    for (auto& a : d.coeffs)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          if (!spec.adjacency(i, j)) continue;
          const double mag = rng.uniform(spec.coef_lo, spec.coef_hi);
          a(i, j) = rng.uniform() < 0.5 ? -mag : mag;
        }
    d.radius = companion_radius(d.coeffs);
    if (d.radius < spec.max_radius) return d;
  }
  throw Error("graph spec: no stable draw after " + std::to_string(spec.max_attempts) + " attempts");
}

Matrix simulate_var(const std::vector<Matrix>& coeffs, const Vector& intercept, double noise_sd, int t, int burn,
                    Rng& rng) {
  const int n = static_cast<int>(coeffs.front().rows());
  const int p = static_cast<int>(coeffs.size());
  const int total = t + burn;
  Matrix x = Matrix::Zero(n, total);
  for (int s = 0; s < total; ++s) {
    double* xs = x.col(s).data();
    for (int i = 0; i < n; ++i) xs[i] = intercept(i) + noise_sd * rng.normal();
    for (int k = 1; k <= std::min(p, s); ++k) {
      const Matrix& a = coeffs[static_cast<std::size_t>(k - 1)];
      const double* prev = x.col(s - k).data();
      for (int j = 0; j < n; ++j) kernels::axpy(prev[j], a.col(j).data(), xs, static_cast<std::size_t>(n));
    }
  }
  return x.rightCols(t);
}

TimeSeries gen_var(const CausalGraphSpec& spec, int t, VarDraw& draw) {
  if (t <= 10 * spec.dims * spec.order) throw Error("gen_var: series length must exceed 10 n p");
  Rng rng(spec.seed);
  draw = draw_var_coefficients(spec, rng);
  Matrix x = simulate_var(draw.coeffs, Vector::Zero(spec.dims), std::sqrt(spec.noise_var), t, 10 * spec.order, rng);
  return TimeSeries(std::move(x), 1.0);
}

TimeSeries gen_var(const CausalGraphSpec& spec, int t) {
  VarDraw d;
  return gen_var(spec, t, d);
}

int CoherencySpec::group_count() const {
  return groups.empty() ? 0 : *std::max_element(groups.begin(), groups.end()) + 1;
}

TimeSeries gen_coherency(const CoherencySpec& spec, int m) {
  const int n = spec.generators;
  if (n < 1 || static_cast<int>(spec.groups.size()) != n || static_cast<int>(spec.base_angle.size()) != n)
    throw Error("coherency spec: invalid grouping (one group id and base angle per generator)");
  const int g = spec.group_count();
  std::set<int> used(spec.groups.begin(), spec.groups.end());
  if (*used.begin() < 0 || static_cast<int>(used.size()) != g)
    throw Error("coherency spec: invalid grouping (group ids must be 0..G-1, all used)");
  for (const auto* v : {&spec.drift, &spec.frequency, &spec.damping, &spec.amplitude})
    if (static_cast<int>(v->size()) != g) throw Error("coherency spec: per-group parameter count differs from groups");
  if (m <= spec.fault_time || spec.fault_time < 0) throw Error("coherency spec: fault time outside series");
  if (!(spec.dt > 0.0)) throw Error("coherency spec: dt must be positive");

  Rng rng(spec.seed);
  Matrix x(n, m);
  for (int c = 0; c < n; ++c) {
    const int grp = spec.groups[static_cast<std::size_t>(c)];
    for (int k = 0; k < m; ++k) {
      const double t = k * spec.dt;
      double v = spec.base_angle[static_cast<std::size_t>(c)] +
                 spec.pre_amplitude * std::exp(-spec.pre_damping * t) * std::sin(2.0 * M_PI * spec.pre_frequency * t);
      if (k >= spec.fault_time) {
        const double tp = (k - spec.fault_time) * spec.dt;
        const auto gi = static_cast<std::size_t>(grp);
        v += spec.drift[gi] * (1.0 - std::exp(-spec.drift_rate * tp)) +
             spec.amplitude[gi] * std::exp(-spec.damping[gi] * tp) * std::sin(2.0 * M_PI * spec.frequency[gi] * tp);
      }
      x(c, k) = v;
    }
  }
  for (int k = 0; k < m; ++k)
    for (int c = 0; c < n; ++c) x(c, k) += spec.noise * rng.normal();
  std::vector<std::string> labels;
  for (int c = 0; c < n; ++c) labels.push_back("G" + std::to_string(c + 1));
  return TimeSeries(std::move(x), spec.dt, labels);
}

}
