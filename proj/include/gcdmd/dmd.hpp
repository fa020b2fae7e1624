#pragma once

#include "gcdmd/numerics.hpp"

#include <complex>
#include <vector>

namespace gcdmd {

using cdouble = std::complex<double>;

enum class AmplitudeMode { first_snapshot, least_squares };
enum class DehankelMode { first_block, average };

struct DmdModel {
  int rank = 0;
  int lag = 1;
  int channels = 0;  // rows of one delay block
  double dt = 1.0;
  Matrix basis;      // U_r, state x r
  Matrix reduced_op; // r x r
  CVector eigenvalues;
  CMatrix modes;
  CVector amplitudes;
  CVector cont_exponents;
  Vector singular_values;

  int state_dim() const { return static_cast<int>(modes.rows()); }
};

struct DmdOptions {
  AmplitudeMode amplitudes = AmplitudeMode::first_snapshot;
  int lag = 1;
};

DmdModel fit_dmd(const Matrix& x1, const Matrix& x2, double dt, const RankPolicy& policy,
                 const DmdOptions& opts = {});

// Real part of Phi exp(Omega t) b for each t (seconds).
Matrix predict(const DmdModel& model, const std::vector<double>& times);
// Same, at sample indices first, first+1, ...
Matrix predict_steps(const DmdModel& model, int first, int count);

// n-channel series for steps 0..n_steps-1
Matrix reconstruct(const DmdModel& model, int n_steps, DehankelMode mode = DehankelMode::first_block);
// n-channel series for steps first..first+count-1
Matrix forecast(const DmdModel& model, int first, int count, DehankelMode mode = DehankelMode::first_block);

double fit_residual(const DmdModel& model, const Matrix& x1, const Matrix& x2);

struct EigenRecord {
  cdouble lambda;
  double magnitude = 0.0;
  bool inside_unit_circle = true;
  cdouble omega;
  double growth_rate = 0.0;
  double frequency_hz = 0.0;
};

struct SpectrumReport {
  std::vector<EigenRecord> records;
  bool all_inside = true;
  double max_magnitude = 0.0;
};

inline constexpr double unit_circle_tol = 1e-6;

SpectrumReport spectrum_report(const DmdModel& model);

}
