#pragma once

#include "gcdmd/embed.hpp"

#include <Eigen/Core>
#include <cstdint>
#include <random>
#include <vector>

namespace gcdmd {

// std::mt19937_64 with explicit conversions; the standard fixes the engine
// but not the distributions, so uniform/normal are spelled out here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  std::uint64_t next() { return eng_(); }
  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  double normal();   // Box-Muller

 private:
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

TimeSeries gen_linear_system(const Matrix& a, const Vector& x0, int m, double dt = 1.0);

struct CausalGraphSpec {
  int dims = 3;
  int order = 1;
  Eigen::MatrixXi adjacency;  // (i, j) = 1 when j drives i
  double coef_lo = 0.2;
  double coef_hi = 0.5;
  double noise_var = 1.0;
  std::uint64_t seed = 1;
  int max_attempts = 10000;
  double max_radius = 0.95;
};

CausalGraphSpec three_channel_graph(std::uint64_t seed);
CausalGraphSpec null_spec(int dims, int order, std::uint64_t seed);

struct VarDraw {
  std::vector<Matrix> coeffs;
  int attempts = 0;
  double radius = 0.0;
};

VarDraw draw_var_coefficients(const CausalGraphSpec& spec, Rng& rng);

// Simulates x_t = c + sum A_k x_{t-k} + e_t, discarding `burn` leading samples.
Matrix simulate_var(const std::vector<Matrix>& coeffs, const Vector& intercept, double noise_sd, int t, int burn,
                    Rng& rng);

TimeSeries gen_var(const CausalGraphSpec& spec, int t);
TimeSeries gen_var(const CausalGraphSpec& spec, int t, VarDraw& draw);

struct CoherencySpec {
  int generators = 6;
  int fault_time = 10;
  double dt = 0.01;
  std::vector<double> base_angle{30, 32, 31, 33, 35, 28};
  double pre_amplitude = 0.5;
  double pre_damping = 0.5;
  double pre_frequency = 1.0;
  std::vector<int> groups{0, 0, 0, 0, 1, 2};
  std::vector<double> drift{10, -15, 25};
  double drift_rate = 2.0;
  std::vector<double> frequency{1.2, 2.1, 3.3};
  std::vector<double> damping{0.3, 0.5, 0.4};
  std::vector<double> amplitude{8, 12, 6};
  double noise = 1e-9;
  std::uint64_t seed = 17;

  int group_count() const;
};

TimeSeries gen_coherency(const CoherencySpec& spec, int m);

}
