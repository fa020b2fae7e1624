#pragma once

#include "gcdmd/numerics.hpp"

#include <string>
#include <vector>

namespace gcdmd {

struct TimeSeries {
  Matrix data;  // n x m, row = channel
  double dt = 1.0;
  std::vector<std::string> labels;

  TimeSeries() = default;
  TimeSeries(Matrix d, double step, std::vector<std::string> names = {});

  int channels() const { return static_cast<int>(data.rows()); }
  int samples() const { return static_cast<int>(data.cols()); }
  TimeSeries slice(int begin, int count) const;
};

TimeSeries load_csv(const std::string& path, double dt);
void write_csv(const TimeSeries& ts, const std::string& path);
std::string to_csv(const TimeSeries& ts);

struct HankelPair {
  int lag = 1;
  Matrix xh;
  Matrix x1;
  Matrix x2;
};

HankelPair build_hankel(const TimeSeries& ts, int lag);
HankelPair build_hankel(const Matrix& data, int lag);

struct PeVerdict {
  int lag = 1;
  int achieved_rank = 0;
  int required_rank = 0;
  bool length_bound_ok = false;
  bool satisfied = false;
};

PeVerdict check_pe(const TimeSeries& ts, int lag);
PeVerdict check_pe(const Matrix& data, int lag);

}
