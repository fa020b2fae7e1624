#pragma once

#include "gcdmd/dmd.hpp"
#include "gcdmd/embed.hpp"
#include "gcdmd/granger.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace gcdmd {

// How the Hankel pair is reduced to the two scalar series fed to the GCT.
enum class GctMode {
  edge,       // mean of X1's oldest block row drives mean of X1's newest block row
  first_row,  // mean of X2's first block row drives mean of X1's first block row
  per_row     // every row of X2 drives the same row of X1; all must pass
};

struct PipelineOptions {
  double alpha = 0.05;
  RankPolicy rank = RankPolicy::energy(0.999);
  GctMode gct_mode = GctMode::edge;
  OrderSpec gct_order = OrderSpec::of(2);
  AmplitudeMode amplitudes = AmplitudeMode::first_snapshot;
  DehankelMode dehankel = DehankelMode::first_block;
};

struct ValidationReport {
  int lag = 1;
  PeVerdict pe;
  bool gct_run = false;
  GctResult gct;
  Condition condition;  // of the Hankel matrix
  bool usable = false;
};

struct AnalysisReport {
  int lag = 1;
  std::shared_ptr<const DmdModel> model;
  SpectrumReport spectrum;
  Vector train_rmse;
  Vector test_rmse;
  double residual = 0.0;
  Condition operator_condition;  // of the reduced operator
};

struct GctSeries {
  Vector target;
  Vector source;
};

GctSeries gct_series(const HankelPair& hp, int channels, GctMode mode);
GctResult run_gct(const HankelPair& hp, int channels, double alpha, GctMode mode, const OrderSpec& order);

ValidationReport validate(const TimeSeries& ts, int lag, const PipelineOptions& opts = {});

Vector rmse(const Matrix& pred, const Matrix& actual);

struct Split {
  TimeSeries train;
  TimeSeries test;
};
Split split_series(const TimeSeries& ts, double train_fraction);

std::pair<ValidationReport, AnalysisReport> analyze(const TimeSeries& train, const TimeSeries& test, int lag,
                                                    const PipelineOptions& opts = {});

struct SweepRecord {
  int lag = 1;
  bool ok = false;
  std::string error;
  ValidationReport validation;
  AnalysisReport analysis;
};

struct SweepReport {
  std::vector<SweepRecord> records;
  std::optional<int> l_star;
  double alpha = 0.05;

  const SweepRecord& at(int lag) const;
  std::optional<int> first_pe_lag() const;
};

SweepReport sweep(const TimeSeries& train, const TimeSeries& test, int l_min, int l_max,
                  const PipelineOptions& opts = {});

}
