#pragma once

#include "gcdmd/pipeline.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>

namespace gcdmd {

struct RunConfig {
  std::string input;
  double dt = 1.0;
  int lag = 1;
  int lag_min = 1;
  int lag_max = 1;
  int offset = 0;  // leading samples dropped before anything else, for fault alignment
  RankPolicy rank = RankPolicy::energy(0.999);
  double alpha = 0.05;
  double split = 2.0 / 3.0;
  GctMode gct_mode = GctMode::edge;
  int gct_order = 2;  // 0 selects by criterion
  Criterion criterion = Criterion::bic;
  int p_max = 10;
  int order = 0;  // granger subcommand, 0 selects by criterion
  AmplitudeMode amplitudes = AmplitudeMode::first_snapshot;
  DehankelMode dehankel = DehankelMode::first_block;
  std::uint64_t seed = 17;
  std::string out = ".";

  // synth
  std::string family = "coherency";
  int length = 360;
  std::string name = "synth";

  PipelineOptions pipeline() const;
};

// Overlays keys present in a JSON config document.
void apply_config_json(RunConfig& cfg, const std::string& text);

int cmd_validate(const RunConfig& cfg, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, std::ostream& err);
int cmd_fit_predict(const RunConfig& cfg, std::ostream& err);
int cmd_granger(const RunConfig& cfg, std::ostream& err);
int cmd_synth(const RunConfig& cfg, const std::string& spec_json, std::ostream& err);

int run_cli(int argc, char** argv);

}
