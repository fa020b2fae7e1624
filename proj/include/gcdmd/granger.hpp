#pragma once

#include "gcdmd/var.hpp"

#include <Eigen/Core>
#include <vector>

namespace gcdmd {

struct NonIdentified : Error {
  NonIdentified() : Error("non-identified restriction") {}
};

struct GciResult {
  double value = 0.0;
  double var_restricted = 0.0;
  double var_unrestricted = 0.0;
  int order = 1;
};

GciResult gci(const Vector& x, const Vector& y, int p);

struct WaldResult {
  double statistic = 0.0;
  int df = 1;
  double p_value = 1.0;
  bool reject_null = false;
  double alpha = 0.05;
  int target = 0;
  int source = 1;
  std::vector<double> restriction;  // (A_1)_ij .. (A_p)_ij
};

WaldResult wald_test(const VarModel& model, int i, int j, double alpha);

struct OrderSpec {
  int fixed = 0;  // 0 selects by criterion
  int p_max = 10;
  Criterion criterion = Criterion::bic;

  static OrderSpec of(int p) { return {p, p, Criterion::bic}; }
  static OrderSpec automatic(int pmax, Criterion c = Criterion::bic) { return {0, pmax, c}; }
};

int resolve_order(const Matrix& data, const OrderSpec& spec);

struct CausalityMatrix {
  int dims = 0;
  Eigen::MatrixXi binary;
  Matrix stats;
  Matrix pvals;
  double alpha = 0.05;
  int order = 1;
};

CausalityMatrix causality_matrix(const Matrix& data, const OrderSpec& order, double alpha);

enum class GctStatus { ok, non_identified };

struct GctResult {
  bool causal = false;
  GctStatus status = GctStatus::ok;
  int order = 1;
  WaldResult wald;
};

// Does x2_series Granger-cause x1_series?
GctResult gct_pair(const Vector& x1_series, const Vector& x2_series, double alpha, const OrderSpec& order);

}
