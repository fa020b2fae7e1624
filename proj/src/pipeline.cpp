#include "gcdmd/pipeline.hpp"

#include "gcdmd/kernels.hpp"

#include <cmath>

namespace gcdmd {

namespace {

Vector block_row_mean(const Matrix& x, int block, int n) { return x.middleRows(block * n, n).colwise().mean().transpose(); }

}

GctSeries gct_series(const HankelPair& hp, int channels, GctMode mode) {
  const int n = channels;
  GctSeries s;
  if (mode == GctMode::first_row) {
    s.target = block_row_mean(hp.x1, 0, n);
    s.source = block_row_mean(hp.x2, 0, n);
  } else {
    s.target = block_row_mean(hp.x1, hp.lag - 1, n);
    s.source = block_row_mean(hp.x1, 0, n);
  }
  return s;
}

GctResult run_gct(const HankelPair& hp, int channels, double alpha, GctMode mode, const OrderSpec& order) {
  if (mode != GctMode::per_row) {
    const GctSeries s = gct_series(hp, channels, mode);
    return gct_pair(s.target, s.source, alpha, order);
  }
  GctResult weakest;
  for (Eigen::Index r = 0; r < hp.x1.rows(); ++r) {
    GctResult g = gct_pair(hp.x1.row(r).transpose(), hp.x2.row(r).transpose(), alpha, order);
    if (!g.causal) return g;
    if (r == 0 || g.wald.statistic < weakest.wald.statistic) weakest = g;
  }
  return weakest;
}

ValidationReport validate(const TimeSeries& ts, int lag, const PipelineOptions& opts) {
  ValidationReport v;
  v.lag = lag;
  const HankelPair hp = build_hankel(ts, lag);
  v.pe = check_pe(ts, lag);
  v.condition = condition_number(hp.xh);
  if (v.pe.satisfied) {
    v.gct_run = true;
    v.gct = run_gct(hp, ts.channels(), opts.alpha, opts.gct_mode, opts.gct_order);
  }
  v.usable = v.pe.satisfied && v.gct_run && v.gct.causal;
  return v;
}

Vector rmse(const Matrix& pred, const Matrix& actual) {
  if (pred.rows() != actual.rows() || pred.cols() != actual.cols()) throw Error("rmse: shape mismatch");
  if (pred.cols() == 0) throw Error("rmse: empty input");
  // Row-major copies so each channel is contiguous.
  const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> p = pred, a = actual;
  Vector out(pred.rows());
  const auto m = static_cast<std::size_t>(pred.cols());
  for (Eigen::Index c = 0; c < pred.rows(); ++c)
    out(c) = std::sqrt(kernels::sum_sq_diff(p.row(c).data(), a.row(c).data(), m) / static_cast<double>(m));
  return out;
}

Split split_series(const TimeSeries& ts, double train_fraction) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) throw Error("split fraction must lie in (0, 1)");
  const int m = ts.samples();
  const int mt = static_cast<int>(std::lround(m * train_fraction));
  if (mt < 2 || m - mt < 2) throw Error("split leaves fewer than 2 samples on one side");
  return {ts.slice(0, mt), ts.slice(mt, m - mt)};
}

std::pair<ValidationReport, AnalysisReport> analyze(const TimeSeries& train, const TimeSeries& test, int lag,
                                                    const PipelineOptions& opts) {
  if (train.channels() != test.channels()) throw Error("analyze: train and test channel counts differ");
  ValidationReport v = validate(train, lag, opts);
  const HankelPair hp = build_hankel(train, lag);
  DmdOptions dopt;
  dopt.lag = lag;
  dopt.amplitudes = opts.amplitudes;
  auto model = std::make_shared<DmdModel>(fit_dmd(hp.x1, hp.x2, train.dt, opts.rank, dopt));

  AnalysisReport a;
  a.lag = lag;
  a.spectrum = spectrum_report(*model);
  a.train_rmse = rmse(reconstruct(*model, train.samples(), opts.dehankel), train.data);
  a.test_rmse = rmse(forecast(*model, train.samples(), test.samples(), opts.dehankel), test.data);
  a.residual = fit_residual(*model, hp.x1, hp.x2);
  a.operator_condition = condition_number(model->reduced_op);
  a.model = std::move(model);
  return {std::move(v), std::move(a)};
}

const SweepRecord& SweepReport::at(int lag) const {
  for (const auto& r : records)
    if (r.lag == lag) return r;
  throw Error("sweep report has no record for lag " + std::to_string(lag));
}

std::optional<int> SweepReport::first_pe_lag() const {
  for (const auto& r : records)
    if (r.validation.pe.satisfied) return r.lag;
  return std::nullopt;
}

SweepReport sweep(const TimeSeries& train, const TimeSeries& test, int l_min, int l_max, const PipelineOptions& opts) {
  if (l_min < 1 || l_max < l_min) throw Error("sweep: invalid lag range");
  SweepReport rep;
  rep.alpha = opts.alpha;
  for (int lag = l_min; lag <= l_max; ++lag) {
    SweepRecord rec;
    rec.lag = lag;
    rec.validation.lag = lag;
    rec.analysis.lag = lag;
    try {
      auto [v, a] = analyze(train, test, lag, opts);
      rec.validation = std::move(v);
      rec.analysis = std::move(a);
      rec.ok = true;
    } catch (const std::exception& e) {
      rec.error = e.what();
      try {
        rec.validation = validate(train, lag, opts);
      } catch (const std::exception&) {
      }
    }
    if (!rep.l_star && rec.validation.usable) rep.l_star = lag;
    rep.records.push_back(std::move(rec));
  }
  return rep;
}

}
