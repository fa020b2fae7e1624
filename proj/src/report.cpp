#include "gcdmd/report.hpp"

#include <cmath>

namespace gcdmd {

Json num(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return round15(v);
}

Json to_json(const Vector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(num(v(i)));
  return a;
}

Json to_json(const Matrix& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(to_json(Vector(m.row(i).transpose())));
  return a;
}

static Json cnum(const cdouble& z) { return Json::array({num(z.real()), num(z.imag())}); }

Json to_json(const CVector& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(cnum(v(i)));
  return a;
}

Json to_json(const CMatrix& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) a.push_back(to_json(CVector(m.row(i).transpose())));
  return a;
}

Json to_json(const PeVerdict& v) {
  return {{"lag", v.lag},
          {"achieved_rank", v.achieved_rank},
          {"required_rank", v.required_rank},
          {"length_bound_ok", v.length_bound_ok},
          {"satisfied", v.satisfied}};
}

Json to_json(const Condition& c) { return {{"value", num(c.value)}, {"infinite", c.infinite}}; }

Json to_json(const WaldResult& w) {
  Json r = Json::array();
  for (double b : w.restriction) r.push_back(num(b));
  return {{"statistic", num(w.statistic)}, {"df", w.df},          {"p_value", num(w.p_value)},
          {"reject_null", w.reject_null},  {"alpha", num(w.alpha)}, {"target", w.target},
          {"source", w.source},            {"restriction", r}};
}

Json to_json(const GctResult& g) {
  return {{"causal", g.causal},
          {"status", g.status == GctStatus::ok ? "ok" : "non_identified"},
          {"order", g.order},
          {"wald", to_json(g.wald)}};
}

Json to_json(const ValidationReport& v) {
  Json j{{"lag", v.lag}, {"pe", to_json(v.pe)}, {"gct_run", v.gct_run},
         {"condition_number", to_json(v.condition)}, {"usable", v.usable}};
  j["gct"] = v.gct_run ? to_json(v.gct) : Json(nullptr);
  return j;
}

Json to_json(const SpectrumReport& s) {
  Json recs = Json::array();
  for (const auto& e : s.records)
    recs.push_back({{"lambda", cnum(e.lambda)},
                    {"magnitude", num(e.magnitude)},
                    {"inside_unit_circle", e.inside_unit_circle},
                    {"omega", cnum(e.omega)},
                    {"growth_rate", num(e.growth_rate)},
                    {"frequency_hz", num(e.frequency_hz)}});
  return {{"records", recs}, {"all_inside", s.all_inside}, {"max_magnitude", num(s.max_magnitude)},
          {"tolerance", num(unit_circle_tol)}};
}

Json to_json(const DmdModel& m) {
  Json j = model_summary(m);
  j["modes"] = to_json(m.modes);
  j["amplitudes"] = to_json(m.amplitudes);
  j["reduced_op"] = to_json(m.reduced_op);
  return j;
}

Json model_summary(const DmdModel& m) {
  return {{"rank", m.rank},
          {"dt", num(m.dt)},
          {"lag", m.lag},
          {"channels", m.channels},
          {"eigenvalues", to_json(m.eigenvalues)},
          {"cont_exponents", to_json(m.cont_exponents)},
          {"amplitude_magnitudes", to_json(Vector(m.amplitudes.cwiseAbs()))}};
}

Json to_json(const AnalysisReport& a) {
  Json j{{"lag", a.lag},
         {"spectrum", to_json(a.spectrum)},
         {"train_rmse", to_json(a.train_rmse)},
         {"test_rmse", to_json(a.test_rmse)},
         {"residual", num(a.residual)},
         {"operator_condition", to_json(a.operator_condition)}};
  j["model"] = a.model ? model_summary(*a.model) : Json(nullptr);
  return j;
}

static double record_pvalue(const SweepRecord& r) {
  return r.validation.gct_run ? r.validation.gct.wald.p_value : std::nan("");
}
static double record_stat(const SweepRecord& r) {
  return r.validation.gct_run ? r.validation.gct.wald.statistic : std::nan("");
}
static double record_cond(const SweepRecord& r) {
  return r.ok ? r.analysis.operator_condition.value : std::nan("");
}

Json to_json(const SweepReport& s) {
  Json recs = Json::array();
  Json lags = Json::array(), pv = Json::array(), st = Json::array(), cond = Json::array(), hcond = Json::array();
  for (const auto& r : s.records) {
    Json j{{"lag", r.lag}, {"ok", r.ok}, {"validation", to_json(r.validation)}};
    j["analysis"] = r.ok ? to_json(r.analysis) : Json(nullptr);
    j["error"] = r.ok ? Json(nullptr) : Json(r.error);
    recs.push_back(j);
    lags.push_back(r.lag);
    pv.push_back(num(record_pvalue(r)));
    st.push_back(num(record_stat(r)));
    cond.push_back(num(record_cond(r)));
    hcond.push_back(num(r.validation.condition.value));
  }
  Json j{{"records", recs},
         {"alpha", num(s.alpha)},
         {"columns", {{"lag", lags}, {"p_value", pv}, {"statistic", st}, {"cond", cond}, {"hankel_cond", hcond}}}};
  j["l_star"] = s.l_star ? Json(*s.l_star) : Json(nullptr);
  return j;
}

Json to_json(const VarModel& m) {
  Json coeffs = Json::array();
  for (const auto& a : m.coeffs) coeffs.push_back(to_json(a));
  return {{"order", m.order},
          {"dims", m.dims},
          {"with_intercept", m.with_intercept},
          {"coeffs", coeffs},
          {"intercept", to_json(m.intercept)},
          {"residual_cov", to_json(m.residual_cov)},
          {"effective_samples", m.effective_samples},
          {"rank_deficient", m.rank_deficient}};
}

Json to_json(const OrderSelection& o) {
  Json sc = Json::array();
  for (double v : o.scores) sc.push_back(num(v));
  return {{"criterion", o.criterion == Criterion::aic ? "aic" : "bic"}, {"scores", sc}, {"chosen", o.chosen}};
}

Json to_json(const CausalityMatrix& c) {
  Json bin = Json::array();
  for (int i = 0; i < c.dims; ++i) {
    Json row = Json::array();
    for (int j = 0; j < c.dims; ++j) row.push_back(c.binary(i, j));
    bin.push_back(row);
  }
  return {{"dims", c.dims}, {"binary", bin}, {"stats", to_json(c.stats)}, {"pvals", to_json(c.pvals)},
          {"alpha", num(c.alpha)}, {"order", c.order}};
}

Json to_json(const CausalGraphSpec& s) {
  Json adj = Json::array();
  for (int i = 0; i < s.adjacency.rows(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < s.adjacency.cols(); ++j) row.push_back(s.adjacency(i, j));
    adj.push_back(row);
  }
  return {{"dims", s.dims},       {"order", s.order},         {"adjacency", adj},
          {"coef_lo", num(s.coef_lo)}, {"coef_hi", num(s.coef_hi)}, {"noise_var", num(s.noise_var)},
          {"seed", s.seed},       {"max_attempts", s.max_attempts}, {"max_radius", num(s.max_radius)}};
}

Json to_json(const CoherencySpec& s) {
  return {{"generators", s.generators},
          {"fault_time", s.fault_time},
          {"dt", num(s.dt)},
          {"base_angle", s.base_angle},
          {"pre_amplitude", num(s.pre_amplitude)},
          {"pre_damping", num(s.pre_damping)},
          {"pre_frequency", num(s.pre_frequency)},
          {"groups", s.groups},
          {"drift", s.drift},
          {"drift_rate", num(s.drift_rate)},
          {"frequency", s.frequency},
          {"damping", s.damping},
          {"amplitude", s.amplitude},
          {"noise", num(s.noise)},
          {"seed", s.seed}};
}

template <class T>
static void opt(const Json& j, const char* key, T& out) {
  if (j.contains(key)) j.at(key).get_to(out);
}

CoherencySpec coherency_from_json(const Json& j) {
  CoherencySpec s;
  opt(j, "generators", s.generators);
  opt(j, "fault_time", s.fault_time);
  opt(j, "dt", s.dt);
  opt(j, "base_angle", s.base_angle);
  opt(j, "pre_amplitude", s.pre_amplitude);
  opt(j, "pre_damping", s.pre_damping);
  opt(j, "pre_frequency", s.pre_frequency);
  opt(j, "groups", s.groups);
  opt(j, "drift", s.drift);
  opt(j, "drift_rate", s.drift_rate);
  opt(j, "frequency", s.frequency);
  opt(j, "damping", s.damping);
  opt(j, "amplitude", s.amplitude);
  opt(j, "noise", s.noise);
  opt(j, "seed", s.seed);
  return s;
}

CausalGraphSpec graph_from_json(const Json& j) {
  CausalGraphSpec s;
  opt(j, "dims", s.dims);
  opt(j, "order", s.order);
  opt(j, "coef_lo", s.coef_lo);
  opt(j, "coef_hi", s.coef_hi);
  opt(j, "noise_var", s.noise_var);
  opt(j, "seed", s.seed);
  opt(j, "max_attempts", s.max_attempts);
  opt(j, "max_radius", s.max_radius);
  if (j.contains("adjacency")) {
    const auto rows = j.at("adjacency").get<std::vector<std::vector<int>>>();
    s.adjacency = Eigen::MatrixXi::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size()) throw Error("graph spec: adjacency must be square");
      for (std::size_t k = 0; k < rows.size(); ++k) s.adjacency(i, k) = rows[i][k];
    }
    s.dims = static_cast<int>(rows.size());
  } else {
    s.adjacency = Eigen::MatrixXi::Ones(s.dims, s.dims);
  }
  return s;
}

const char* gct_mode_name(GctMode m) {
  switch (m) {
    case GctMode::edge: return "edge";
    case GctMode::first_row: return "first_row";
    case GctMode::per_row: return "per_row";
  }
  return "edge";
}

GctMode parse_gct_mode(const std::string& s) {
  if (s == "edge") return GctMode::edge;
  if (s == "first_row") return GctMode::first_row;
  if (s == "per_row") return GctMode::per_row;
  throw Error("unknown gct mode '" + s + "'");
}

std::string document(const std::string& kind, Json body) {
  body["schema_version"] = schema_version;
  body["kind"] = kind;
  return body.dump(2) + "\n";
}

static std::string cell(double v) { return std::isnan(v) ? "" : format_double(v); }

std::string sweep_columns_csv(const SweepReport& s, const std::vector<std::string>& labels) {
  std::string out = "lag,p_value,statistic,cond,hankel_cond";
  for (const auto& l : labels) out += ",train_rmse_" + l;
  for (const auto& l : labels) out += ",test_rmse_" + l;
  out += '\n';
  for (const auto& r : s.records) {
    out += std::to_string(r.lag) + ',' + cell(record_pvalue(r)) + ',' + cell(record_stat(r)) + ',' +
           cell(record_cond(r)) + ',' + cell(r.validation.condition.value);
    for (std::size_t c = 0; c < labels.size(); ++c)
      out += ',' + (r.ok ? cell(r.analysis.train_rmse(static_cast<Eigen::Index>(c))) : std::string());
    for (std::size_t c = 0; c < labels.size(); ++c)
      out += ',' + (r.ok ? cell(r.analysis.test_rmse(static_cast<Eigen::Index>(c))) : std::string());
    out += '\n';
  }
  return out;
}

std::string sweep_column_csv(const SweepReport& s, const std::string& column) {
  std::string out = "lag," + column + "\n";
  for (const auto& r : s.records) {
    double v = std::nan("");
    if (column == "p_value") v = record_pvalue(r);
    else if (column == "statistic") v = record_stat(r);
    else if (column == "cond") v = record_cond(r);
    else if (column == "hankel_cond") v = r.validation.condition.value;
    else throw Error("unknown sweep column " + column);
    out += std::to_string(r.lag) + ',' + cell(v) + '\n';
  }
  return out;
}

std::string eigenvalue_scatter_csv(const SweepReport& s) {
  std::string out = "lag,re,im,magnitude\n";
  for (const auto& r : s.records) {
    if (!r.ok) continue;
    for (const auto& e : r.analysis.spectrum.records)
      out += std::to_string(r.lag) + ',' + cell(e.lambda.real()) + ',' + cell(e.lambda.imag()) + ',' +
             cell(e.magnitude) + '\n';
  }
  return out;
}

}
