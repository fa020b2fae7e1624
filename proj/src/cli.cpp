#include "gcdmd/cli.hpp"

#include "gcdmd/report.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <iostream>
#include <sstream>

namespace gcdmd {

namespace fs = std::filesystem;

PipelineOptions RunConfig::pipeline() const {
  PipelineOptions p;
  p.alpha = alpha;
  p.rank = rank;
  p.gct_mode = gct_mode;
  p.gct_order = gct_order > 0 ? OrderSpec::of(gct_order) : OrderSpec::automatic(p_max, criterion);
  p.amplitudes = amplitudes;
  p.dehankel = dehankel;
  return p;
}

namespace {

Criterion parse_criterion(const std::string& s) {
  if (s == "aic") return Criterion::aic;
  if (s == "bic") return Criterion::bic;
  throw Error("unknown criterion '" + s + "'");
}

int parse_order(const std::string& s) {
  if (s == "auto") return 0;
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used == s.size() && v >= 1) return v;
  } catch (const std::exception&) {
  }
  throw Error("order must be a positive integer or 'auto', got '" + s + "'");
}

void parse_lag_range(const std::string& s, int& lo, int& hi) {
  const auto pos = s.find_first_of(":-.");
  if (pos == std::string::npos) {
    lo = hi = std::stoi(s);
    return;
  }
  const auto rest = s.find_first_not_of(":-.", pos);
  lo = std::stoi(s.substr(0, pos));
  hi = std::stoi(s.substr(rest));
}

void check_config(const RunConfig& c) {
  if (!(c.alpha > 0.0 && c.alpha < 1.0)) throw Error("alpha must lie in (0, 1)");
  if (!(c.split > 0.0 && c.split < 1.0)) throw Error("split must lie in (0, 1)");
  if (!(c.dt > 0.0)) throw Error("dt must be positive");
  if (c.offset < 0) throw Error("offset must be non-negative");
}

fs::path out_dir(const RunConfig& c) {
  fs::path p(c.out);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (!fs::is_directory(p)) throw Error("output directory " + c.out + " is not usable");
  return p;
}

TimeSeries load_input(const RunConfig& c) {
  if (c.input.empty()) throw Error("--input is required");
  TimeSeries ts = load_csv(c.input, c.dt);
  if (c.offset > 0) ts = ts.slice(c.offset, ts.samples() - c.offset);
  return ts;
}

Json config_json(const RunConfig& c) {
  return {{"input", c.input},
          {"dt", num(c.dt)},
          {"offset", c.offset},
          {"alpha", num(c.alpha)},
          {"split", num(c.split)},
          {"rank", c.rank.kind == RankPolicy::Kind::fixed ? Json{{"fixed", c.rank.rank}} : Json{{"energy", num(c.rank.tau)}}},
          {"gct_mode", gct_mode_name(c.gct_mode)},
          {"gct_order", c.gct_order > 0 ? Json(c.gct_order) : Json("auto")},
          {"criterion", c.criterion == Criterion::aic ? "aic" : "bic"},
          {"p_max", c.p_max},
          {"amplitudes", c.amplitudes == AmplitudeMode::first_snapshot ? "first_snapshot" : "least_squares"},
          {"dehankel", c.dehankel == DehankelMode::first_block ? "first_block" : "average"},
          {"seed", c.seed}};
}

template <class F>
int guarded(std::ostream& err, F&& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}

void apply_config_json(RunConfig& c, const std::string& text) {
  const Json j = Json::parse(text);
  if (!j.is_object()) throw Error("config must be a JSON object");
  auto get = [&](const char* k, auto& v) {
    if (j.contains(k)) j.at(k).get_to(v);
  };
  get("input", c.input);
  get("dt", c.dt);
  get("lag", c.lag);
  get("offset", c.offset);
  get("alpha", c.alpha);
  get("split", c.split);
  get("p_max", c.p_max);
  get("seed", c.seed);
  get("out", c.out);
  get("family", c.family);
  get("length", c.length);
  get("name", c.name);
  if (j.contains("lag_range")) {
    const auto r = j.at("lag_range").get<std::vector<int>>();
    if (r.size() != 2) throw Error("lag_range must be [min, max]");
    c.lag_min = r[0];
    c.lag_max = r[1];
  }
  if (j.contains("rank")) c.rank = RankPolicy::fixed(j.at("rank").get<int>());
  if (j.contains("energy")) c.rank = RankPolicy::energy(j.at("energy").get<double>());
  if (j.contains("gct_mode")) c.gct_mode = parse_gct_mode(j.at("gct_mode").get<std::string>());
  if (j.contains("gct_order")) {
    const auto& v = j.at("gct_order");
    c.gct_order = v.is_string() ? parse_order(v.get<std::string>()) : v.get<int>();
  }
  if (j.contains("order")) {
    const auto& v = j.at("order");
    c.order = v.is_string() ? parse_order(v.get<std::string>()) : v.get<int>();
  }
  if (j.contains("criterion")) c.criterion = parse_criterion(j.at("criterion").get<std::string>());
  if (j.contains("amplitudes"))
    c.amplitudes = j.at("amplitudes").get<std::string>() == "least_squares" ? AmplitudeMode::least_squares
                                                                            : AmplitudeMode::first_snapshot;
  if (j.contains("dehankel"))
    c.dehankel = j.at("dehankel").get<std::string>() == "average" ? DehankelMode::average : DehankelMode::first_block;
}

int cmd_validate(const RunConfig& cfg, std::ostream& err) {
  return guarded(err, [&] {
    check_config(cfg);
    const fs::path dir = out_dir(cfg);
    const TimeSeries ts = load_input(cfg);
    const ValidationReport v = validate(ts, cfg.lag, cfg.pipeline());
    Json body = to_json(v);
    body["config"] = config_json(cfg);
    write_file_atomic((dir / "validation.json").string(), document("validation", body));
    return v.usable ? 0 : 2;
  });
}

int cmd_sweep(const RunConfig& cfg, std::ostream& err) {
  return guarded(err, [&] {
    check_config(cfg);
    const fs::path dir = out_dir(cfg);
    const TimeSeries ts = load_input(cfg);
    const Split sp = split_series(ts, cfg.split);
    const SweepReport rep = sweep(sp.train, sp.test, cfg.lag_min, cfg.lag_max, cfg.pipeline());
    Json body = to_json(rep);
    body["config"] = config_json(cfg);
    write_file_atomic((dir / "sweep.json").string(), document("sweep", body));
    write_file_atomic((dir / "sweep_columns.csv").string(), sweep_columns_csv(rep, ts.labels));
    write_file_atomic((dir / "pvalue_vs_lag.csv").string(), sweep_column_csv(rep, "p_value"));
    write_file_atomic((dir / "statistic_vs_lag.csv").string(), sweep_column_csv(rep, "statistic"));
    write_file_atomic((dir / "cond_vs_lag.csv").string(), sweep_column_csv(rep, "cond"));
    write_file_atomic((dir / "eigenvalues.csv").string(), eigenvalue_scatter_csv(rep));
    return rep.l_star ? 0 : 2;
  });
}

int cmd_fit_predict(const RunConfig& cfg, std::ostream& err) {
  return guarded(err, [&] {
    check_config(cfg);
    const fs::path dir = out_dir(cfg);
    const TimeSeries ts = load_input(cfg);
    const Split sp = split_series(ts, cfg.split);
    const auto [v, a] = analyze(sp.train, sp.test, cfg.lag, cfg.pipeline());
    const Matrix pred = forecast(*a.model, 0, ts.samples(), cfg.dehankel);
    write_file_atomic((dir / "model.json").string(), document("dmd_model", to_json(*a.model)));
    write_file_atomic((dir / "prediction.csv").string(), to_csv(TimeSeries(pred, ts.dt, ts.labels)));
    Json body{{"validation", to_json(v)}, {"analysis", to_json(a)}, {"config", config_json(cfg)},
              {"train_samples", sp.train.samples()}, {"test_samples", sp.test.samples()}};
    write_file_atomic((dir / "fit_report.json").string(), document("fit_report", body));
    return 0;
  });
}

int cmd_granger(const RunConfig& cfg, std::ostream& err) {
  return guarded(err, [&] {
    check_config(cfg);
    const fs::path dir = out_dir(cfg);
    const TimeSeries ts = load_input(cfg);
    const OrderSpec os = cfg.order > 0 ? OrderSpec::of(cfg.order) : OrderSpec::automatic(cfg.p_max, cfg.criterion);
    const CausalityMatrix cm = causality_matrix(ts.data, os, cfg.alpha);
    Json body = to_json(cm);
    body["labels"] = ts.labels;
    body["config"] = config_json(cfg);
    write_file_atomic((dir / "causality.json").string(), document("causality_matrix", body));
    return 0;
  });
}

int cmd_synth(const RunConfig& cfg, const std::string& spec_json, std::ostream& err) {
  return guarded(err, [&] {
    const fs::path dir = out_dir(cfg);
    const Json spec = spec_json.empty() ? Json::object() : Json::parse(spec_json);
    TimeSeries ts;
    Json side{{"family", cfg.family}, {"length", cfg.length}};
    if (cfg.family == "coherency") {
      CoherencySpec s = coherency_from_json(spec);
      if (!spec.contains("seed")) s.seed = cfg.seed;
      ts = gen_coherency(s, cfg.length);
      side["spec"] = to_json(s);
    } else if (cfg.family == "var" || cfg.family == "graph3") {
      CausalGraphSpec s = cfg.family == "graph3" ? three_channel_graph(cfg.seed) : graph_from_json(spec);
      if (cfg.family == "var" && !spec.contains("seed")) s.seed = cfg.seed;
      VarDraw draw;
      ts = gen_var(s, cfg.length, draw);
      side["spec"] = to_json(s);
      Json coeffs = Json::array();
      for (const auto& a : draw.coeffs) coeffs.push_back(to_json(a));
      side["coefficients"] = coeffs;
      side["attempts"] = draw.attempts;
    } else if (cfg.family == "linear") {
      if (!spec.contains("a") || !spec.contains("x0")) throw Error("linear family needs 'a' and 'x0' in the spec");
      const auto rows = spec.at("a").get<std::vector<std::vector<double>>>();
      const auto x0v = spec.at("x0").get<std::vector<double>>();
      Matrix a(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.size()));
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw Error("linear spec: 'a' must be square");
        for (std::size_t j = 0; j < rows.size(); ++j) a(i, j) = rows[i][j];
      }
      const Vector x0 = Eigen::Map<const Vector>(x0v.data(), static_cast<Eigen::Index>(x0v.size()));
      ts = gen_linear_system(a, x0, cfg.length, cfg.dt);
      side["spec"] = spec;
    } else {
      throw Error("unknown synth family '" + cfg.family + "'");
    }
    side["dt"] = num(ts.dt);
    write_file_atomic((dir / (cfg.name + ".csv")).string(), to_csv(ts));
    write_file_atomic((dir / (cfg.name + ".json")).string(), document("synth_spec", side));
    return 0;
  });
}

int run_cli(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"Data validation and Hankel-DMD prediction with a Granger causality gate"};
  app.require_subcommand(1);

  std::string config_path, lag_range, rank_opt, energy_opt, alpha_opt, split_opt, dt_opt, seed_opt, out_opt,
      gct_mode, gct_order, order_opt, criterion, p_max_opt, offset_opt, lag_opt, spec_path, family, length_opt,
      name_opt, amp_opt, dehankel_opt;

  auto common = [&](CLI::App* sc) {
    sc->add_option("--config", config_path, "JSON config file (flags override it)");
    sc->add_option("--input", cfg.input, "CSV input, one column per channel");
    sc->add_option("--dt", dt_opt, "Sampling interval in seconds");
    sc->add_option("--alpha", alpha_opt, "Significance level");
    sc->add_option("--out", out_opt, "Output directory");
    sc->add_option("--seed", seed_opt, "Seed recorded in reports");
    sc->add_option("--offset", offset_opt, "Leading samples to drop");
  };
  auto model_opts = [&](CLI::App* sc) {
    sc->add_option("--rank", rank_opt, "Fixed DMD rank");
    sc->add_option("--energy", energy_opt, "Energy threshold for the DMD rank");
    sc->add_option("--split", split_opt, "Training fraction");
    sc->add_option("--gct-mode", gct_mode, "edge | first_row | per_row");
    sc->add_option("--gct-order", gct_order, "GCT VAR order or 'auto'");
    sc->add_option("--criterion", criterion, "aic | bic");
    sc->add_option("--p-max", p_max_opt, "Largest order tried by 'auto'");
    sc->add_option("--amplitudes", amp_opt, "first_snapshot | least_squares");
    sc->add_option("--dehankel", dehankel_opt, "first_block | average");
  };

  auto* v = app.add_subcommand("validate", "PE and GCT verdict at one lag");
  common(v);
  model_opts(v);
  v->add_option("--lag", lag_opt, "Hankel depth L");
  auto* s = app.add_subcommand("sweep", "Validate and fit over a lag range");
  common(s);
  model_opts(s);
  s->add_option("--lag-range", lag_range, "min:max");
  auto* f = app.add_subcommand("fit", "Fit on the training split and forecast the test split");
  common(f);
  model_opts(f);
  f->add_option("--lag", lag_opt, "Hankel depth L");
  auto* g = app.add_subcommand("granger", "Pairwise Granger causality matrix");
  common(g);
  g->add_option("--order", order_opt, "VAR order or 'auto'");
  g->add_option("--criterion", criterion, "aic | bic");
  g->add_option("--p-max", p_max_opt, "Largest order tried by 'auto'");
  auto* y = app.add_subcommand("synth", "Write a seeded fixture dataset");
  y->add_option("--family", family, "coherency | var | graph3 | linear");
  y->add_option("--spec", spec_path, "JSON spec for the family");
  y->add_option("--length", length_opt, "Number of samples");
  y->add_option("--name", name_opt, "Output file stem");
  y->add_option("--out", out_opt, "Output directory");
  y->add_option("--seed", seed_opt, "Seed");
  y->add_option("--dt", dt_opt, "Sampling interval (linear family)");
  y->add_option("--config", config_path, "JSON config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  std::string spec_json;
  try {
    if (!config_path.empty()) apply_config_json(cfg, read_file(config_path));
    if (!dt_opt.empty()) cfg.dt = std::stod(dt_opt);
    if (!alpha_opt.empty()) cfg.alpha = std::stod(alpha_opt);
    if (!split_opt.empty()) cfg.split = std::stod(split_opt);
    if (!out_opt.empty()) cfg.out = out_opt;
    if (!seed_opt.empty()) cfg.seed = std::stoull(seed_opt);
    if (!offset_opt.empty()) cfg.offset = std::stoi(offset_opt);
    if (!lag_opt.empty()) cfg.lag = std::stoi(lag_opt);
    if (!lag_range.empty()) parse_lag_range(lag_range, cfg.lag_min, cfg.lag_max);
    if (!rank_opt.empty()) cfg.rank = RankPolicy::fixed(std::stoi(rank_opt));
    if (!energy_opt.empty()) cfg.rank = RankPolicy::energy(std::stod(energy_opt));
    if (!gct_mode.empty()) cfg.gct_mode = parse_gct_mode(gct_mode);
    if (!gct_order.empty()) cfg.gct_order = parse_order(gct_order);
    if (!order_opt.empty()) cfg.order = parse_order(order_opt);
    if (!criterion.empty()) cfg.criterion = parse_criterion(criterion);
    if (!p_max_opt.empty()) cfg.p_max = std::stoi(p_max_opt);
    if (!family.empty()) cfg.family = family;
    if (!length_opt.empty()) cfg.length = std::stoi(length_opt);
    if (!name_opt.empty()) cfg.name = name_opt;
    if (!amp_opt.empty())
      cfg.amplitudes = amp_opt == "least_squares" ? AmplitudeMode::least_squares : AmplitudeMode::first_snapshot;
    if (!dehankel_opt.empty())
      cfg.dehankel = dehankel_opt == "average" ? DehankelMode::average : DehankelMode::first_block;
    if (!spec_path.empty()) spec_json = read_file(spec_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }

  if (*v) return cmd_validate(cfg, std::cerr);
  if (*s) return cmd_sweep(cfg, std::cerr);
  if (*f) return cmd_fit_predict(cfg, std::cerr);
  if (*g) return cmd_granger(cfg, std::cerr);
  return cmd_synth(cfg, spec_json, std::cerr);
}

}
