// rvol: robust volatility estimation, forecasting and forecast evaluation.
//
// Subcommands:
//   simulate  variance-estimation Monte Carlo study (sample/trimmed/Huber)
//   forecast  per-time-point predictor and proxy series
//   evaluate  aggregate loss table (raw, optimally scaled, beta)
//   compare   rolling loss differences and rolling scale between two predictors
//
// Exit codes: 0 success, 2 config error, 3 data error, 4 numeric failure.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rvol/csv.hpp"
#include "rvol/losses.hpp"
#include "rvol/pipeline.hpp"
#include "rvol/sim.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rvol;

namespace {

constexpr const char* kVersion = "0.1.0";
constexpr int kSchemaVersion = 1;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string input;  // CSV path; empty means simulated input
  std::optional<VolPathModel> model;
  int model_T = 0;
  std::vector<PredictorConfig> predictors;
  std::vector<ProxyConfig> proxies;
  std::vector<std::string> losses{"mse", "ql"};
  int window = 180;
  bool scaling = true;
  double ql_floor = -1.0;  // < 0: default 1e-12 * median proxy value
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  std::string t_policy = "full";
};

void reject_unknown(const json& j, const std::vector<std::string>& allowed,
                    const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const auto& k : allowed)
      if (it.key() == k) known = true;
    if (!known)
      throw ConfigError("config: unknown key \"" + where + "." + it.key() + "\"");
  }
}

// "key=value" fields appended to a method name, e.g. "huber:hl=14:z=3.2"
std::vector<std::pair<std::string, std::string>> split_spec(
    const std::string& spec, std::string& method) {
  std::vector<std::pair<std::string, std::string>> kvs;
  std::stringstream ss(spec);
  std::string part;
  bool first = true;
  while (std::getline(ss, part, ':')) {
    if (first) {
      method = part;
      first = false;
      continue;
    }
    const auto eq = part.find('=');
    if (eq == std::string::npos)
      throw ConfigError("bad spec field \"" + part + "\" in \"" + spec + "\"");
    kvs.emplace_back(part.substr(0, eq), part.substr(eq + 1));
  }
  if (method.empty()) throw ConfigError("empty spec \"" + spec + "\"");
  return kvs;
}

PredictorConfig parse_predictor_spec(const std::string& spec) {
  PredictorConfig pc;
  std::string method;
  const auto kvs = split_spec(spec, method);
  if (method == "ewma")
    pc.method = PredictorConfig::Method::Ewma;
  else if (method == "clipewma")
    pc.method = PredictorConfig::Method::ClippedEwma;
  else if (method == "huber")
    pc.method = PredictorConfig::Method::Huber;
  else
    throw ConfigError("unknown predictor method \"" + method + "\"");
  for (const auto& [k, v] : kvs) {
    if (k == "hl")
      pc.half_life = std::stod(v);
    else if (k == "z")
      pc.z = std::stod(v);
    else if (k == "clip")
      pc.clip = std::stod(v);
    else if (k == "window")
      pc.window = std::stoi(v);
    else if (k == "name")
      pc.name = v;
    else
      throw ConfigError("unknown predictor field \"" + k + "\"");
  }
  if (!(pc.half_life > 0.0))
    throw ConfigError("predictor half-life must be > 0");
  if (pc.name.empty()) {
    std::ostringstream os;
    os << method << "_hl" << pc.half_life;
    pc.name = os.str();
  }
  return pc;
}

ProxyConfig parse_proxy_spec(const std::string& spec) {
  ProxyConfig xc;
  std::string method;
  const auto kvs = split_spec(spec, method);
  if (method == "ewma")
    xc.method = ProxyConfig::Method::Ewma;
  else if (method == "clip1")
    xc.method = ProxyConfig::Method::ClipSingle;
  else if (method == "clipewma")
    xc.method = ProxyConfig::Method::ClipEwma;
  else if (method == "huber")
    xc.method = ProxyConfig::Method::Huber;
  else
    throw ConfigError("unknown proxy method \"" + method + "\"");
  for (const auto& [k, v] : kvs) {
    if (k == "hl")
      xc.half_life = std::stod(v);
    else if (k == "m")
      xc.m = std::stoi(v);
    else if (k == "z")
      xc.z = std::stod(v);
    else if (k == "name")
      xc.name = v;
    else
      throw ConfigError("unknown proxy field \"" + k + "\"");
  }
  if (!(xc.half_life > 0.0)) throw ConfigError("proxy half-life must be > 0");
  if (xc.name.empty()) {
    std::ostringstream os;
    os << method << "_hl" << xc.half_life;
    xc.name = os.str();
  }
  return xc;
}

VolPathModel parse_model(const json& j) {
  reject_unknown(j,
                 {"kind", "var1", "var2", "switch_time", "period", "amplitude",
                  "innovation", "df", "T"},
                 "model");
  VolPathModel m;
  const std::string kind = j.value("kind", "constant");
  if (kind == "constant")
    m.kind = VolPathModel::Kind::Constant;
  else if (kind == "regime_switch")
    m.kind = VolPathModel::Kind::RegimeSwitch;
  else if (kind == "sinusoid")
    m.kind = VolPathModel::Kind::Sinusoid;
  else
    throw ConfigError("unknown model kind \"" + kind + "\"");
  m.var1 = j.value("var1", 1e-4);
  m.var2 = j.value("var2", m.var1);
  m.switch_time = j.value("switch_time", 0);
  m.period = j.value("period", 50.0);
  m.amplitude = j.value("amplitude", 0.0);
  const std::string innov = j.value("innovation", "gaussian");
  if (innov == "gaussian")
    m.innovation = VolPathModel::Innovation::Gaussian;
  else if (innov == "student_t")
    m.innovation = VolPathModel::Innovation::StudentT;
  else if (innov == "lognormal")
    m.innovation = VolPathModel::Innovation::LogNormalCentered;
  else
    throw ConfigError("unknown innovation \"" + innov + "\"");
  m.df = j.value("df", 3.0);
  return m;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  reject_unknown(j,
                 {"schema_version", "input", "model", "seed", "predictors",
                  "proxies", "losses", "window", "scaling", "ql_floor",
                  "out_dir", "T_policy"},
                 "");
  if (!j.contains("schema_version") || j["schema_version"] != kSchemaVersion)
    throw ConfigError("config: schema_version must be present and equal 1");
  RunConfig cfg;
  cfg.input = j.value("input", "");
  if (j.contains("model")) {
    cfg.model = parse_model(j["model"]);
    cfg.model_T = j["model"].value("T", 500);
  }
  cfg.seed = j.value("seed", 1ULL);
  if (j.contains("predictors"))
    for (const auto& p : j["predictors"])
      cfg.predictors.push_back(parse_predictor_spec(p.get<std::string>()));
  if (j.contains("proxies"))
    for (const auto& p : j["proxies"])
      cfg.proxies.push_back(parse_proxy_spec(p.get<std::string>()));
  if (j.contains("losses"))
    cfg.losses = j["losses"].get<std::vector<std::string>>();
  cfg.window = j.value("window", 180);
  cfg.scaling = j.value("scaling", true);
  cfg.ql_floor = j.value("ql_floor", -1.0);
  cfg.out_dir = j.value("out_dir", ".");
  cfg.t_policy = j.value("T_policy", "full");
  return cfg;
}

void validate_config(const RunConfig& cfg) {
  if (cfg.predictors.empty())
    throw ConfigError("config: at least one predictor required");
  if (cfg.proxies.empty())
    throw ConfigError("config: at least one proxy required");
  if (cfg.window < 1) throw ConfigError("config: window must be >= 1");
  for (const auto& l : cfg.losses)
    if (l != "mse" && l != "ql")
      throw ConfigError("config: unknown loss \"" + l + "\"");
  if (cfg.input.empty() && !cfg.model)
    throw ConfigError("config: either input CSV or a simulation model required");
}

RobustLossSpec make_loss(const std::string& name) {
  if (name == "mse") return mse_loss();
  return ql_loss();
}

void apply_t_policy(RunConfig& cfg) {
  if (cfg.t_policy == "full") return;
  if (cfg.t_policy.rfind("fixed:", 0) == 0) {
    const double T = std::stod(cfg.t_policy.substr(6));
    if (!(T >= 1.0)) throw ConfigError("T-policy fixed:<N> requires N >= 1");
    for (auto& xc : cfg.proxies) xc.T = T;
    return;
  }
  throw ConfigError("unknown T-policy \"" + cfg.t_policy + "\" (full|fixed:<N>)");
}

ReturnSeries get_returns(const RunConfig& cfg) {
  if (!cfg.input.empty()) return load_returns_csv(cfg.input);
  auto [rs, path] = simulate_returns(*cfg.model, cfg.model_T, cfg.seed);
  return rs;
}

double series_median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// Floor applied to proxy and predictor values before QL evaluation.
VolSeries floored(const VolSeries& s, double floor_value) {
  VolSeries out = s;
  for (int t = 0; t < out.size(); ++t)
    if (out.valid[t] && out.values[t] < floor_value)
      out.values[t] = floor_value;
  return out;
}

double ql_floor_for(const RunConfig& cfg, const VolSeries& proxy) {
  if (cfg.ql_floor >= 0.0) return cfg.ql_floor;
  std::vector<double> vals;
  for (int t = 0; t < proxy.size(); ++t)
    if (proxy.valid[t]) vals.push_back(proxy.values[t]);
  return 1e-12 * series_median(std::move(vals));
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write " + path.string());
  out << content;
}

void write_manifest(const RunConfig& cfg, const std::string& subcommand,
                    double wall_seconds, const json& extra = json::object()) {
  json m;
  m["subcommand"] = subcommand;
  m["library_version"] = kVersion;
  m["seed"] = cfg.seed;
  m["wall_time_seconds"] = wall_seconds;
  json c;
  c["schema_version"] = kSchemaVersion;
  c["input"] = cfg.input;
  c["window"] = cfg.window;
  c["scaling"] = cfg.scaling;
  c["losses"] = cfg.losses;
  c["T_policy"] = cfg.t_policy;
  std::vector<std::string> pn, xn;
  for (const auto& p : cfg.predictors) pn.push_back(p.name);
  for (const auto& x : cfg.proxies) xn.push_back(x.name);
  c["predictors"] = pn;
  c["proxies"] = xn;
  m["config"] = c;
  for (auto it = extra.begin(); it != extra.end(); ++it) m[it.key()] = *it;
  write_file(fs::path(cfg.out_dir) / "manifest.json", m.dump(2) + "\n");
}

struct Computed {
  ReturnSeries returns;
  std::vector<VolSeries> predictors;
  std::vector<VolSeries> proxies;
};

Computed compute_series(const RunConfig& cfg) {
  Computed c;
  c.returns = get_returns(cfg);
  int max_window = 0;
  for (const auto& pc : cfg.predictors)
    max_window = std::max(max_window, pc.effective_window());
  for (const auto& xc : cfg.proxies) {
    if (c.returns.size() - max_window - xc.effective_m() < 1)
      throw DataError("series too short for the requested windows");
  }
  for (const auto& pc : cfg.predictors)
    c.predictors.push_back(run_predictor(c.returns, pc));
  for (const auto& xc : cfg.proxies) {
    const int T_full = c.returns.size() - max_window - xc.effective_m();
    if (T_full < 1)
      throw DataError("series too short for the requested windows");
    c.proxies.push_back(run_proxy(c.returns, xc, T_full));
  }
  return c;
}

int cmd_forecast(RunConfig cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  validate_config(cfg);
  apply_t_policy(cfg);
  Computed c = compute_series(cfg);
  fs::create_directories(cfg.out_dir);

  std::ostringstream os;
  os << "index,date,return";
  for (const auto& s : c.predictors)
    os << ',' << s.meta.method << ",valid_" << s.meta.method;
  for (const auto& s : c.proxies)
    os << ',' << s.meta.method << ",valid_" << s.meta.method;
  os << '\n';
  for (int t = 0; t < c.returns.size(); ++t) {
    os << t << ','
       << (c.returns.dates.empty() ? std::string() : c.returns.dates[t]) << ','
       << fmt_double(c.returns.values[t]);
    for (const auto& s : c.predictors)
      os << ',' << fmt_double(s.values[t]) << ',' << int(s.valid[t]);
    for (const auto& s : c.proxies)
      os << ',' << fmt_double(s.values[t]) << ',' << int(s.valid[t]);
    os << '\n';
  }
  write_file(fs::path(cfg.out_dir) / "forecast.csv", os.str());
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  write_manifest(cfg, "forecast", secs,
                 {{"rows", c.returns.size()}});
  return 0;
}

int cmd_evaluate(RunConfig cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  validate_config(cfg);
  apply_t_policy(cfg);
  Computed c = compute_series(cfg);
  fs::create_directories(cfg.out_dir);

  std::vector<std::string> names;
  for (const auto& s : c.predictors) names.push_back(s.meta.method);

  std::vector<EvalReport> reports;
  for (const auto& lname : cfg.losses) {
    const RobustLossSpec loss = make_loss(lname);
    for (const auto& proxy : c.proxies) {
      if (loss.requires_positive) {
        const double fl = ql_floor_for(cfg, proxy);
        std::vector<VolSeries> fp;
        for (const auto& p : c.predictors) fp.push_back(floored(p, fl));
        reports.push_back(
            evaluate(loss, floored(proxy, fl), fp, names, cfg.scaling));
      } else {
        reports.push_back(evaluate(loss, proxy, c.predictors, names,
                                   cfg.scaling));
      }
    }
  }

  // Table-shaped CSV: one row per predictor, column groups per loss x proxy.
  std::ostringstream os;
  os << "predictor";
  for (const auto& rep : reports)
    os << ",raw_" << rep.loss_name << '_' << rep.proxy_name << ",scaled_"
       << rep.loss_name << '_' << rep.proxy_name << ",beta_" << rep.loss_name
       << '_' << rep.proxy_name;
  os << '\n';
  for (size_t i = 0; i < names.size(); ++i) {
    os << names[i];
    for (const auto& rep : reports)
      os << ',' << fmt_double(rep.rows[i].raw_loss) << ','
         << fmt_double(rep.rows[i].scaled_loss) << ','
         << fmt_double(rep.rows[i].beta);
    os << '\n';
  }
  write_file(fs::path(cfg.out_dir) / "evaluate.csv", os.str());
  write_file(fs::path(cfg.out_dir) / "evaluate.json",
             report_to_json(reports) + "\n");
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  write_manifest(cfg, "evaluate", secs,
                 {{"T_effective",
                   reports.empty() ? 0 : reports.front().T_effective}});
  return 0;
}

int cmd_compare(RunConfig cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  validate_config(cfg);
  if (cfg.predictors.size() != 2)
    throw ConfigError("compare: exactly two predictors required");
  apply_t_policy(cfg);
  Computed c = compute_series(cfg);
  fs::create_directories(cfg.out_dir);

  struct Column {
    std::string label;
    std::vector<double> diff;
    std::vector<double> betaA, betaB;
    std::vector<int> t_index;
  };
  std::vector<Column> cols;

  for (const auto& lname : cfg.losses) {
    const RobustLossSpec loss = make_loss(lname);
    for (const auto& raw_proxy : c.proxies) {
      VolSeries proxy = raw_proxy;
      VolSeries predA = c.predictors[0];
      VolSeries predB = c.predictors[1];
      if (loss.requires_positive) {
        const double fl = ql_floor_for(cfg, proxy);
        proxy = floored(proxy, fl);
        predA = floored(predA, fl);
        predB = floored(predB, fl);
      }
      const std::vector<int> idx = joint_valid_indices(proxy, {&predA, &predB});
      if (static_cast<int>(idx.size()) < cfg.window)
        throw DataError("compare: overlap shorter than rolling window");
      Column col;
      col.label = lname + "_" + proxy.meta.method;
      col.diff = rolling_loss_difference(loss, proxy, predA, predB, cfg.window);
      for (size_t i = cfg.window - 1; i < idx.size(); ++i) {
        col.t_index.push_back(idx[i]);
        double numA = 0, denA = 0, numB = 0, denB = 0, ratioA = 0, ratioB = 0;
        for (size_t j = i + 1 - cfg.window; j <= i; ++j) {
          const int t = idx[j];
          numA += predA.values[t] * proxy.values[t];
          denA += predA.values[t] * predA.values[t];
          numB += predB.values[t] * proxy.values[t];
          denB += predB.values[t] * predB.values[t];
          ratioA += proxy.values[t] / predA.values[t];
          ratioB += proxy.values[t] / predB.values[t];
        }
        if (lname == "mse") {
          col.betaA.push_back(numA / denA);
          col.betaB.push_back(numB / denB);
        } else {
          col.betaA.push_back(ratioA / cfg.window);
          col.betaB.push_back(ratioB / cfg.window);
        }
      }
      cols.push_back(std::move(col));
    }
  }

  const std::string nameA = c.predictors[0].meta.method;
  const std::string nameB = c.predictors[1].meta.method;
  std::ostringstream os;
  os << "row";
  for (const auto& col : cols)
    os << ",t_" << col.label << ",diff_" << col.label << ",beta_" << nameA
       << '_' << col.label << ",beta_" << nameB << '_' << col.label;
  os << '\n';
  size_t rows = 0;
  for (const auto& col : cols) rows = std::max(rows, col.diff.size());
  for (size_t i = 0; i < rows; ++i) {
    os << i;
    for (const auto& col : cols) {
      if (i < col.diff.size())
        os << ',' << col.t_index[i] << ',' << fmt_double(col.diff[i]) << ','
           << fmt_double(col.betaA[i]) << ',' << fmt_double(col.betaB[i]);
      else
        os << ",,,,";
    }
    os << '\n';
  }
  write_file(fs::path(cfg.out_dir) / "compare.csv", os.str());
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  write_manifest(cfg, "compare", secs,
                 {{"predictor_a", nameA}, {"predictor_b", nameB}});
  return 0;
}

struct SimulateArgs {
  std::string dist = "lognormal";  // lognormal | t:<df>
  int n = 100;
  int reps = 2000;
  std::string alpha_grid = "0.005,0.01,0.02,0.03,0.05";
  std::string z_grid = "1.5,2,2.5,3";
  bool winsorize = false;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
};

std::vector<double> parse_grid(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(std::stod(part));
  if (out.empty()) throw ConfigError("empty grid");
  return out;
}

int cmd_simulate(const SimulateArgs& args) {
  const auto t0 = std::chrono::steady_clock::now();
  IidDist dist;
  if (args.dist == "lognormal") {
    dist.kind = IidDist::Kind::LogNormal01;
  } else if (args.dist.rfind("t:", 0) == 0) {
    dist.kind = IidDist::Kind::StudentT;
    dist.df = std::stod(args.dist.substr(2));
    if (!(dist.df > 2.0)) throw ConfigError("simulate: t df must be > 2");
  } else {
    throw ConfigError("simulate: dist must be lognormal or t:<df>");
  }
  const MCStudyResult res = mc_variance_study(
      dist, args.n, args.reps, parse_grid(args.alpha_grid),
      parse_grid(args.z_grid), args.seed, args.winsorize);
  fs::create_directories(args.out_dir);
  write_file(fs::path(args.out_dir) / "mc_study.csv", mc_study_to_csv(res));
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  json m;
  m["subcommand"] = "simulate";
  m["library_version"] = kVersion;
  m["seed"] = args.seed;
  m["dist"] = args.dist;
  m["n"] = args.n;
  m["reps"] = args.reps;
  m["alpha_grid"] = args.alpha_grid;
  m["z_grid"] = args.z_grid;
  m["winsorize"] = args.winsorize;
  m["wall_time_seconds"] = secs;
  write_file(fs::path(args.out_dir) / "manifest.json", m.dump(2) + "\n");
  return 0;
}

void add_run_options(CLI::App* sub, RunConfig& cfg, std::string& config_path,
                     std::vector<std::string>& pred_specs,
                     std::vector<std::string>& proxy_specs,
                     std::string& model_json) {
  sub->add_option("--config", config_path, "JSON run configuration file");
  sub->add_option("--input", cfg.input, "input CSV (header date,return)");
  sub->add_option("--model", model_json, "inline simulation model JSON");
  sub->add_option("--out-dir", cfg.out_dir, "output directory");
  sub->add_option("--seed", cfg.seed, "RNG seed");
  sub->add_option("--loss", cfg.losses, "loss functions (mse, ql)");
  sub->add_option("--predictor", pred_specs,
                  "predictor spec, e.g. huber:hl=14 (repeatable)");
  sub->add_option("--proxy", proxy_specs,
                  "proxy spec, e.g. huber:hl=7 (repeatable)");
  sub->add_option("--window", cfg.window, "rolling window length");
  sub->add_option("--T-policy", cfg.t_policy,
                  "proxy inflation horizon: full or fixed:<N>");
  sub->add_option("--ql-floor", cfg.ql_floor,
                  "floor for QL evaluation (default 1e-12 x proxy median)");
  sub->add_flag("!--no-scaling", cfg.scaling, "disable optimal scaling");
}

RunConfig finalize_run_config(RunConfig flags_cfg, const std::string& config_path,
                              const std::vector<std::string>& pred_specs,
                              const std::vector<std::string>& proxy_specs,
                              const std::string& model_json) {
  RunConfig cfg =
      config_path.empty() ? RunConfig{} : load_config_file(config_path);
  if (!flags_cfg.input.empty()) cfg.input = flags_cfg.input;
  if (!model_json.empty()) {
    json j;
    try {
      j = json::parse(model_json);
    } catch (const json::exception& e) {
      throw ConfigError(std::string("bad --model JSON: ") + e.what());
    }
    cfg.model = parse_model(j);
    cfg.model_T = j.value("T", 500);
  }
  for (const auto& s : pred_specs)
    cfg.predictors.push_back(parse_predictor_spec(s));
  for (const auto& s : proxy_specs)
    cfg.proxies.push_back(parse_proxy_spec(s));
  if (flags_cfg.seed != 1) cfg.seed = flags_cfg.seed;
  if (flags_cfg.window != 180) cfg.window = flags_cfg.window;
  if (flags_cfg.out_dir != ".") cfg.out_dir = flags_cfg.out_dir;
  if (flags_cfg.ql_floor >= 0.0) cfg.ql_floor = flags_cfg.ql_floor;
  if (flags_cfg.t_policy != "full") cfg.t_policy = flags_cfg.t_policy;
  if (!flags_cfg.scaling) cfg.scaling = false;
  if (!flags_cfg.losses.empty() &&
      flags_cfg.losses != std::vector<std::string>{"mse", "ql"})
    cfg.losses = flags_cfg.losses;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"robust volatility estimation, forecasting and evaluation"};
  app.require_subcommand(1);

  SimulateArgs sim_args;
  auto* sim = app.add_subcommand("simulate",
                                 "variance-estimation Monte Carlo study");
  sim->add_option("--dist", sim_args.dist, "lognormal or t:<df>");
  sim->add_option("--n", sim_args.n, "sample size per replication");
  sim->add_option("--reps", sim_args.reps, "Monte Carlo replications");
  sim->add_option("--alpha-grid", sim_args.alpha_grid, "trimming levels");
  sim->add_option("--z-grid", sim_args.z_grid, "Huber deviation parameters");
  sim->add_flag("--winsorize", sim_args.winsorize,
                "winsorize instead of trimming");
  sim->add_option("--seed", sim_args.seed, "RNG seed");
  sim->add_option("--out-dir", sim_args.out_dir, "output directory");

  struct SubState {
    RunConfig cfg;
    std::string config_path, model_json;
    std::vector<std::string> pred_specs, proxy_specs;
  };
  SubState fc, ev, cp;
  auto* forecast = app.add_subcommand("forecast",
                                      "predictor and proxy series");
  add_run_options(forecast, fc.cfg, fc.config_path, fc.pred_specs,
                  fc.proxy_specs, fc.model_json);
  auto* evaluate_sub = app.add_subcommand("evaluate", "aggregate loss table");
  add_run_options(evaluate_sub, ev.cfg, ev.config_path, ev.pred_specs,
                  ev.proxy_specs, ev.model_json);
  auto* compare = app.add_subcommand("compare", "rolling loss differences");
  add_run_options(compare, cp.cfg, cp.config_path, cp.pred_specs,
                  cp.proxy_specs, cp.model_json);

  CLI11_PARSE(app, argc, argv);

  try {
    if (sim->parsed()) return cmd_simulate(sim_args);
    auto run = [](SubState& st, int (*fn)(RunConfig)) {
      return fn(finalize_run_config(st.cfg, st.config_path, st.pred_specs,
                                    st.proxy_specs, st.model_json));
    };
    if (forecast->parsed()) return run(fc, cmd_forecast);
    if (evaluate_sub->parsed()) return run(ev, cmd_evaluate);
    if (compare->parsed()) return run(cp, cmd_compare);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numeric failure: " << e.what() << '\n';
    return 4;
  }
  return 0;
}
