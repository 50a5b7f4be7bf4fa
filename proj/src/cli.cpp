#include "lily/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "lily/csv.hpp"
#include "lily/experiments.hpp"

namespace lily::cli {

namespace {

using nlohmann::json;

constexpr std::string_view kToolName = "lily-router";

// Raised for configuration problems detected before any computation.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  int n = 2;
  double t_max = 4.0 * std::numbers::pi;
  int points = 512;
  int threads = 0;
  std::string out;
};

struct NumericOptions {
  int phase_grid = kDefaultPhaseGrid;
  int weight_nodes = kDefaultWeightNodes;
  double dt = kDefaultTrotterStep;
  int realizations = kDefaultRealizations;
  std::uint64_t seed = 42;
};

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"noiseless", {"subcommand", "n", "t_max", "points", "threads", "out"}},
      {"static-phase", {"subcommand", "n", "t_max", "points", "threads", "out", "k", "phase_grid"}},
      {"static-weight", {"subcommand", "n", "t_max", "points", "threads", "out", "sigma", "weight_nodes"}},
      {"ou-phase",
       {"subcommand", "n", "t_max", "points", "threads", "out", "theta", "sigma_vol", "dt", "realizations", "seed"}},
      {"ou-weight",
       {"subcommand", "n", "t_max", "points", "threads", "out", "theta", "sigma_vol", "dt", "realizations", "seed"}},
      {"peak-scaling",
       {"subcommand", "model", "sigmas", "ns", "theta", "window_lo", "window_hi", "t_max", "points", "threads", "out",
        "phase_grid", "weight_nodes", "dt", "realizations", "seed"}},
      {"resources", {"subcommand", "n", "d", "out"}},
  };
  return keys;
}

void check_keys(const json& config) {
  if (!config.is_object() || !config.contains("subcommand") || !config["subcommand"].is_string()) {
    throw UsageError("configuration must be an object with a string 'subcommand'");
  }
  const std::string sub = config["subcommand"];
  const auto it = allowed_keys().find(sub);
  if (it == allowed_keys().end()) throw UsageError("unknown subcommand '" + sub + "'");
  for (const auto& [key, value] : config.items()) {
    if (!it->second.contains(key)) throw UsageError("unknown key '" + key + "' for subcommand " + sub);
  }
}

template <typename T>
T get(const json& config, const char* key) {
  if (!config.contains(key)) throw UsageError(std::string("missing key '") + key + "'");
  try {
    return config.at(key).get<T>();
  } catch (const json::exception& e) {
    throw UsageError(std::string("bad value for '") + key + "': " + e.what());
  }
}

Scenario scenario_from(const json& c, NoiseSpec model) {
  Scenario s;
  s.model = std::move(model);
  if (c.contains("n")) s.n = get<int>(c, "n");
  s.grid = {get<double>(c, "t_max"), get<int>(c, "points")};
  s.numerics.threads = get<int>(c, "threads");
  if (c.contains("phase_grid")) s.numerics.phase_grid = get<int>(c, "phase_grid");
  if (c.contains("weight_nodes")) s.numerics.weight_nodes = get<int>(c, "weight_nodes");
  if (c.contains("dt")) s.numerics.dt = get<double>(c, "dt");
  if (c.contains("realizations")) s.numerics.realizations = get<int>(c, "realizations");
  if (c.contains("seed")) s.numerics.master_seed = get<std::uint64_t>(c, "seed");
  return s;
}

NoiseSpec model_from(const json& c) {
  const std::string sub = c["subcommand"];
  if (sub == "noiseless") return Noiseless{};
  if (sub == "static-phase") return StaticPhaseNoise{get<double>(c, "k")};
  if (sub == "static-weight") return StaticWeightNoise{get<double>(c, "sigma")};
  if (sub == "ou-phase") return OUPhaseNoise{get<double>(c, "theta"), get<double>(c, "sigma_vol")};
  return OUWeightNoise{get<double>(c, "theta"), get<double>(c, "sigma_vol")};
}

void write_outputs(const std::string& out_path, const std::string& csv, const json& config) {
  json sidecar = {{"tool", kToolName}, {"version", LILY_VERSION}, {"config", config}};
  write_file_atomic(out_path, csv);
  write_file_atomic(out_path + ".json", sidecar.dump(2) + "\n");
}

// Validates everything, then computes. UsageError for bad configuration,
// anything else is a numeric failure.
int execute(const json& config, std::ostream& out) {
  check_keys(config);
  const std::string sub = config["subcommand"];

  if (sub == "resources") {
    const auto n = get<std::int64_t>(config, "n");
    const auto d = get<std::int64_t>(config, "d");
    if (n < 1 || d < 1) throw UsageError("resources needs --n >= 1 and --d >= 1");
    const ResourceCounts rc = resource_counts(n, d);
    out << "R_QST=" << rc.state_transfer << " R_QR=" << rc.routing << "\n";
    if (config.contains("out")) {
      const std::string csv = "n,d,R_QST,R_QR\n" + std::to_string(n) + ',' + std::to_string(d) + ',' +
                              std::to_string(rc.state_transfer) + ',' + std::to_string(rc.routing) + '\n';
      write_outputs(get<std::string>(config, "out"), csv, config);
    }
    return kExitOk;
  }

  const std::string out_path = get<std::string>(config, "out");
  if (out_path.empty()) throw UsageError("--out must name a file");

  if (sub == "peak-scaling") {
    const auto family = parse_model(get<std::string>(config, "model"));
    if (!family || *family == ModelFamily::Noiseless) {
      throw UsageError("--model must be one of static-phase, static-weight, ou-phase, ou-weight");
    }
    const auto sigmas = get<std::vector<double>>(config, "sigmas");
    const auto ns = get<std::vector<int>>(config, "ns");
    const double theta = get<double>(config, "theta");
    const PeakWindow window{get<double>(config, "window_lo"), get<double>(config, "window_hi")};
    if (sigmas.empty() || ns.empty()) throw UsageError("--sigmas and --ns must be non-empty");
    if (!(window.lo <= window.hi)) throw UsageError("peak window is empty");
    Scenario base = scenario_from(config, Noiseless{});
    try {
      for (double s : sigmas) validate(Scenario{spec_for_sigma(*family, s, theta), base.n, base.grid, base.numerics});
      for (int n : ns) validate(Scenario{base.model, n, base.grid, base.numerics});
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    const ScalingTable table = peak_scaling(*family, sigmas, ns, base, window, theta);
    write_outputs(out_path, scaling_csv(table), config);
    out << "wrote " << out_path << " (" << table.rows.size() << " rows)\n";
    return kExitOk;
  }

  const Scenario scenario = scenario_from(config, model_from(config));
  try {
    validate(scenario);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const FidelityCurve curve = fidelity_curve(scenario);
  write_outputs(out_path, curve_csv(curve), config);
  out << "wrote " << out_path << " (" << curve.times.size() << " rows)\n";
  return kExitOk;
}

std::vector<double> parse_doubles(const std::string& list) {
  std::vector<double> values;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    double v = 0.0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), v);
    if (res.ec != std::errc{} || res.ptr != item.data() + item.size()) {
      throw UsageError("not a number in list: '" + item + "'");
    }
    values.push_back(v);
  }
  return values;
}

std::vector<int> parse_ints(const std::string& list) {
  std::vector<int> values;
  for (double v : parse_doubles(list)) {
    if (v != static_cast<int>(v)) throw UsageError("not an integer in list: " + std::to_string(v));
    values.push_back(static_cast<int>(v));
  }
  return values;
}

void add_common(CLI::App* cmd, CommonOptions& c) {
  cmd->add_option("--n", c.n, "number of output branches")->capture_default_str();
  cmd->add_option("--t-max", c.t_max, "end of the time grid")->capture_default_str();
  cmd->add_option("--points", c.points, "number of grid times in [0, t-max]")->capture_default_str();
  cmd->add_option("--threads", c.threads, "worker threads (0: LILY_THREADS or all cores)")->capture_default_str();
  cmd->add_option("--out", c.out, "output CSV path")->required();
}

json common_json(const std::string& sub, const CommonOptions& c) {
  return {{"subcommand", sub}, {"n", c.n}, {"t_max", c.t_max}, {"points", c.points}, {"threads", c.threads},
          {"out", c.out}};
}

void add_ensemble(CLI::App* cmd, NumericOptions& o) {
  cmd->add_option("--dt", o.dt, "Trotter step")->capture_default_str();
  cmd->add_option("--realizations", o.realizations, "ensemble size")->capture_default_str();
  cmd->add_option("--seed", o.seed, "master seed")->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Noise studies of chiral quantum routing on the Lily graph", std::string(kToolName)};
  app.require_subcommand(1);
  app.set_version_flag("--version", LILY_VERSION);

  CommonOptions common;
  NumericOptions numeric;
  double k = 0.0, sigma_eff_opt = 0.0, sigma = 0.0, theta = 1.0, sigma_vol = 0.0;
  std::string model, sigma_list, n_list = "2,10,30", sidecar;
  double window_lo = std::numbers::pi - 0.5, window_hi = std::numbers::pi + 0.5;
  std::int64_t res_n = 0, res_d = 0;
  std::string res_out;
  std::string replay_out;

  auto* noiseless = app.add_subcommand("noiseless", "noiseless fidelity curve at the optimal parameters");
  add_common(noiseless, common);

  auto* static_phase = app.add_subcommand("static-phase", "static von Mises noise on both effective phases");
  add_common(static_phase, common);
  auto* k_opt = static_phase->add_option("--kappa", k, "von Mises concentration k");
  auto* s_opt = static_phase->add_option("--sigma-eff", sigma_eff_opt, "alternative: k = 1/sigma_eff^2");
  k_opt->excludes(s_opt);
  static_phase->add_option("--grid", numeric.phase_grid, "quadrature points per phase axis (odd)")
      ->capture_default_str();

  auto* static_weight = app.add_subcommand("static-weight", "static Gaussian noise on the coupling weight");
  add_common(static_weight, common);
  static_weight->add_option("--sigma", sigma, "standard deviation of the weight error")->required();
  static_weight->add_option("--nodes", numeric.weight_nodes, "Gauss-Hermite nodes")->capture_default_str();

  CLI::App* ou_cmds[2];
  int slot = 0;
  for (const char* name : {"ou-phase", "ou-weight"}) {
    auto* cmd = app.add_subcommand(name, std::string(name) == "ou-phase"
                                             ? "Ornstein-Uhlenbeck noise on both effective phases"
                                             : "Ornstein-Uhlenbeck noise on the coupling weight");
    add_common(cmd, common);
    cmd->add_option("--theta", theta, "mean-reversion rate")->capture_default_str();
    cmd->add_option("--sigma-vol", sigma_vol, "OU volatility")->required();
    add_ensemble(cmd, numeric);
    ou_cmds[slot++] = cmd;
  }

  auto* scaling = app.add_subcommand("peak-scaling", "first-peak height and time versus sigma_eff and n");
  scaling->add_option("--model", model, "static-phase | static-weight | ou-phase | ou-weight")->required();
  scaling->add_option("--sigmas", sigma_list, "comma-separated sigma_eff values")->required();
  scaling->add_option("--ns", n_list, "comma-separated output counts")->capture_default_str();
  scaling->add_option("--theta", theta, "OU mean-reversion rate")->capture_default_str();
  scaling->add_option("--window-lo", window_lo, "peak search window start")->capture_default_str();
  scaling->add_option("--window-hi", window_hi, "peak search window end")->capture_default_str();
  scaling->add_option("--t-max", common.t_max, "end of the time grid")->capture_default_str();
  scaling->add_option("--points", common.points, "number of grid times")->capture_default_str();
  scaling->add_option("--threads", common.threads, "worker threads")->capture_default_str();
  scaling->add_option("--out", common.out, "output CSV path")->required();
  scaling->add_option("--grid", numeric.phase_grid, "phase quadrature points")->capture_default_str();
  scaling->add_option("--nodes", numeric.weight_nodes, "Gauss-Hermite nodes")->capture_default_str();
  add_ensemble(scaling, numeric);

  auto* resources = app.add_subcommand("resources", "resource counts: state transfer vs routing");
  resources->add_option("--n", res_n, "senders/receivers parameter n")->required();
  resources->add_option("--d", res_d, "half channel length D")->required();
  resources->add_option("--out", res_out, "optional CSV path");

  auto* replay = app.add_subcommand("replay", "re-run a configuration from a JSON sidecar");
  replay->add_option("sidecar", sidecar, "sidecar written next to an earlier CSV")->required();
  replay->add_option("--out", replay_out, "write to this path instead of the recorded one");

  json config;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    if (noiseless->parsed()) {
      config = common_json("noiseless", common);
    } else if (static_phase->parsed()) {
      if (k_opt->count() == 0 && s_opt->count() == 0) throw UsageError("static-phase needs --kappa or --sigma-eff");
      if (s_opt->count() > 0) {
        if (!(sigma_eff_opt > 0.0)) throw UsageError("--sigma-eff must be > 0");
        k = 1.0 / (sigma_eff_opt * sigma_eff_opt);
      }
      config = common_json("static-phase", common);
      config["k"] = k;
      config["phase_grid"] = numeric.phase_grid;
    } else if (static_weight->parsed()) {
      config = common_json("static-weight", common);
      config["sigma"] = sigma;
      config["weight_nodes"] = numeric.weight_nodes;
    } else if (ou_cmds[0]->parsed() || ou_cmds[1]->parsed()) {
      config = common_json(ou_cmds[0]->parsed() ? "ou-phase" : "ou-weight", common);
      config["theta"] = theta;
      config["sigma_vol"] = sigma_vol;
      config["dt"] = numeric.dt;
      config["realizations"] = numeric.realizations;
      config["seed"] = numeric.seed;
    } else if (scaling->parsed()) {
      config = {{"subcommand", "peak-scaling"}, {"model", model},
                {"sigmas", parse_doubles(sigma_list)}, {"ns", parse_ints(n_list)},
                {"theta", theta}, {"window_lo", window_lo},
                {"window_hi", window_hi}, {"t_max", common.t_max},
                {"points", common.points}, {"threads", common.threads},
                {"out", common.out}, {"phase_grid", numeric.phase_grid},
                {"weight_nodes", numeric.weight_nodes}, {"dt", numeric.dt},
                {"realizations", numeric.realizations}, {"seed", numeric.seed}};
    } else if (resources->parsed()) {
      config = {{"subcommand", "resources"}, {"n", res_n}, {"d", res_d}};
      if (!res_out.empty()) config["out"] = res_out;
    } else if (replay->parsed()) {
      std::ifstream in(sidecar);
      if (!in) throw UsageError("cannot read sidecar " + sidecar);
      json doc;
      try {
        doc = json::parse(in);
      } catch (const json::exception& e) {
        throw UsageError("sidecar is not valid JSON: " + std::string(e.what()));
      }
      if (!doc.is_object() || !doc.contains("config")) throw UsageError("sidecar has no 'config' object");
      for (const auto& [key, value] : doc.items()) {
        if (key != "tool" && key != "version" && key != "config") throw UsageError("unknown sidecar key '" + key + "'");
      }
      config = doc["config"];
      if (!replay_out.empty()) {
        if (!config.is_object()) throw UsageError("sidecar 'config' must be an object");
        config["out"] = replay_out;
      }
    }
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << LILY_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << kToolName << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << kToolName << ": " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    return execute(config, out);
  } catch (const UsageError& e) {
    err << kToolName << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << kToolName << ": numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace lily::cli
