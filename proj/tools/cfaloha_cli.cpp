// Command-line front end: one operating point or one of the three sweeps.
//
//   cfaloha point    [options]
//   cfaloha sweep-pi [--grid 0.05,0.1,...] [options]
//   cfaloha sweep-n  [--grid 1,2,4,8]      [options]
//   cfaloha sweep-l  [--grid 1,2,...,64]   [options]
//
// A --config file is applied first; command-line flags override it.

#include <iostream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "cfaloha/config.hpp"
#include "cfaloha/report.hpp"
#include "cfaloha/simulation.hpp"

namespace {

struct Options {
  std::string config_file;
  std::string out = "-";
  std::string svg;
  std::optional<std::string> grid;
  bool fixed_layout = false;
  std::vector<std::string> networks;
  std::vector<std::string> sets;
  std::vector<std::pair<std::string, std::optional<std::string>>> overrides;
};

void add_common_options(CLI::App& cmd, Options& opt, bool with_grid) {
  cmd.add_option("--config", opt.config_file, "key = value config file")->check(CLI::ExistingFile);
  cmd.add_option("--out", opt.out, "CSV destination ('-' for stdout)");
  cmd.add_option("--svg", opt.svg, "also write an SVG chart here");
  cmd.add_option("--network", opt.networks,
                 "networks to simulate: cell-free-full, user-centric, cellular-mimo, small-cell")
      ->delimiter(',');
  cmd.add_flag("--fixed-layout", opt.fixed_layout, "draw one layout and reuse it for every trial");
  cmd.add_option("--set", opt.sets, "extra key=value config override (repeatable)");
  if (with_grid) cmd.add_option("--grid", opt.grid, "comma-separated sweep values");

  static const std::vector<std::pair<std::string, std::string>> kFlags{
      {"--trials", "trials"},          {"--seed", "seed"},
      {"--pi", "pi"},                  {"--K", "K"},
      {"--L", "L"},                    {"--N", "N"},
      {"--M", "M"},                    {"--cluster-size", "cluster_size"},
      {"--tx-power-dbm", "tx_power_dbm"}, {"--alpha-db", "alpha_db"},
      {"--threads", "threads"},        {"--serving-rule", "serving_rule"},
      {"--throughput-prefactor", "throughput_prefactor"},
  };
  opt.overrides.reserve(kFlags.size());
  for (const auto& [flag, key] : kFlags) {
    opt.overrides.emplace_back(key, std::nullopt);
    auto* o = cmd.add_option(flag, opt.overrides.back().second, "overrides config key " + key);
    if (key == "throughput_prefactor") o->check(CLI::IsMember({"2B", "B"}));
  }
}

cfaloha::SimulationConfig build_config(const Options& opt) {
  cfaloha::SimulationConfig cfg;
  if (!opt.config_file.empty()) cfg = cfaloha::load_config_file(opt.config_file);
  for (const auto& [key, value] : opt.overrides) {
    if (value) cfaloha::apply_config_value(cfg, key, *value);
  }
  for (const auto& kv : opt.sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--set expects key=value");
    cfaloha::apply_config_value(cfg, kv.substr(0, eq), kv.substr(eq + 1));
  }
  if (!opt.networks.empty()) {
    cfg.networks.clear();
    for (const auto& n : opt.networks) cfg.networks.push_back(cfaloha::parse_network(n));
  }
  if (opt.fixed_layout) cfg.fixed_layout = true;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Slotted ALOHA sum-throughput over cell-free, user-centric, cellular and small-cell uplinks"};
  app.require_subcommand(1);

  Options point_opt, pi_opt, n_opt, l_opt;
  auto* point = app.add_subcommand("point", "simulate one operating point");
  auto* sweep_pi = app.add_subcommand("sweep-pi", "sweep the activation probability");
  auto* sweep_n = app.add_subcommand("sweep-n", "sweep antennas per AP");
  auto* sweep_l = app.add_subcommand("sweep-l", "sweep the number of APs at fixed M");
  add_common_options(*point, point_opt, false);
  add_common_options(*sweep_pi, pi_opt, true);
  add_common_options(*sweep_n, n_opt, true);
  add_common_options(*sweep_l, l_opt, true);

  CLI11_PARSE(app, argc, argv);

  try {
    std::vector<cfaloha::ThroughputResult> results;
    const Options* opt = nullptr;
    std::string title;
    if (point->parsed()) {
      opt = &point_opt;
      const auto cfg = build_config(*opt);
      results = cfaloha::run_point(cfg);
      title = "sum-throughput, pi = " + cfaloha::format_number(cfg.pi);
    } else if (sweep_pi->parsed()) {
      opt = &pi_opt;
      auto cfg = build_config(*opt);
      if (opt->grid) cfaloha::apply_config_value(cfg, "pi_grid", *opt->grid);
      results = cfaloha::sweep_pi(cfg, cfg.pi_grid);
      title = "sum-throughput vs activation probability";
    } else if (sweep_n->parsed()) {
      opt = &n_opt;
      auto cfg = build_config(*opt);
      if (opt->grid) cfaloha::apply_config_value(cfg, "n_grid", *opt->grid);
      results = cfaloha::sweep_n(cfg, cfg.n_grid);
      title = "sum-throughput vs antennas per AP";
    } else {
      opt = &l_opt;
      auto cfg = build_config(*opt);
      if (opt->grid) cfaloha::apply_config_value(cfg, "l_grid", *opt->grid);
      results = cfaloha::sweep_l(cfg, cfg.l_grid);
      title = "sum-throughput vs number of APs";
    }

    if (!results.empty() && results.front().degenerate_stderr) {
      std::cerr << "warning: a single trial gives no standard error; reporting 0\n";
    }
    if (opt->out == "-") {
      cfaloha::write_csv(results, std::cout);
    } else {
      cfaloha::emit_csv(results, opt->out);
    }
    if (!opt->svg.empty()) cfaloha::emit_svg(results, opt->svg, title);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
