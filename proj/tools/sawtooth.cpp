// Command-line driver for the sawtooth-ladder quench toolkit.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "sawtooth/errors.hpp"
#include "sawtooth/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalidConfig = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitNumerical = 4;

struct FlagState {
  std::string config_path;
  std::string convention;
  std::string initial_state;
  std::string time_unit;
  std::string eigenvalue_file;
  std::string sweep_axes;
  std::vector<int> lifetime_sizes;
};

void add_common_flags(CLI::App* cmd, sawtooth::ExperimentConfig& cfg,
                      FlagState& flags) {
  cmd->add_option("--config", flags.config_path, "JSON config file");
  cmd->add_option("-L,--sites", cfg.model.L, "chain length (even)");
  cmd->add_option("--J", cfg.model.J, "nearest-neighbor hopping");
  cmd->add_option("--Jp", cfg.model.Jp, "next-nearest hopping on odd sites");
  cmd->add_option("--V", cfg.model.V, "nearest-neighbor interaction");
  cmd->add_option("--tmax", cfg.t_max, "time window in selected units");
  cmd->add_option("--samples", cfg.n_samples, "time grid points");
  cmd->add_option("--threads", cfg.threads, "worker count");
  cmd->add_option("--out", cfg.output_dir, "output directory");
  cmd->add_option("--convention", flags.convention,
                  "interaction convention: plain|symmetrized");
  cmd->add_option("--cut", cfg.cut, "entanglement cut (chain sites)");
  cmd->add_option("--time-unit", flags.time_unit, "inv_V|inv_J");
  cmd->add_option("--initial", flags.initial_state,
                  "domain_wall, block:<len>, or a 0/1 pattern");
  cmd->add_option("--dense-limit", cfg.dense_limit,
                  "max dimension for the dense eigensolver");
}

// Precedence: built-in defaults < config file < command-line flags.
sawtooth::ExperimentConfig assemble_config(const CLI::App* cmd,
                                           const sawtooth::ExperimentConfig& cli_cfg,
                                           const FlagState& flags,
                                           const std::string& experiment) {
  sawtooth::ExperimentConfig cfg;
  if (!flags.config_path.empty()) {
    std::ifstream in(flags.config_path);
    if (!in) {
      throw std::invalid_argument("cannot read config file: " + flags.config_path);
    }
    nlohmann::json j;
    in >> j;
    cfg = sawtooth::config_from_json(j);
  }
  cfg.experiment = experiment;
  auto given = [&](const std::string& name) { return cmd->count(name) > 0; };
  if (given("--sites")) cfg.model.L = cli_cfg.model.L;
  if (given("--J")) cfg.model.J = cli_cfg.model.J;
  if (given("--Jp")) cfg.model.Jp = cli_cfg.model.Jp;
  if (given("--V")) cfg.model.V = cli_cfg.model.V;
  if (given("--tmax")) cfg.t_max = cli_cfg.t_max;
  if (given("--samples")) cfg.n_samples = cli_cfg.n_samples;
  if (given("--threads")) cfg.threads = cli_cfg.threads;
  if (given("--out")) cfg.output_dir = cli_cfg.output_dir;
  if (given("--cut")) cfg.cut = cli_cfg.cut;
  if (given("--dense-limit")) cfg.dense_limit = cli_cfg.dense_limit;
  if (!flags.convention.empty()) {
    cfg.convention = sawtooth::parse_convention(flags.convention);
  }
  if (!flags.time_unit.empty()) cfg.time_unit = flags.time_unit;
  if (!flags.initial_state.empty()) cfg.initial_state = flags.initial_state;
  if (!flags.eigenvalue_file.empty()) cfg.eigenvalue_file = flags.eigenvalue_file;
  if (!flags.sweep_axes.empty()) cfg.sweep.axes = flags.sweep_axes;
  if (!flags.lifetime_sizes.empty()) cfg.lifetime_sizes = flags.lifetime_sizes;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quench dynamics of hardcore bosons on the sawtooth ladder"};
  app.require_subcommand(1);

  sawtooth::ExperimentConfig cli_cfg;
  FlagState flags;

  auto* quench = app.add_subcommand(
      "quench", "time evolution: return probability, entropy, observable");
  add_common_flags(quench, cli_cfg, flags);

  auto* sweep = app.add_subcommand("sweep", "2D parameter grid of averaged P(t)");
  add_common_flags(sweep, cli_cfg, flags);
  sweep->add_option("--axes", flags.sweep_axes, "J_Jp or V_Jp");
  sweep->add_option("--a-min", cli_cfg.sweep.a_min, "first axis start");
  sweep->add_option("--a-max", cli_cfg.sweep.a_max, "first axis end");
  sweep->add_option("--a-steps", cli_cfg.sweep.a_steps, "first axis points");
  sweep->add_option("--b-min", cli_cfg.sweep.b_min, "second axis start");
  sweep->add_option("--b-max", cli_cfg.sweep.b_max, "second axis end");
  sweep->add_option("--b-steps", cli_cfg.sweep.b_steps, "second axis points");
  sweep->add_flag("--with-r", cli_cfg.sweep.with_r, "add <r> column");
  sweep->add_flag("--with-delta0", cli_cfg.sweep.with_delta0,
                  "add thermalization-deviation column");

  auto* spectrum =
      app.add_subcommand("spectrum", "level statistics of a PH parity sector");
  add_common_flags(spectrum, cli_cfg, flags);
  spectrum->add_option("--eigenvalues", flags.eigenvalue_file,
                       "analyze a plain-text eigenvalue file instead");
  spectrum->add_option("--unfold-degree", cli_cfg.poly_degree,
                       "staircase polynomial degree");

  auto* locstate = app.add_subcommand(
      "locstate", "perturbative localized-eigenstate fidelity grid");
  add_common_flags(locstate, cli_cfg, flags);
  locstate->add_option("--loc-min", cli_cfg.loc_min, "grid start (J/V)");
  locstate->add_option("--loc-max", cli_cfg.loc_max, "grid end (J/V)");
  locstate->add_option("--loc-steps", cli_cfg.loc_steps, "grid points");

  auto* lifetime =
      app.add_subcommand("lifetime", "localization lifetime vs system size");
  add_common_flags(lifetime, cli_cfg, flags);
  lifetime->add_option("--sizes", flags.lifetime_sizes, "system sizes");

  auto* states = app.add_subcommand("states", "print named initial-state patterns");
  int states_L = 12;
  states->add_option("-L,--sites", states_L, "chain length");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidConfig;
  }

  try {
    std::vector<std::string> files;
    if (quench->parsed()) {
      files = sawtooth::run_quench(
          assemble_config(quench, cli_cfg, flags, "quench"));
    } else if (sweep->parsed()) {
      auto cfg = assemble_config(sweep, cli_cfg, flags, "sweep");
      auto taken = [&](const std::string& n) { return sweep->count(n) > 0; };
      if (taken("--a-min")) cfg.sweep.a_min = cli_cfg.sweep.a_min;
      if (taken("--a-max")) cfg.sweep.a_max = cli_cfg.sweep.a_max;
      if (taken("--a-steps")) cfg.sweep.a_steps = cli_cfg.sweep.a_steps;
      if (taken("--b-min")) cfg.sweep.b_min = cli_cfg.sweep.b_min;
      if (taken("--b-max")) cfg.sweep.b_max = cli_cfg.sweep.b_max;
      if (taken("--b-steps")) cfg.sweep.b_steps = cli_cfg.sweep.b_steps;
      if (cli_cfg.sweep.with_r) cfg.sweep.with_r = true;
      if (cli_cfg.sweep.with_delta0) cfg.sweep.with_delta0 = true;
      files = sawtooth::run_sweep(cfg);
    } else if (spectrum->parsed()) {
      auto cfg = assemble_config(spectrum, cli_cfg, flags, "spectrum");
      if (spectrum->count("--unfold-degree") > 0) {
        cfg.poly_degree = cli_cfg.poly_degree;
      }
      if (flags.convention.empty() && flags.config_path.empty()) {
        cfg.convention = sawtooth::InteractionConvention::symmetrized;
      }
      files = sawtooth::run_spectrum(cfg);
    } else if (locstate->parsed()) {
      auto cfg = assemble_config(locstate, cli_cfg, flags, "locstate");
      auto taken = [&](const std::string& n) { return locstate->count(n) > 0; };
      if (taken("--loc-min")) cfg.loc_min = cli_cfg.loc_min;
      if (taken("--loc-max")) cfg.loc_max = cli_cfg.loc_max;
      if (taken("--loc-steps")) cfg.loc_steps = cli_cfg.loc_steps;
      files = sawtooth::run_locstate(cfg);
    } else if (lifetime->parsed()) {
      auto cfg = assemble_config(lifetime, cli_cfg, flags, "lifetime");
      if (flags.config_path.empty()) {
        // Default couplings and window for the size-scaling study.
        if (lifetime->count("--J") == 0) cfg.model.J = -0.68 * cfg.model.V;
        if (lifetime->count("--Jp") == 0) cfg.model.Jp = -0.4 * cfg.model.V;
        if (lifetime->count("--tmax") == 0) cfg.t_max = 5000.0;
        if (lifetime->count("--samples") == 0) cfg.n_samples = 50001;
      }
      files = sawtooth::run_lifetime(cfg);
    } else if (states->parsed()) {
      std::cout << sawtooth::states_report(states_L);
      return kExitOk;
    }
    for (const auto& f : files) std::cout << "wrote " << f << '\n';
    return kExitOk;
  } catch (const sawtooth::capacity_error& e) {
    std::cerr << "capacity error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
}
