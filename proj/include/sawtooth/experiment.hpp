#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "sawtooth/evolve.hpp"
#include "sawtooth/hamiltonian.hpp"

namespace sawtooth {

// Runs `fn(i)` for i in [0, n) on `threads` workers. Work is assigned by
// index, so output written per-index is identical for any worker count.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn);

struct SweepSpec {
  std::string axes = "J_Jp";  // "J_Jp" (fixed V) or "V_Jp" (fixed J)
  double a_min = -2.0, a_max = -0.05;
  int a_steps = 8;
  double b_min = -2.0, b_max = -0.05;
  int b_steps = 8;
  bool with_r = false;       // add the <r> gap-ratio column
  bool with_delta0 = false;  // add the thermalization-deviation column
};

struct ExperimentConfig {
  ModelParams model{12, -0.3, -0.3, 1.0};
  std::string experiment = "quench";
  std::string initial_state = "domain_wall";  // named, "block:<len>", or pattern
  double t_max = 200.0;       // in units selected by time_unit
  std::size_t n_samples = 2001;
  std::string time_unit = "inv_V";  // "inv_V" or "inv_J"
  std::string output_dir = ".";
  InteractionConvention convention = InteractionConvention::plain;
  int threads = 1;
  int cut = -1;  // entanglement cut; -1 means L/2
  int poly_degree = 10;
  double delta_E = 1.5;  // microcanonical half-window, units of V
  std::size_t dense_limit = kDefaultDenseLimit;

  SweepSpec sweep;
  std::vector<int> lifetime_sizes = {8, 10, 12};
  double loc_min = -1.0, loc_max = -0.05;
  int loc_steps = 20;
  std::string eigenvalue_file;  // spectrum: analyze this file instead
};

ExperimentConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const ExperimentConfig& cfg);
std::uint64_t config_hash(const ExperimentConfig& cfg);

// Resolve initial_state to a Fock state of the config's chain.
FockState resolve_initial_state(const ExperimentConfig& cfg);

// Physical time window: t_max/|V| or t_max/|J|, capped at 1e5/|V|.
// Returns the window and whether the cap was applied.
std::pair<double, bool> physical_window(const ExperimentConfig& cfg);

// Each runner writes its CSV outputs plus a .meta.json sidecar into
// output_dir and returns the list of files written.
std::vector<std::string> run_quench(const ExperimentConfig& cfg);
std::vector<std::string> run_sweep(const ExperimentConfig& cfg);
std::vector<std::string> run_spectrum(const ExperimentConfig& cfg);
std::vector<std::string> run_locstate(const ExperimentConfig& cfg);
std::vector<std::string> run_lifetime(const ExperimentConfig& cfg);

// Occupation patterns of the named initial states for a chain of L sites.
std::string states_report(int L);

}  // namespace sawtooth
