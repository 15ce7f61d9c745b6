#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "oracles.hpp"
#include "sawtooth/errors.hpp"
#include "sawtooth/experiment.hpp"

using namespace sawtooth;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path temp_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("sawtooth_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("parallel_for covers all indices deterministically by slot") {
  std::vector<int> out(1000, 0);
  parallel_for(out.size(), 4, [&](std::size_t i) {
    out[i] = static_cast<int>(i) * 3;
  });
  for (std::size_t i = 0; i < out.size(); ++i) {
    CHECK(out[i] == static_cast<int>(i) * 3);
  }
}

TEST_CASE("config JSON round trip") {
  ExperimentConfig cfg;
  cfg.model = {10, -0.4, 0.2, 1.5};
  cfg.experiment = "sweep";
  cfg.initial_state = "block:2";
  cfg.sweep.with_r = true;
  cfg.threads = 3;
  const ExperimentConfig back = config_from_json(config_to_json(cfg));
  CHECK(back.model.L == 10);
  CHECK(back.model.J == -0.4);
  CHECK(back.model.Jp == 0.2);
  CHECK(back.model.V == 1.5);
  CHECK(back.initial_state == "block:2");
  CHECK(back.sweep.with_r);
  CHECK(back.threads == 3);
  CHECK(config_hash(cfg) == config_hash(back));

  ExperimentConfig other = cfg;
  other.model.J = -0.41;
  CHECK(config_hash(cfg) != config_hash(other));
}

TEST_CASE("initial state resolution") {
  ExperimentConfig cfg;
  cfg.model.L = 12;
  cfg.initial_state = "domain_wall";
  CHECK(resolve_initial_state(cfg) == domain_wall_state(12));
  cfg.initial_state = "block:3";
  CHECK(pattern_string(resolve_initial_state(cfg), 12) == "111000111000");
  cfg.initial_state = "101010101010";
  CHECK(resolve_initial_state(cfg) == parse_pattern("101010101010"));
  cfg.initial_state = "1010";
  CHECK_THROWS_AS(resolve_initial_state(cfg), std::invalid_argument);
}

TEST_CASE("time windows and the 1/J cap") {
  ExperimentConfig cfg;
  cfg.model = {12, -0.5, -0.5, 2.0};
  cfg.t_max = 200.0;
  cfg.time_unit = "inv_V";
  CHECK(physical_window(cfg).first == doctest::Approx(100.0));
  CHECK(!physical_window(cfg).second);

  cfg.time_unit = "inv_J";
  CHECK(physical_window(cfg).first == doctest::Approx(400.0));

  cfg.model.J = 1e-6;
  const auto [w, capped] = physical_window(cfg);
  CHECK(capped);
  CHECK(w == doctest::Approx(1e5 / 2.0));

  cfg.time_unit = "bogus";
  CHECK_THROWS_AS(physical_window(cfg), std::invalid_argument);
}

TEST_CASE("quench pipeline emits trajectory and sidecar") {
  const fs::path dir = temp_dir("quench");
  ExperimentConfig cfg;
  cfg.model = {8, -0.3, -0.3, 1.0};
  cfg.t_max = 20.0;
  cfg.n_samples = 51;
  cfg.output_dir = dir.string();
  const auto files = run_quench(cfg);
  REQUIRE(files.size() == 1);

  const std::string body = slurp(files[0]);
  CHECK(body.rfind("t,P,S_ent,O\n", 0) == 0);
  CHECK(std::count(body.begin(), body.end(), '\n') == 52);

  const auto meta = nlohmann::json::parse(slurp(dir / "trajectory.meta.json"));
  CHECK(meta.at("config").at("model").at("L") == 8);
  CHECK(meta.at("initial_pattern") == "11110000");
  CHECK(meta.at("hilbert_dim") == 70);
  CHECK(meta.contains("config_hash"));

  // initial row: P(0)=1, S_ent(0)=0, O(0)=0 up to round-off
  std::istringstream rows(body);
  std::string header, first;
  std::getline(rows, header);
  std::getline(rows, first);
  double t0 = -1.0, P0 = -1.0, S0 = -1.0, O0 = -1.0;
  std::replace(first.begin(), first.end(), ',', ' ');
  std::istringstream(first) >> t0 >> P0 >> S0 >> O0;
  CHECK(t0 == 0.0);
  CHECK(P0 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(S0) < 1e-12);
  CHECK(std::abs(O0) < 1e-12);
}

TEST_CASE("Ising-limit quench is constant in every column") {
  const fs::path dir = temp_dir("quench_ising");
  ExperimentConfig cfg;
  cfg.model = {8, 0.0, 0.0, 1.0};
  cfg.t_max = 10.0;
  cfg.n_samples = 11;
  cfg.output_dir = dir.string();
  run_quench(cfg);
  std::istringstream rows(slurp(dir / "trajectory.csv"));
  std::string line;
  std::getline(rows, line);
  while (std::getline(rows, line)) {
    std::replace(line.begin(), line.end(), ',', ' ');
    double t = 0.0, P = 0.0, S = 0.0, O = 0.0;
    std::istringstream(line) >> t >> P >> S >> O;
    CHECK(P == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(S) < 1e-12);
    CHECK(std::abs(O) < 1e-12);
  }
}

TEST_CASE("sweep grid: shape, determinism, worker independence") {
  ExperimentConfig cfg;
  cfg.model = {8, -0.5, -0.5, 1.0};
  cfg.t_max = 50.0;
  cfg.n_samples = 201;
  cfg.sweep.axes = "J_Jp";
  cfg.sweep.a_min = -1.0;
  cfg.sweep.a_max = -0.2;
  cfg.sweep.a_steps = 3;
  cfg.sweep.b_min = -1.0;
  cfg.sweep.b_max = -0.2;
  cfg.sweep.b_steps = 3;
  cfg.sweep.with_r = true;
  cfg.sweep.with_delta0 = true;

  const fs::path d1 = temp_dir("sweep1");
  cfg.output_dir = d1.string();
  cfg.threads = 1;
  run_sweep(cfg);
  const std::string body1 = slurp(d1 / "grid.csv");
  CHECK(std::count(body1.begin(), body1.end(), '\n') == 10);  // header + 9
  CHECK(body1.rfind("J,Jp,V,P_avg,r_mean,delta0\n", 0) == 0);

  const fs::path d4 = temp_dir("sweep4");
  cfg.output_dir = d4.string();
  cfg.threads = 4;
  run_sweep(cfg);
  CHECK(slurp(d4 / "grid.csv") == body1);

  // rerun is byte-identical
  const fs::path d1b = temp_dir("sweep1b");
  cfg.output_dir = d1b.string();
  cfg.threads = 1;
  run_sweep(cfg);
  CHECK(slurp(d1b / "grid.csv") == body1);
}

TEST_CASE("spectrum pipeline from an eigenvalue file") {
  const fs::path dir = temp_dir("spectrum");
  const fs::path evfile = dir / "levels.txt";
  {
    std::ofstream out(evfile);
    const auto levels =
        oracle::levels_from_spacings(oracle::poisson_spacings(5000, 71));
    out.precision(17);
    for (double e : levels) out << e << '\n';
  }
  ExperimentConfig cfg;
  cfg.output_dir = dir.string();
  cfg.eigenvalue_file = evfile.string();
  const auto files = run_spectrum(cfg);
  REQUIRE(files.size() == 2);

  const std::string stats = slurp(dir / "stats.csv");
  CHECK(stats.rfind("alpha,beta,peak,r_mean,n_levels,n_degenerate\n", 0) == 0);
  const std::string hist = slurp(dir / "spacing_hist.csv");
  CHECK(hist.rfind("s,P\n", 0) == 0);
  CHECK(std::count(hist.begin(), hist.end(), '\n') == 51);
}

TEST_CASE("spectrum pipeline from model parameters") {
  const fs::path dir = temp_dir("spectrum_model");
  ExperimentConfig cfg;
  cfg.model = {10, -1.0, -1.0, 1.0};
  cfg.convention = InteractionConvention::symmetrized;
  cfg.output_dir = dir.string();
  run_spectrum(cfg);
  const auto meta = nlohmann::json::parse(slurp(dir / "stats.meta.json"));
  CHECK(meta.at("sector_dim") == 126);
}

TEST_CASE("locstate grid") {
  const fs::path dir = temp_dir("locstate");
  ExperimentConfig cfg;
  cfg.model = {10, 0.0, 0.0, 1.0};
  cfg.loc_min = -0.8;
  cfg.loc_max = -0.1;
  cfg.loc_steps = 4;
  cfg.output_dir = dir.string();
  cfg.threads = 2;
  run_locstate(cfg);
  const std::string body = slurp(dir / "locstate.csv");
  CHECK(body.rfind("J_over_V,Jp_over_V,F,eigindex,energy\n", 0) == 0);
  CHECK(std::count(body.begin(), body.end(), '\n') == 5);

  cfg.loc_steps = 0;
  CHECK_THROWS_AS(run_locstate(cfg), std::invalid_argument);
}

TEST_CASE("lifetime censoring in the Ising limit") {
  const fs::path dir = temp_dir("lifetime");
  ExperimentConfig cfg;
  cfg.model = {0, 0.0, 0.0, 1.0};
  cfg.lifetime_sizes = {6, 8};
  cfg.t_max = 10.0;
  cfg.n_samples = 21;
  cfg.output_dir = dir.string();
  run_lifetime(cfg);
  const std::string body = slurp(dir / "lifetime.csv");
  CHECK(body.rfind("L,t_star,censored,window\n", 0) == 0);
  CHECK(body.find("6,nan,1,") != std::string::npos);
  CHECK(body.find("8,nan,1,") != std::string::npos);
  const auto meta = nlohmann::json::parse(slurp(dir / "lifetime.meta.json"));
  CHECK(meta.at("monotone_increasing") == false);
}

TEST_CASE("states report") {
  const std::string report = states_report(12);
  CHECK(report.find("domain_wall 111111000000") != std::string::npos);
  CHECK(report.find("block:3 111000111000") != std::string::npos);
  CHECK(report.find("block:2 110011001100") != std::string::npos);
  CHECK(report.find("block:5") == std::string::npos);
}
