// Copyright 2026 The swarmgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any of them fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "swarmgame/cli.h"
#include "swarmgame/game_core.h"
#include "swarmgame/mf_solver.h"
#include "swarmgame/random.h"
#include "swarmgame/sim_engine.h"

namespace fs = std::filesystem;
using namespace swarmgame;

namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path Scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("swarmgame_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// Criteria 1 and 2 share the same 100 games.
cli::OracleCheckSummary g_oracle;
double g_oracle_seconds = 0.0;

Outcome OracleExactness() {
  cli::OracleCheckOptions opts;  // 100 games, <= 3 members, <= 5 actions
  opts.seed = 2024;
  const auto start = Clock::now();
  g_oracle = cli::RunOracleCheck(opts);
  g_oracle_seconds = Seconds(start);
  const bool pass = g_oracle.games.size() == 100 && g_oracle.singleton_games > 0 &&
                    g_oracle.singleton_max_tv <= 1e-12 && g_oracle.dominant_games > 0 &&
                    g_oracle.DominantMatchRate() >= 0.95 && g_oracle_seconds < 30.0;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "singleton max TV %.3g over %d games; dominant match %d/%d; %.2f s",
                g_oracle.singleton_max_tv, g_oracle.singleton_games, g_oracle.dominant_matches,
                g_oracle.dominant_games, g_oracle_seconds);
  return {pass, buf};
}

Outcome VariationalMonotonicity() {
  const bool pass = !g_oracle.games.empty() && g_oracle.monotonicity_violations == 0 &&
                    g_oracle.max_normalization_error <= 1e-9;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%d monotonicity violations; max |sum q - 1| %.3g over %zu games",
                g_oracle.monotonicity_violations, g_oracle.max_normalization_error,
                g_oracle.games.size());
  return {pass, buf};
}

Outcome ConnectivityTrend() {
  cli::NetStatsOptions opts;
  opts.sweep.n_agents = 7;
  opts.sweep.trials = 100;
  opts.link.tx_power_dbm = 16.02;
  opts.output_dir = Scratch("net_stats");
  opts.quiet = true;
  std::ostringstream out, err;
  const auto start = Clock::now();
  const int code = cli::CmdNetStats(opts, out, err);
  const double secs = Seconds(start);
  if (code != cli::kExitOk) return {false, "net-stats exited " + std::to_string(code) + ": " + err.str()};
  const auto report = nlohmann::json::parse(Slurp(opts.output_dir / "report.json"));
  const auto& totals = report["totals"];
  const int spacings = totals["spacings"].get<int>();
  const int connected = totals["connected_spacings"].get<int>();
  const double rho_n = totals["neighbor_spearman"].is_null() ? NAN : totals["neighbor_spearman"].get<double>();
  const double rho_h = totals["hop_spearman"].is_null() ? NAN : totals["hop_spearman"].get<double>();
  const bool pass = spacings >= 8 && connected >= 8 && rho_n <= -0.9 && rho_h >= 0.9 && secs < 10.0;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%d spacings (%d connected); neighbor rho %.4f; hop rho %.4f; %.2f s", spacings,
                connected, rho_n, rho_h, secs);
  return {pass, buf};
}

Outcome PayoffTrend() {
  const auto start = Clock::now();
  int runs = 0, runs_ok = 0;
  double worst_gain = INFINITY, worst_frac = INFINITY;
  for (int n : {3, 4, 5}) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
      ScenarioConfig cfg = DefaultCoverageScenario(n, seed);
      cfg.h = 2;
      cfg.weights = {1.0, 0.001};
      cfg.steps = 20;
      const auto rec = Run(cfg);
      const double first = rec.front().swarm_mean_payoff;
      const double last = rec.back().swarm_mean_payoff;
      const double gain = (last - first) / std::abs(first);
      int up = 0;
      for (std::size_t s = 1; s < rec.size(); ++s)
        if (rec[s].swarm_mean_payoff >= rec[s - 1].swarm_mean_payoff) ++up;
      const double frac = static_cast<double>(up) / static_cast<double>(rec.size() - 1);
      ++runs;
      if (gain >= 0.10 && frac >= 0.80) ++runs_ok;
      worst_gain = std::min(worst_gain, gain);
      worst_frac = std::min(worst_frac, frac);
    }
  }
  const double secs = Seconds(start);
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%d/%d runs ok; min relative gain %.3f; min non-decreasing fraction %.3f; %.2f s",
                runs_ok, runs, worst_gain, worst_frac, secs);
  return {runs_ok == runs && secs < 120.0, buf};
}

Outcome LocalGameSpeed() {
  // Coverage local games over a 3-D lattice (27 actions), every size up to 5.
  const LinkModelParams link;
  const auto potentials = MakeCoveragePotentials(RoiGaussian{}, 40, link);
  Rng rng(99);
  int games = 0, ok = 0, worst_sweeps = 0, largest = 0;
  double worst_ms = 0.0, worst_kl = 0.0;
  // The default pair weight barely couples members; the strong one makes the solver work.
  for (double alpha_b : {0.001, 1.0})
  for (int size = 1; size <= 5; ++size) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<RobotState> states;
      for (int i = 0; i < size; ++i)
        states.push_back({i, {rng.Uniform(-350, 350), rng.Uniform(-350, 350), rng.Uniform(30, 80)}});
      std::vector<Position> pos;
      for (const auto& s : states) pos.push_back(s.position);
      const auto graph = BuildLinkGraph(pos, link);
      const std::vector<ActionSet> actions(static_cast<std::size_t>(size), ActionSet::Lattice(20.0, 3));
      const LocalGame game = BuildLocalGame(0, 2, graph, states, actions, potentials, {1.0, alpha_b});
      SolverConfig cfg;
      cfg.delta = 1e-4;
      cfg.max_sweeps = 100;
      const auto start = Clock::now();
      const SolveReport report = SolveLocalGame(game, cfg);
      const double ms = 1e3 * Seconds(start);
      ++games;
      largest = std::max(largest, static_cast<int>(game.size()));
      if (report.converged && report.final_kl < 1e-4 && report.sweeps_used <= 100 && ms < 50.0) ++ok;
      worst_ms = std::max(worst_ms, ms);
      worst_sweeps = std::max(worst_sweeps, report.sweeps_used);
      worst_kl = std::max(worst_kl, report.final_kl);
    }
  }
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "%d/%d local games converged (largest %d members); max sweeps %d; max final KL %.3g; max %.2f ms",
                ok, games, largest, worst_sweeps, worst_kl, worst_ms);
  return {ok == games && largest == 5, buf};
}

bool SameTrace(const std::vector<StepRecord>& a, const std::vector<StepRecord>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t s = 0; s < a.size(); ++s) {
    if (a[s].agents.size() != b[s].agents.size()) return false;
    if (a[s].swarm_mean_payoff != b[s].swarm_mean_payoff) return false;
    for (std::size_t i = 0; i < a[s].agents.size(); ++i) {
      const auto& x = a[s].agents[i];
      const auto& y = b[s].agents[i];
      if (!(x.position == y.position) || x.action_index != y.action_index || x.payoff != y.payoff)
        return false;
    }
  }
  return true;
}

Outcome VirtualNeighborEquivalence() {
  int runs = 0, same = 0, incomplete = 0;
  for (int n : {3, 4, 5}) {
    for (int h : {1, 2}) {
      for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        ScenarioConfig cfg = DefaultCoverageScenario(n, seed);
        cfg.h = h;
        cfg.virtual_neighbors = true;
        const auto on = Run(cfg);
        cfg.virtual_neighbors = false;
        const auto off = Run(cfg);
        for (const auto& step : on)
          for (const auto& a : step.agents)
            if (a.neighborhood_size != n) ++incomplete;
        ++runs;
        if (SameTrace(on, off)) ++same;
      }
    }
  }
  char buf[256];
  std::snprintf(buf, sizeof buf, "%d/%d runs identical; %d non-complete neighborhoods", same, runs,
                incomplete);
  return {same == runs && incomplete == 0, buf};
}

Outcome Determinism() {
  const fs::path scenarios = SWARMGAME_SCENARIO_DIR;
  int files = 0, identical = 0;
  for (const char* name : {"coverage_default.json", "line_explicit.json"}) {
    std::string traces[2];
    for (int k = 0; k < 2; ++k) {
      cli::RunOptions opts;
      opts.scenario = scenarios / name;
      opts.output_dir = Scratch("det_" + std::to_string(k));
      opts.quiet = true;
      std::ostringstream out, err;
      if (cli::CmdRun(opts, out, err) != cli::kExitOk) return {false, std::string(name) + ": " + err.str()};
      traces[k] = Slurp(opts.output_dir / "trace.csv");
    }
    ++files;
    if (!traces[0].empty() && traces[0] == traces[1]) ++identical;
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "%d/%d scenarios byte-identical across runs", identical, files);
  return {identical == files, buf};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"oracle exactness", OracleExactness},
      {"variational monotonicity", VariationalMonotonicity},
      {"connectivity trend", ConnectivityTrend},
      {"payoff trend", PayoffTrend},
      {"local game convergence speed", LocalGameSpeed},
      {"virtual neighbor equivalence", VirtualNeighborEquivalence},
      {"determinism", Determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s [%zu] %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
