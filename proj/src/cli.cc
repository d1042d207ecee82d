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

#include "swarmgame/cli.h"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "swarmgame/mf_solver.h"
#include "swarmgame/oracle.h"
#include "swarmgame/random.h"
#include "swarmgame/sim_engine.h"
#include "swarmgame/stats.h"

namespace swarmgame::cli {

using nlohmann::json;
namespace fs = std::filesystem;

OutputPaths OutputPaths::InDirectory(const fs::path& dir) {
  return {dir / "trace.csv", dir / "stats.csv", dir / "report.json"};
}

std::vector<double> NetStatsOptions::DefaultSpacings() {
  std::vector<double> spacings;
  for (int s = 100; s <= 2000; s += 100) spacings.push_back(s);
  return spacings;
}

namespace {

void PrepareOutputDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw std::runtime_error("cannot create output directory " + dir.string());
  }
}

std::string PassFail(bool ok) { return ok ? "PASS" : "FAIL"; }

}  // namespace

double OracleCheckSummary::DominantMatchRate() const {
  return dominant_games == 0 ? 1.0 : static_cast<double>(dominant_matches) / dominant_games;
}

OracleCheckSummary RunOracleCheck(const OracleCheckOptions& options) {
  if (options.n_games < 0) throw std::invalid_argument("number of games must be >= 0");
  if (options.max_members < 1 || options.max_members > kOracleMaxMembers) {
    throw std::invalid_argument("max members must lie in [1, " +
                                std::to_string(kOracleMaxMembers) + "]");
  }
  if (options.max_actions < 1 || options.max_actions > kOracleMaxActions) {
    throw std::invalid_argument("max actions must lie in [1, " +
                                std::to_string(kOracleMaxActions) + "]");
  }
  if (!(options.max_alpha_b >= 0.0) || !std::isfinite(options.max_alpha_b)) {
    throw std::invalid_argument("max alpha_b must be finite and non-negative");
  }

  RandomGameOptions game_options;
  game_options.max_members = options.max_members;
  game_options.max_actions = options.max_actions;
  game_options.min_actions = std::min(2, options.max_actions);
  game_options.max_alpha_b = options.max_alpha_b;
  const SolverConfig solver;

  OracleCheckSummary summary;
  for (int g = 0; g < options.n_games; ++g) {
    Rng rng = Rng::Stream(options.seed, static_cast<std::uint64_t>(g));
    const LocalGame game = MakeRandomTableGame(rng, game_options);
    const SolveReport report = SolveLocalGame(game, solver);
    const ExactSolution exact = OracleExact(game);

    OracleGameResult r;
    r.game = g;
    r.members = static_cast<int>(game.size());
    for (const auto& a : game.actions) r.actions.push_back(static_cast<int>(a.size()));
    r.alpha_b = game.weights.alpha_b;
    for (std::size_t j = 0; j < game.size(); ++j) {
      r.tv_distance = std::max(
          r.tv_distance, TotalVariation(exact.marginals[j].probs, report.marginals[j].probs));
    }
    r.has_dominant = exact.dominant_eq.has_value();
    r.dominant_match = r.has_dominant && BestResponseProfile(report.marginals) == *exact.dominant_eq;
    r.sweeps_used = report.sweeps_used;
    r.converged = report.converged;
    double previous = report.initial_free_energy;
    for (double f : report.free_energy_trace) {
      if (f > previous + kFreeEnergySlack) r.free_energy_monotone = false;
      previous = f;
    }
    r.max_normalization_error = report.max_normalization_error;

    if (r.members == 1) {
      ++summary.singleton_games;
      summary.singleton_max_tv = std::max(summary.singleton_max_tv, r.tv_distance);
    }
    if (r.has_dominant) {
      ++summary.dominant_games;
      if (r.dominant_match) ++summary.dominant_matches;
    }
    if (!r.free_energy_monotone) ++summary.monotonicity_violations;
    summary.max_normalization_error =
        std::max(summary.max_normalization_error, r.max_normalization_error);
    summary.games.push_back(std::move(r));
  }
  return summary;
}

SweepTrend AnalyzeSweep(std::span<const SweepRecord> records) {
  std::vector<double> spacing, neighbors, conn_spacing, hops;
  for (const auto& r : records) {
    spacing.push_back(r.spacing_m);
    neighbors.push_back(r.avg_direct_neighbors);
    if (r.reachable_pair_fraction >= kConnectedPairFraction && !std::isnan(r.avg_hop_count)) {
      conn_spacing.push_back(r.spacing_m);
      hops.push_back(r.avg_hop_count);
    }
  }
  SweepTrend trend;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  trend.neighbor_spearman = spacing.size() >= 2 ? SpearmanCorrelation(spacing, neighbors) : nan;
  trend.hop_spearman = conn_spacing.size() >= 2 ? SpearmanCorrelation(conn_spacing, hops) : nan;
  trend.connected_spacings = static_cast<int>(conn_spacing.size());
  return trend;
}

int CmdRun(const RunOptions& options, std::ostream& out, std::ostream& err) {
  ScenarioConfig config;
  try {
    config = LoadScenarioFile(options.scenario, options.overrides);
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    const std::vector<StepRecord> records = Run(config);
    const json resolved = ScenarioToJson(config);
    const std::vector<double> consensus = ConsensusMetric(records);

    int nondecreasing = 0;
    for (std::size_t s = 1; s < records.size(); ++s) {
      if (records[s].swarm_mean_payoff >= records[s - 1].swarm_mean_payoff) ++nondecreasing;
    }
    long long sweeps = 0;
    long long solves = 0;
    bool all_converged = true;
    double max_solve_time = 0.0;
    for (const auto& rec : records) {
      for (const auto& a : rec.agents) {
        sweeps += a.solver_sweeps;
        ++solves;
        all_converged = all_converged && a.solver_converged;
        max_solve_time = std::max(max_solve_time, a.solve_time_s);
      }
    }
    const double initial = records.front().swarm_mean_payoff;
    const double final_payoff = records.back().swarm_mean_payoff;
    json totals = {
        {"steps", records.size()},
        {"agents", config.agents.size()},
        {"initial_swarm_mean_payoff", initial},
        {"final_swarm_mean_payoff", final_payoff},
        {"relative_payoff_gain", initial != 0.0 ? (final_payoff - initial) / std::abs(initial) : 0.0},
        {"nondecreasing_step_fraction",
         records.size() > 1 ? static_cast<double>(nondecreasing) / (records.size() - 1) : 1.0},
        {"final_consensus", consensus.back()},
        {"mean_solver_sweeps", static_cast<double>(sweeps) / static_cast<double>(solves)},
    };
    if (options.timing) totals["max_solve_time_s"] = max_solve_time;
    const json report = {
        {"command", "run"},
        {"config_hash", ConfigHash(resolved)},
        {"totals", totals},
        {"flags", {{"payoff_increased", final_payoff > initial}, {"solves_converged", all_converged}}},
        {"config", resolved},
    };

    const std::string trace = TraceCsv(records, options.timing);
    PrepareOutputDir(options.output_dir);
    const OutputPaths paths = OutputPaths::InDirectory(options.output_dir);
    WriteFileAtomic(paths.trace_csv, trace);
    WriteFileAtomic(paths.report_json, report.dump(2) + "\n");
    if (!options.quiet) {
      out << "run: " << config.agents.size() << " agents, " << records.size()
          << " steps, swarm mean payoff " << FormatNumber(initial) << " -> "
          << FormatNumber(final_payoff) << "\n"
          << "wrote " << paths.trace_csv.string() << " and " << paths.report_json.string() << '\n';
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

int CmdNetStats(const NetStatsOptions& options, std::ostream& out, std::ostream& err) {
  std::vector<SweepRecord> records;
  try {
    records = ConnectivitySweep(options.link, options.spacings, options.sweep);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    const SweepTrend trend = AnalyzeSweep(records);
    json link = {{"tx_power_dbm", options.link.tx_power_dbm},
                 {"ref_loss_db", options.link.ref_loss_db},
                 {"path_loss_exponent", options.link.path_loss_exponent},
                 {"rx_sensitivity_dbm", options.link.rx_sensitivity_dbm},
                 {"ref_distance_m", options.link.ref_distance_m}};
    const json resolved = {{"n_agents", options.sweep.n_agents},
                           {"trials", options.sweep.trials},
                           {"seed", options.sweep.seed},
                           {"altitude_m", options.sweep.altitude_m},
                           {"spacings", options.spacings},
                           {"link", link}};
    auto finite_or_null = [](double v) { return std::isnan(v) ? json(nullptr) : json(v); };
    const json report = {
        {"command", "net-stats"},
        {"config_hash", ConfigHash(resolved)},
        {"totals",
         {{"spacings", records.size()},
          {"connected_spacings", trend.connected_spacings},
          {"link_range_m", LinkRange(options.link)},
          {"neighbor_spearman", finite_or_null(trend.neighbor_spearman)},
          {"hop_spearman", finite_or_null(trend.hop_spearman)}}},
        {"flags",
         {{"neighbors_decrease", trend.neighbor_spearman <= -0.9},
          {"hops_increase", trend.hop_spearman >= 0.9}}},
        {"config", resolved},
    };
    const std::string csv = StatsCsv(records);
    PrepareOutputDir(options.output_dir);
    const OutputPaths paths = OutputPaths::InDirectory(options.output_dir);
    WriteFileAtomic(paths.stats_csv, csv);
    WriteFileAtomic(paths.report_json, report.dump(2) + "\n");
    if (!options.quiet) {
      out << "net-stats: " << records.size() << " spacings, neighbor rho "
          << FormatNumber(trend.neighbor_spearman) << ", hop rho (connected) "
          << FormatNumber(trend.hop_spearman) << "\nwrote " << paths.stats_csv.string() << '\n';
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitOk;
}

int CmdOracleCheck(const OracleCheckOptions& options, std::ostream& out, std::ostream& err) {
  OracleCheckSummary summary;
  try {
    summary = RunOracleCheck(options);
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    std::ostringstream csv;
    csv << "game,members,actions,alpha_b,tv_distance,has_dominant,dominant_match,"
           "sweeps_used,converged,free_energy_monotone,max_normalization_error\n";
    for (const auto& g : summary.games) {
      std::string actions;
      for (std::size_t j = 0; j < g.actions.size(); ++j) {
        actions += (j ? "x" : "") + std::to_string(g.actions[j]);
      }
      csv << g.game << ',' << g.members << ',' << actions << ',' << FormatNumber(g.alpha_b)
          << ',' << FormatNumber(g.tv_distance) << ',' << g.has_dominant << ','
          << g.dominant_match << ',' << g.sweeps_used << ',' << g.converged << ','
          << g.free_energy_monotone << ',' << FormatNumber(g.max_normalization_error) << '\n';
    }
    const json resolved = {{"n_games", options.n_games},
                           {"max_members", options.max_members},
                           {"max_actions", options.max_actions},
                           {"max_alpha_b", options.max_alpha_b},
                           {"seed", options.seed}};
    const json report = {
        {"command", "oracle-check"},
        {"config_hash", ConfigHash(resolved)},
        {"totals",
         {{"games", summary.games.size()},
          {"singleton_games", summary.singleton_games},
          {"singleton_max_tv", summary.singleton_max_tv},
          {"dominant_games", summary.dominant_games},
          {"dominant_matches", summary.dominant_matches},
          {"dominant_match_rate", summary.DominantMatchRate()},
          {"monotonicity_violations", summary.monotonicity_violations},
          {"max_normalization_error", summary.max_normalization_error}}},
        {"flags",
         {{"singleton_exact", summary.SingletonExact()},
          {"dominant_match", summary.DominantOk()},
          {"free_energy_monotone", summary.MonotoneOk()},
          {"marginals_normalized", summary.NormalizedOk()},
          {"passed", summary.Passed()}}},
        {"config", resolved},
    };
    PrepareOutputDir(options.output_dir);
    WriteFileAtomic(options.output_dir / "oracle.csv", csv.str());
    WriteFileAtomic(options.output_dir / "report.json", report.dump(2) + "\n");
    if (!options.quiet) {
      out << "oracle-check: " << summary.games.size() << " games\n"
          << "  singleton exactness (TV <= 1e-12): " << PassFail(summary.SingletonExact())
          << " max TV " << FormatNumber(summary.singleton_max_tv) << " over "
          << summary.singleton_games << " games\n"
          << "  dominant-eq match (>= 95%): " << PassFail(summary.DominantOk()) << ' '
          << summary.dominant_matches << '/' << summary.dominant_games << '\n'
          << "  free energy non-increasing: " << PassFail(summary.MonotoneOk()) << '\n'
          << "  marginals normalized: " << PassFail(summary.NormalizedOk()) << '\n';
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return summary.Passed() ? kExitOk : kExitRuntime;
}

int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Graphical-game coordination for networked swarms"};
  app.require_subcommand(1);

  std::string output_dir = ".";
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--output", output_dir, "Output directory");
    cmd->add_option("--seed", seed, "Random seed");
    cmd->add_flag("--quiet", quiet, "Suppress progress output");
  };

  RunOptions run;
  std::string scenario;
  std::string virtual_neighbors;
  auto* run_cmd = app.add_subcommand("run", "Run a coverage scenario");
  // Frees "--h" for the hop bound.
  run_cmd->set_help_flag("--help", "Print this help message and exit");
  run_cmd->add_option("scenario", scenario, "Scenario JSON file")->required();
  run_cmd->add_option("--steps", run.overrides.steps, "Override sim.steps")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--h", run.overrides.h, "Override game.h")->check(CLI::PositiveNumber);
  run_cmd->add_option("--agents", run.overrides.agent_count, "Override agents.count")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--threads", run.overrides.threads, "Override sim.threads")
      ->check(CLI::PositiveNumber);
  run_cmd->add_option("--virtual-neighbors", virtual_neighbors, "on or off")
      ->check(CLI::IsMember({"on", "off"}));
  run_cmd->add_flag("--timing", run.timing, "Write measured solver wall time to the trace");
  add_common(run_cmd);

  NetStatsOptions net;
  auto* net_cmd = app.add_subcommand("net-stats", "Connectivity sweep over placement spacing");
  net_cmd->add_option("--agents", net.sweep.n_agents, "Number of agents")
      ->check(CLI::Range(2, 100000));
  net_cmd->add_option("--spacings", net.spacings, "Comma-separated square sides in meters")
      ->delimiter(',');
  net_cmd->add_option("--trials", net.sweep.trials, "Trials per spacing")
      ->check(CLI::PositiveNumber);
  net_cmd->add_option("--altitude", net.sweep.altitude_m, "Agent altitude in meters");
  net_cmd->add_option("--tx-power", net.link.tx_power_dbm, "Transmit power (dBm)");
  net_cmd->add_option("--ref-loss", net.link.ref_loss_db, "Reference loss (dB)");
  net_cmd->add_option("--path-loss-exponent", net.link.path_loss_exponent, "Path loss exponent");
  net_cmd->add_option("--rx-sensitivity", net.link.rx_sensitivity_dbm, "Link threshold (dBm)");
  net_cmd->add_option("--ref-distance", net.link.ref_distance_m, "Reference distance (m)");
  add_common(net_cmd);

  OracleCheckOptions oracle;
  auto* oracle_cmd = app.add_subcommand("oracle-check", "Compare the solver with exact inference");
  oracle_cmd->add_option("--games", oracle.n_games, "Number of random games")
      ->check(CLI::NonNegativeNumber);
  oracle_cmd->add_option("--max-members", oracle.max_members, "Members per game (<= 4)");
  oracle_cmd->add_option("--max-actions", oracle.max_actions, "Actions per member (<= 6)");
  oracle_cmd->add_option("--max-alpha-b", oracle.max_alpha_b, "Upper bound of pairwise weight");
  add_common(oracle_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (run_cmd->parsed()) {
    run.scenario = scenario;
    run.output_dir = output_dir;
    run.quiet = quiet;
    run.overrides.seed = seed;
    if (!virtual_neighbors.empty()) run.overrides.virtual_neighbors = virtual_neighbors == "on";
    return CmdRun(run, out, err);
  }
  if (net_cmd->parsed()) {
    net.output_dir = output_dir;
    net.quiet = quiet;
    if (seed) net.sweep.seed = *seed;
    return CmdNetStats(net, out, err);
  }
  oracle.output_dir = output_dir;
  oracle.quiet = quiet;
  if (seed) oracle.seed = *seed;
  return CmdOracleCheck(oracle, out, err);
}

}  // namespace swarmgame::cli
