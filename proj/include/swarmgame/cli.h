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

#ifndef SWARMGAME_CLI_H_
#define SWARMGAME_CLI_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "swarmgame/net_topology.h"
#include "swarmgame/scenario_io.h"

namespace swarmgame::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

struct OutputPaths {
  std::filesystem::path trace_csv;
  std::filesystem::path stats_csv;
  std::filesystem::path report_json;

  static OutputPaths InDirectory(const std::filesystem::path& dir);
};

struct RunOptions {
  std::filesystem::path scenario;
  std::filesystem::path output_dir = ".";
  ScenarioOverrides overrides;
  bool timing = false;
  bool quiet = false;
};

struct NetStatsOptions {
  SweepOptions sweep;
  LinkModelParams link;
  std::vector<double> spacings = DefaultSpacings();
  std::filesystem::path output_dir = ".";
  bool quiet = false;

  // 100 m to 2 km in 100 m steps.
  static std::vector<double> DefaultSpacings();
};

struct OracleCheckOptions {
  int n_games = 100;
  int max_members = 3;
  int max_actions = 5;
  double max_alpha_b = 1.0;
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = ".";
  bool quiet = false;
};

// Tractability guard for oracle-check.
inline constexpr int kOracleMaxMembers = 4;
inline constexpr int kOracleMaxActions = 6;

// Acceptance thresholds checked by oracle-check.
inline constexpr double kSingletonTvTolerance = 1e-12;
inline constexpr double kDominantMatchRate = 0.95;
inline constexpr double kFreeEnergySlack = 1e-9;
inline constexpr double kNormalizationTolerance = 1e-9;

struct OracleGameResult {
  int game = 0;
  int members = 0;
  std::vector<int> actions;
  double alpha_b = 0.0;
  double tv_distance = 0.0;  // max over members
  bool has_dominant = false;
  bool dominant_match = false;
  int sweeps_used = 0;
  bool converged = false;
  bool free_energy_monotone = true;
  double max_normalization_error = 0.0;
};

struct OracleCheckSummary {
  std::vector<OracleGameResult> games;
  int singleton_games = 0;
  double singleton_max_tv = 0.0;
  int dominant_games = 0;
  int dominant_matches = 0;
  int monotonicity_violations = 0;
  double max_normalization_error = 0.0;

  double DominantMatchRate() const;
  bool SingletonExact() const { return singleton_max_tv <= kSingletonTvTolerance; }
  bool DominantOk() const { return dominant_games == 0 || DominantMatchRate() >= kDominantMatchRate; }
  bool MonotoneOk() const { return monotonicity_violations == 0; }
  bool NormalizedOk() const { return max_normalization_error <= kNormalizationTolerance; }
  bool Passed() const { return SingletonExact() && DominantOk() && MonotoneOk() && NormalizedOk(); }
};

// Throws std::invalid_argument when the guard is violated.
OracleCheckSummary RunOracleCheck(const OracleCheckOptions& options);

// Spacings whose reachable-pair fraction is at least this count as connected.
inline constexpr double kConnectedPairFraction = 0.5;

struct SweepTrend {
  double neighbor_spearman = 0.0;  // over every spacing
  double hop_spearman = 0.0;       // over connected spacings only
  int connected_spacings = 0;
};

SweepTrend AnalyzeSweep(std::span<const SweepRecord> records);

int CmdRun(const RunOptions& options, std::ostream& out, std::ostream& err);
int CmdNetStats(const NetStatsOptions& options, std::ostream& out, std::ostream& err);
int CmdOracleCheck(const OracleCheckOptions& options, std::ostream& out, std::ostream& err);

// Parses argv and dispatches to one of the commands above.
int Main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace swarmgame::cli

#endif  // SWARMGAME_CLI_H_
