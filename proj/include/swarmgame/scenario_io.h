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

#ifndef SWARMGAME_SCENARIO_IO_H_
#define SWARMGAME_SCENARIO_IO_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "swarmgame/net_topology.h"
#include "swarmgame/sim_engine.h"

namespace swarmgame {

// Malformed or invalid scenario input. `field` is the dotted JSON path of
// the offending entry (empty when the document itself does not parse).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Command-line values that take precedence over the scenario file.
struct ScenarioOverrides {
  std::optional<int> steps;
  std::optional<std::uint64_t> seed;
  std::optional<int> h;
  std::optional<int> agent_count;  // only for spawned agents
  std::optional<bool> virtual_neighbors;
  std::optional<int> threads;
};

ScenarioConfig ParseScenario(const nlohmann::json& doc, const ScenarioOverrides& overrides = {});
ScenarioConfig LoadScenarioFile(const std::filesystem::path& path,
                                const ScenarioOverrides& overrides = {});

// Fully resolved configuration (explicit agent list, every default filled).
nlohmann::json ScenarioToJson(const ScenarioConfig& config);

// 64-bit FNV-1a of the JSON's compact dump, as 16 hex digits.
std::string ConfigHash(const nlohmann::json& resolved);

// %.9g-style rendering (9 significant digits) with a '.' decimal separator
// regardless of locale; "nan" for NaN.
std::string FormatNumber(double value);

inline constexpr const char* kTraceHeader =
    "step,agent_id,x,y,z,action_idx,payoff,swarm_mean_payoff,solver_sweeps,"
    "solve_time_s,consensus";
inline constexpr const char* kStatsHeader =
    "spacing_m,avg_direct_neighbors,avg_hop_count,reachable_pair_fraction";

// One row per agent per step. Solver wall time is written as 0 unless
// `include_timing` is set, which keeps the default output reproducible.
std::string TraceCsv(std::span<const StepRecord> records, bool include_timing);
std::string StatsCsv(std::span<const SweepRecord> records);

// Writes to a sibling temporary file and renames it into place.
void WriteFileAtomic(const std::filesystem::path& path, const std::string& contents);

}  // namespace swarmgame

#endif  // SWARMGAME_SCENARIO_IO_H_
