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

#ifndef SWARMGAME_SIM_ENGINE_H_
#define SWARMGAME_SIM_ENGINE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "swarmgame/coverage.h"
#include "swarmgame/game_core.h"
#include "swarmgame/mf_solver.h"
#include "swarmgame/net_topology.h"

namespace swarmgame {

struct ActionLatticeSpec {
  double step_m = 20.0;
  int dims = 2;
};

struct ScenarioConfig {
  std::vector<RobotState> agents;
  LinkModelParams link;
  int h = 2;
  PayoffWeights weights;
  ActionLatticeSpec actions;
  RoiGaussian roi;
  int roi_resolution = 40;
  SolverConfig solver;
  int steps = 20;
  std::uint64_t seed = 0;
  // Replace neighbors that see beyond the owner's neighborhood by their
  // virtual mean state.
  bool virtual_neighbors = true;
  // Worker threads for the per-agent solves within a step.
  int threads = 1;

  void Validate() const;
};

struct AgentStepRecord {
  AgentId id = 0;
  Position position;         // state the stage game was played from
  int action_index = 0;      // executed action
  double payoff = 0.0;       // M_i at the executed neighborhood profile
  int neighborhood_size = 0;
  int solver_sweeps = 0;
  bool solver_converged = false;
  double solve_time_s = 0.0;
};

struct StepRecord {
  int step = 0;
  std::vector<AgentStepRecord> agents;
  double swarm_mean_payoff = 0.0;
  // Ordered (i, j) pairs with j in N_i, j != i, and how many of them had i's
  // inferred action for j equal to j's executed action.
  int communicating_pairs = 0;
  int agreeing_pairs = 0;
};

// Places n agents uniformly in a square of half-width `half_width_m` around
// `center`, all at the center's altitude. Ids are 0..n-1.
std::vector<RobotState> SpawnAgents(int n, const Position& center, double half_width_m,
                                    std::uint64_t seed);

// Coverage scenario with the default game parameters; `seed` drives the
// spawn positions.
ScenarioConfig DefaultCoverageScenario(int n_agents, std::uint64_t seed);

// Synchronous loop: rebuild topology, solve every local game against the same
// snapshot, execute each agent's own best-response action, log payoffs.
std::vector<StepRecord> Run(const ScenarioConfig& config);

// Fraction of agreeing communicating pairs per step; 1 when there are none.
std::vector<double> ConsensusMetric(std::span<const StepRecord> records);

}  // namespace swarmgame

#endif  // SWARMGAME_SIM_ENGINE_H_
