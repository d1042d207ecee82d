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

#include "swarmgame/sim_engine.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <stdexcept>
#include <thread>

#include "swarmgame/random.h"

namespace swarmgame {

void ScenarioConfig::Validate() const {
  if (agents.empty()) throw std::invalid_argument("scenario needs at least one agent");
  for (std::size_t i = 0; i < agents.size(); ++i) {
    if (!agents[i].position.IsFinite()) throw std::invalid_argument("agent position must be finite");
    for (std::size_t j = 0; j < i; ++j) {
      if (agents[i].id == agents[j].id) throw std::invalid_argument("duplicate agent id");
    }
  }
  link.Validate();
  if (h < 1) throw std::invalid_argument("h must be >= 1");
  weights.Validate();
  ActionSet::Lattice(actions.step_m, actions.dims);
  roi.Validate();
  if (roi_resolution < 2) throw std::invalid_argument("roi resolution must be >= 2");
  solver.Validate();
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  if (threads < 1) throw std::invalid_argument("threads must be >= 1");
}

std::vector<RobotState> SpawnAgents(int n, const Position& center, double half_width_m,
                                    std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("spawn needs at least one agent");
  Rng rng = Rng::Stream(seed, 0x5eed);
  std::vector<RobotState> agents;
  for (int i = 0; i < n; ++i) {
    const double x = center.x + rng.Uniform(-half_width_m, half_width_m);
    const double y = center.y + rng.Uniform(-half_width_m, half_width_m);
    agents.push_back({i, {x, y, center.z}});
  }
  return agents;
}

ScenarioConfig DefaultCoverageScenario(int n_agents, std::uint64_t seed) {
  ScenarioConfig config;
  config.agents = SpawnAgents(n_agents, {-300.0, -300.0, 50.0}, 60.0, seed);
  config.seed = seed;
  return config;
}

namespace {

struct AgentSolve {
  LocalGame game;
  std::vector<int> inferred;
  int sweeps = 0;
  bool converged = false;
  double seconds = 0.0;
};

}  // namespace

std::vector<StepRecord> Run(const ScenarioConfig& config) {
  config.Validate();
  const std::size_t n = config.agents.size();
  const PotentialPair potentials =
      MakeCoveragePotentials(config.roi, config.roi_resolution, config.link);
  const std::vector<ActionSet> actions(
      n, ActionSet::Lattice(config.actions.step_m, config.actions.dims));

  std::vector<RobotState> states = config.agents;
  std::vector<StepRecord> records;
  records.reserve(static_cast<std::size_t>(config.steps));
  std::vector<Position> positions(n);
  std::vector<AgentSolve> solves(n);

  for (int step = 0; step < config.steps; ++step) {
    for (std::size_t i = 0; i < n; ++i) positions[i] = states[i].position;
    const TopologyGraph graph = BuildLinkGraph(positions, config.link);

    auto solve_agent = [&](std::size_t i) {
      const auto start = std::chrono::steady_clock::now();
      AgentSolve& out = solves[i];
      out.game = BuildLocalGame(static_cast<AgentId>(i), config.h, graph, states, actions,
                                potentials, config.weights, config.virtual_neighbors);
      SolverConfig solver = config.solver;
      solver.seed = Rng::Stream(config.solver.seed ^ config.seed,
                                static_cast<std::uint64_t>(step), i)
                        .NextU64();
      const SolveReport report = SolveLocalGame(out.game, solver);
      out.inferred = BestResponseProfile(report.marginals);
      out.sweeps = report.sweeps_used;
      out.converged = report.converged;
      out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };

    if (config.threads <= 1 || n <= 1) {
      for (std::size_t i = 0; i < n; ++i) solve_agent(i);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::exception_ptr> errors(n);
      {
        std::vector<std::jthread> workers;
        const auto count = std::min<std::size_t>(static_cast<std::size_t>(config.threads), n);
        for (std::size_t w = 0; w < count; ++w) {
          workers.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) {
              try {
                solve_agent(i);
              } catch (...) {
                errors[i] = std::current_exception();
              }
            }
          });
        }
      }
      for (auto& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }

    std::vector<int> executed(n);
    for (std::size_t i = 0; i < n; ++i) {
      executed[i] = solves[i].inferred[solves[i].game.OwnerSlot()];
    }

    StepRecord rec;
    rec.step = step;
    double payoff_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const LocalGame& game = solves[i].game;
      std::vector<int> profile;
      for (std::size_t slot = 0; slot < game.size(); ++slot) {
        const auto j = static_cast<std::size_t>(game.members[slot]);
        profile.push_back(executed[j]);
        if (j == i) continue;
        ++rec.communicating_pairs;
        if (solves[i].inferred[slot] == executed[j]) ++rec.agreeing_pairs;
      }
      AgentStepRecord agent;
      agent.id = states[i].id;
      agent.position = states[i].position;
      agent.action_index = executed[i];
      agent.payoff = JointPayoff(game, profile);
      agent.neighborhood_size = static_cast<int>(game.size());
      agent.solver_sweeps = solves[i].sweeps;
      agent.solver_converged = solves[i].converged;
      agent.solve_time_s = solves[i].seconds;
      payoff_sum += agent.payoff;
      rec.agents.push_back(agent);
    }
    rec.swarm_mean_payoff = payoff_sum / static_cast<double>(n);
    records.push_back(std::move(rec));

    for (std::size_t i = 0; i < n; ++i) {
      states[i].position = states[i].position + actions[i][static_cast<std::size_t>(executed[i])];
    }
  }
  return records;
}

std::vector<double> ConsensusMetric(std::span<const StepRecord> records) {
  if (records.empty()) throw std::invalid_argument("no records");
  std::vector<double> metric;
  metric.reserve(records.size());
  for (const auto& rec : records) {
    metric.push_back(rec.communicating_pairs == 0
                         ? 1.0
                         : static_cast<double>(rec.agreeing_pairs) / rec.communicating_pairs);
  }
  return metric;
}

}  // namespace swarmgame
