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

#include "swarmgame/game_core.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace swarmgame {

namespace {

double CheckPotential(double value, const char* which) {
  if (!(value > 0.0 && value <= 1.0)) {
    throw std::domain_error(std::string(which) + " potential must lie in (0, 1], got " +
                            std::to_string(value));
  }
  return value;
}

}  // namespace

ActionSet::ActionSet(std::vector<Position> displacements)
    : displacements_(std::move(displacements)) {
  if (displacements_.empty()) throw std::invalid_argument("action set is empty");
  bool has_zero = false;
  for (std::size_t i = 0; i < displacements_.size(); ++i) {
    if (!displacements_[i].IsFinite()) {
      throw std::invalid_argument("action displacement must be finite");
    }
    if (displacements_[i] == Position{}) has_zero = true;
    for (std::size_t j = 0; j < i; ++j) {
      if (displacements_[i] == displacements_[j]) {
        throw std::invalid_argument("duplicate action displacement");
      }
    }
  }
  if (!has_zero) throw std::invalid_argument("action set lacks the zero displacement");
}

ActionSet ActionSet::Lattice(double step_m, int dims) {
  if (!(step_m > 0.0) || !std::isfinite(step_m)) {
    throw std::invalid_argument("action step must be positive");
  }
  if (dims != 2 && dims != 3) throw std::invalid_argument("action lattice dims must be 2 or 3");
  std::vector<Position> out{{0.0, 0.0, 0.0}};
  const int z_lo = dims == 3 ? -1 : 0;
  const int z_hi = dims == 3 ? 1 : 0;
  for (int dz = z_lo; dz <= z_hi; ++dz) {
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) {
        if (dx == 0 && dy == 0 && dz == 0) continue;
        out.push_back({dx * step_m, dy * step_m, dz * step_m});
      }
    }
  }
  return ActionSet(std::move(out));
}

void PayoffWeights::Validate() const {
  if (!(alpha_a >= 0.0) || !(alpha_b >= 0.0) || !std::isfinite(alpha_a) ||
      !std::isfinite(alpha_b)) {
    throw std::invalid_argument("payoff weights must be finite and non-negative");
  }
  if (alpha_a == 0.0 && alpha_b == 0.0) {
    throw std::invalid_argument("payoff weights cannot both be zero");
  }
}

std::size_t LocalGame::OwnerSlot() const {
  const auto it = std::lower_bound(members.begin(), members.end(), owner);
  if (it == members.end() || *it != owner) {
    throw std::invalid_argument("local game owner is not a member");
  }
  return static_cast<std::size_t>(it - members.begin());
}

void LocalGame::Validate() const {
  const std::size_t n = members.size();
  if (n == 0) throw std::invalid_argument("local game has no members");
  if (states.size() != n || effective_states.size() != n || actions.size() != n ||
      approximated.size() != n) {
    throw std::invalid_argument("local game member arrays differ in length");
  }
  if (!std::is_sorted(members.begin(), members.end()) ||
      std::adjacent_find(members.begin(), members.end()) != members.end()) {
    throw std::invalid_argument("local game members must be strictly ascending");
  }
  const std::size_t owner_slot = OwnerSlot();
  if (approximated[owner_slot] || !(effective_states[owner_slot] == states[owner_slot].position)) {
    throw std::invalid_argument("owner state must not be approximated");
  }
  if (!potentials.unary || !potentials.pairwise) {
    throw std::invalid_argument("local game potentials are not set");
  }
  weights.Validate();
}

std::vector<Position> UnaryContext(const LocalGame& game, std::size_t slot) {
  std::vector<Position> context;
  context.reserve(game.size() - 1);
  for (std::size_t k = 0; k < game.size(); ++k) {
    if (k != slot) context.push_back(game.effective_states[k]);
  }
  return context;
}

double UnaryTerm(const LocalGame& game, std::size_t slot, std::size_t action) {
  const ActionSet& acts = game.actions.at(slot);
  if (action >= acts.size()) throw std::out_of_range("action index out of range");
  const Position candidate = game.effective_states[slot] + acts[action];
  const auto context = UnaryContext(game, slot);
  return CheckPotential(game.potentials.unary(candidate, context), "unary");
}

double PairwiseTerm(const LocalGame& game, std::size_t slot_a, std::size_t action_a,
                    std::size_t slot_b, std::size_t action_b) {
  const ActionSet& acts_a = game.actions.at(slot_a);
  const ActionSet& acts_b = game.actions.at(slot_b);
  if (action_a >= acts_a.size() || action_b >= acts_b.size()) {
    throw std::out_of_range("action index out of range");
  }
  const Position a = game.effective_states[slot_a] + acts_a[action_a];
  const Position b = game.effective_states[slot_b] + acts_b[action_b];
  return CheckPotential(game.potentials.pairwise(a, b), "pairwise");
}

double JointPayoff(const LocalGame& game, std::span<const int> joint_action) {
  const std::size_t n = game.size();
  if (joint_action.size() != n) {
    throw std::invalid_argument("joint action needs one entry per member");
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (joint_action[j] < 0 ||
        static_cast<std::size_t>(joint_action[j]) >= game.actions[j].size()) {
      throw std::out_of_range("action index " + std::to_string(joint_action[j]) +
                              " out of range for member slot " + std::to_string(j));
    }
  }
  double unary_sum = 0.0;
  double pair_sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    unary_sum += UnaryTerm(game, j, static_cast<std::size_t>(joint_action[j]));
    if (game.weights.alpha_b == 0.0) continue;
    for (std::size_t k = j + 1; k < n; ++k) {
      pair_sum += PairwiseTerm(game, j, static_cast<std::size_t>(joint_action[j]), k,
                               static_cast<std::size_t>(joint_action[k]));
    }
  }
  return game.weights.alpha_a * unary_sum + game.weights.alpha_b * pair_sum;
}

Position VirtualMeanState(const Neighborhood& hood, std::span<const RobotState> states) {
  if (hood.members.empty()) throw std::invalid_argument("empty neighborhood");
  Position sum;
  for (AgentId k : hood.members) {
    const Position& p = states[static_cast<std::size_t>(k)].position;
    sum = sum + p;
  }
  const double inv = 1.0 / static_cast<double>(hood.members.size());
  return {sum.x * inv, sum.y * inv, sum.z * inv};
}

LocalGame BuildLocalGame(AgentId owner, int h, const TopologyGraph& graph,
                         std::span<const RobotState> states,
                         std::span<const ActionSet> actions,
                         const PotentialPair& potentials, const PayoffWeights& weights,
                         bool virtual_neighbors) {
  const auto n_agents = static_cast<std::size_t>(graph.NumAgents());
  if (states.size() != n_agents || actions.size() != n_agents) {
    throw std::invalid_argument("states and actions must cover every graph node");
  }
  const Neighborhood hood = ComputeNeighborhood(graph, owner, h);

  LocalGame game;
  game.owner = owner;
  game.members = hood.members;
  game.potentials = potentials;
  game.weights = weights;
  for (AgentId j : hood.members) {
    const auto idx = static_cast<std::size_t>(j);
    game.states.push_back(states[idx]);
    game.actions.push_back(actions[idx]);
    Position effective = states[idx].position;
    bool approximated = false;
    if (virtual_neighbors && j != owner) {
      const Neighborhood hood_j = ComputeNeighborhood(graph, j, h);
      const bool reaches_out =
          std::any_of(hood_j.members.begin(), hood_j.members.end(),
                      [&](AgentId k) { return !hood.Contains(k); });
      if (reaches_out) {
        effective = VirtualMeanState(hood_j, states);
        approximated = true;
      }
    }
    game.effective_states.push_back(effective);
    game.approximated.push_back(approximated);
  }
  game.Validate();
  return game;
}

}  // namespace swarmgame
