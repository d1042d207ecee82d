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

#ifndef SWARMGAME_GAME_CORE_H_
#define SWARMGAME_GAME_CORE_H_

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "swarmgame/net_topology.h"

namespace swarmgame {

// Agents are addressed by their index in the swarm snapshot; `id` is the
// external label carried through to outputs.
struct RobotState {
  AgentId id = 0;
  Position position;
};

// Discrete motion primitives. Always contains the zero displacement.
class ActionSet {
 public:
  explicit ActionSet(std::vector<Position> displacements);

  // {-step, 0, +step}^dims with z fixed at 0 when dims == 2. The zero
  // displacement sits at index 0 so that ties resolve to staying in place.
  static ActionSet Lattice(double step_m, int dims);

  std::size_t size() const { return displacements_.size(); }
  const Position& operator[](std::size_t i) const { return displacements_[i]; }
  std::span<const Position> displacements() const { return displacements_; }

 private:
  std::vector<Position> displacements_;
};

// unary(candidate, context): payoff contribution of one member placed at
// `candidate`, given the (effective) states of the other members.
// pairwise(a, b): symmetric interaction between two candidate placements.
// Both must return values in (0, 1] and hold no mutable state.
using UnaryPotential =
    std::function<double(const Position& candidate, std::span<const Position> context)>;
using PairwisePotential = std::function<double(const Position& a, const Position& b)>;

struct PotentialPair {
  UnaryPotential unary;
  PairwisePotential pairwise;
};

struct PayoffWeights {
  double alpha_a = 1.0;
  double alpha_b = 0.001;

  void Validate() const;
};

// One agent's decomposed game over its h-hop neighborhood.
struct LocalGame {
  AgentId owner = 0;
  std::vector<AgentId> members;             // agent indices, ascending
  std::vector<RobotState> states;           // true states, per member
  std::vector<Position> effective_states;   // true state or virtual mean
  std::vector<bool> approximated;           // effective state is a virtual mean
  std::vector<ActionSet> actions;           // per member
  PotentialPair potentials;
  PayoffWeights weights;

  std::size_t size() const { return members.size(); }
  // Position of the owner within `members`.
  std::size_t OwnerSlot() const;
  // Throws std::invalid_argument on inconsistent shapes.
  void Validate() const;
};

// Effective states of every member except `slot`.
std::vector<Position> UnaryContext(const LocalGame& game, std::size_t slot);

// phi_u for member `slot` taking `action`; context members stay put.
double UnaryTerm(const LocalGame& game, std::size_t slot, std::size_t action);

// phi_p between two members at their post-action positions.
double PairwiseTerm(const LocalGame& game, std::size_t slot_a, std::size_t action_a,
                    std::size_t slot_b, std::size_t action_b);

// alpha_a * sum_j phi_u + alpha_b * sum_{j<k} phi_p, each pair counted once.
// Throws std::out_of_range for a bad action index.
double JointPayoff(const LocalGame& game, std::span<const int> joint_action);

// Componentwise mean of the member states of `hood` (indexed by agent).
Position VirtualMeanState(const Neighborhood& hood, std::span<const RobotState> states);

// Members come from the owner's h-hop neighborhood. A member j != owner whose
// own neighborhood reaches outside the owner's is replaced by its virtual
// mean state when `virtual_neighbors` is set. `actions` is per agent.
LocalGame BuildLocalGame(AgentId owner, int h, const TopologyGraph& graph,
                         std::span<const RobotState> states,
                         std::span<const ActionSet> actions,
                         const PotentialPair& potentials, const PayoffWeights& weights,
                         bool virtual_neighbors = true);

}  // namespace swarmgame

#endif  // SWARMGAME_GAME_CORE_H_
