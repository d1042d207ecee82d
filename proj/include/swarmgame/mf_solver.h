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

#ifndef SWARMGAME_MF_SOLVER_H_
#define SWARMGAME_MF_SOLVER_H_

#include <cstdint>
#include <span>
#include <vector>

#include "swarmgame/game_core.h"

namespace swarmgame {

// Tabulated energies E = -M of a local game, split along the payoff's
// factorization: unary(j, x) = -alpha_a * phi_u and
// pair(j, x, k, y) = -alpha_b * phi_p for j != k.
class GameEnergies {
 public:
  // Evaluates every potential once.
  static GameEnergies FromLocalGame(const LocalGame& game);

  // Direct construction from energy tables. `pair` holds one row-major
  // |A_j| x |A_k| table per unordered pair j < k, in lexicographic (j, k)
  // order. Member ids default to 0..n-1.
  GameEnergies(std::vector<std::vector<double>> unary,
               std::vector<std::vector<double>> pair,
               std::vector<AgentId> members = {});

  std::size_t NumMembers() const { return unary_.size(); }
  std::size_t NumActions(std::size_t j) const { return unary_[j].size(); }
  AgentId Member(std::size_t j) const { return members_[j]; }

  double Unary(std::size_t j, std::size_t x) const { return unary_[j][x]; }
  double Pair(std::size_t j, std::size_t x, std::size_t k, std::size_t y) const;
  bool HasPairs() const { return has_pairs_; }

  // Total energy of a pure profile.
  double Energy(std::span<const int> profile) const;

 private:
  std::size_t PairIndex(std::size_t j, std::size_t k) const;

  std::vector<AgentId> members_;
  std::vector<std::vector<double>> unary_;
  std::vector<std::vector<double>> pair_;
  bool has_pairs_ = false;
};

struct Marginal {
  AgentId agent = 0;
  std::vector<double> probs;
};

// One marginal per local-game member, in member order.
using MarginalSet = std::vector<Marginal>;

enum class UpdateOrder { kRoundRobin, kSeededRandom };

struct SolverConfig {
  double delta = 1e-4;
  int max_sweeps = 100;
  UpdateOrder update_order = UpdateOrder::kRoundRobin;
  std::uint64_t seed = 0;

  void Validate() const;
};

struct SolveReport {
  MarginalSet marginals;
  int sweeps_used = 0;
  double final_kl = 0.0;
  double initial_free_energy = 0.0;
  std::vector<double> free_energy_trace;  // one entry per sweep
  // Largest |sum(probs) - 1| seen across all marginals after any sweep.
  double max_normalization_error = 0.0;
  bool converged = false;
};

// probs(x) proportional to exp(-energies(x)), shifted by the minimum energy.
std::vector<double> SoftminDistribution(std::span<const double> energies);

// Q_j(x) proportional to exp(-unary(j, x)).
MarginalSet InitMarginals(const GameEnergies& energies);

// Unary energy of (j, x) plus the expected pairwise energy against the other
// members' marginals. Terms that do not depend on x are dropped.
double ExpectedEnergy(const GameEnergies& energies, std::size_t j, std::size_t x,
                      const MarginalSet& current);

// Coordinate update of member j; `current` is left untouched.
Marginal UpdateMarginal(const GameEnergies& energies, std::size_t j,
                        const MarginalSet& current);

// Sum over members of KL(old_j || new_j); +infinity on a support mismatch.
double KlProduct(const MarginalSet& old_set, const MarginalSet& new_set);

// E_Q[energy] - H(Q) for the product distribution Q.
double FreeEnergy(const GameEnergies& energies, const MarginalSet& q);

SolveReport SolveLocalGame(const GameEnergies& energies, const SolverConfig& config);
SolveReport SolveLocalGame(const LocalGame& game, const SolverConfig& config);

// Per-member argmax; ties go to the lowest index.
std::vector<int> BestResponseProfile(const MarginalSet& marginals);

}  // namespace swarmgame

#endif  // SWARMGAME_MF_SOLVER_H_
