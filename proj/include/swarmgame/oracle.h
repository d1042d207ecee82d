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

#ifndef SWARMGAME_ORACLE_H_
#define SWARMGAME_ORACLE_H_

#include <cstddef>
#include <optional>
#include <vector>

#include "swarmgame/game_core.h"
#include "swarmgame/mf_solver.h"
#include "swarmgame/random.h"

namespace swarmgame {

// Upper bound on the number of joint profiles the exact solver enumerates.
inline constexpr std::size_t kMaxJointProfiles = 1'000'000;

// Exact Gibbs distribution P(profile) = exp(payoff(profile)) / Z of a local
// game, plus its pure equilibria. Profiles are indexed in mixed radix with
// the last member varying fastest.
struct ExactSolution {
  std::vector<double> joint;
  double log_partition = 0.0;
  MarginalSet marginals;
  std::vector<std::vector<int>> pure_nash;
  // Per member, the lowest-index action that is a best response to every
  // opposing profile; absent unless every member has one.
  std::optional<std::vector<int>> dominant_eq;
};

// Enumerates every profile through JointPayoff. Throws std::length_error when
// the profile count exceeds kMaxJointProfiles.
ExactSolution OracleExact(const LocalGame& game);

// Same, on tabulated energies (payoff = -energy).
ExactSolution OracleExact(const GameEnergies& energies);

// Decodes a mixed-radix profile index.
std::vector<int> DecodeProfile(std::size_t index, const std::vector<std::size_t>& radix);

double TotalVariation(const std::vector<double>& p, const std::vector<double>& q);

struct RandomGameOptions {
  int min_members = 1;
  int max_members = 3;
  int min_actions = 2;
  int max_actions = 5;
  double max_alpha_b = 1.0;
};

// A LocalGame with table-backed potentials: member j sits at x = 1000 j and
// action a displaces it by a meters along y, so each candidate position maps
// to one (member, action) table cell.
LocalGame MakeRandomTableGame(Rng& rng, const RandomGameOptions& options);

}  // namespace swarmgame

#endif  // SWARMGAME_ORACLE_H_
