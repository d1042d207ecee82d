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

#include "swarmgame/oracle.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <memory>
#include <stdexcept>
#include <string>

namespace swarmgame {

namespace {

bool StrictlyGreater(double a, double b) {
  return a > b + 1e-12 * (1.0 + std::max(std::abs(a), std::abs(b)));
}

ExactSolution Enumerate(const std::vector<std::size_t>& radix,
                        const std::vector<AgentId>& members,
                        const std::function<double(const std::vector<int>&)>& payoff) {
  std::size_t total = 1;
  for (std::size_t r : radix) {
    if (r == 0) throw std::invalid_argument("member with no actions");
    if (total > kMaxJointProfiles / r) {
      throw std::length_error("joint action space exceeds " +
                              std::to_string(kMaxJointProfiles) + " profiles");
    }
    total *= r;
  }
  const std::size_t n = radix.size();
  // stride[j] is the index step for incrementing member j's action.
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t j = n; j-- > 1;) stride[j - 1] = stride[j] * radix[j];

  std::vector<double> pay(total);
  for (std::size_t idx = 0; idx < total; ++idx) pay[idx] = payoff(DecodeProfile(idx, radix));

  ExactSolution sol;
  const double top = *std::max_element(pay.begin(), pay.end());
  sol.joint.resize(total);
  double z = 0.0;
  for (std::size_t idx = 0; idx < total; ++idx) {
    sol.joint[idx] = std::exp(pay[idx] - top);
    z += sol.joint[idx];
  }
  for (double& p : sol.joint) p /= z;
  sol.log_partition = top + std::log(z);

  sol.marginals.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    sol.marginals[j] = {members[j], std::vector<double>(radix[j], 0.0)};
  }
  for (std::size_t idx = 0; idx < total; ++idx) {
    for (std::size_t j = 0; j < n; ++j) {
      sol.marginals[j].probs[(idx / stride[j]) % radix[j]] += sol.joint[idx];
    }
  }

  for (std::size_t idx = 0; idx < total; ++idx) {
    bool stable = true;
    for (std::size_t j = 0; j < n && stable; ++j) {
      const std::size_t own = (idx / stride[j]) % radix[j];
      const std::size_t base = idx - own * stride[j];
      for (std::size_t b = 0; b < radix[j]; ++b) {
        if (StrictlyGreater(pay[base + b * stride[j]], pay[idx])) {
          stable = false;
          break;
        }
      }
    }
    if (stable) sol.pure_nash.push_back(DecodeProfile(idx, radix));
  }

  std::vector<int> dominant(n, -1);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t a = 0; a < radix[j] && dominant[j] < 0; ++a) {
      bool best_everywhere = true;
      for (std::size_t idx = 0; idx < total && best_everywhere; ++idx) {
        if ((idx / stride[j]) % radix[j] != 0) continue;  // one visit per opposing profile
        const double own = pay[idx + a * stride[j]];
        for (std::size_t b = 0; b < radix[j]; ++b) {
          if (StrictlyGreater(pay[idx + b * stride[j]], own)) {
            best_everywhere = false;
            break;
          }
        }
      }
      if (best_everywhere) dominant[j] = static_cast<int>(a);
    }
  }
  if (std::all_of(dominant.begin(), dominant.end(), [](int a) { return a >= 0; })) {
    sol.dominant_eq = dominant;
  }
  return sol;
}

}  // namespace

std::vector<int> DecodeProfile(std::size_t index, const std::vector<std::size_t>& radix) {
  std::vector<int> profile(radix.size());
  for (std::size_t j = radix.size(); j-- > 0;) {
    profile[j] = static_cast<int>(index % radix[j]);
    index /= radix[j];
  }
  return profile;
}

ExactSolution OracleExact(const LocalGame& game) {
  game.Validate();
  std::vector<std::size_t> radix;
  for (const auto& a : game.actions) radix.push_back(a.size());
  return Enumerate(radix, game.members,
                   [&](const std::vector<int>& p) { return JointPayoff(game, p); });
}

ExactSolution OracleExact(const GameEnergies& energies) {
  std::vector<std::size_t> radix;
  std::vector<AgentId> members;
  for (std::size_t j = 0; j < energies.NumMembers(); ++j) {
    radix.push_back(energies.NumActions(j));
    members.push_back(energies.Member(j));
  }
  return Enumerate(radix, members,
                   [&](const std::vector<int>& p) { return -energies.Energy(p); });
}

double TotalVariation(const std::vector<double>& p, const std::vector<double>& q) {
  if (p.size() != q.size()) throw std::invalid_argument("distribution size mismatch");
  double tv = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) tv += std::abs(p[i] - q[i]);
  return 0.5 * tv;
}

namespace {

struct PotentialTables {
  std::vector<std::vector<double>> unary;               // [member][action]
  std::vector<std::vector<std::vector<double>>> pair;  // [j][k] row-major, j < k

  std::pair<std::size_t, std::size_t> Cell(const Position& p) const {
    const long member = std::lround(p.x / 1000.0);
    const long action = std::lround(p.y);
    if (member < 0 || static_cast<std::size_t>(member) >= unary.size() || action < 0 ||
        static_cast<std::size_t>(action) >= unary[static_cast<std::size_t>(member)].size()) {
      throw std::out_of_range("position is not a cell of the table game");
    }
    return {static_cast<std::size_t>(member), static_cast<std::size_t>(action)};
  }
};

}  // namespace

LocalGame MakeRandomTableGame(Rng& rng, const RandomGameOptions& options) {
  if (options.min_members < 1 || options.max_members < options.min_members ||
      options.min_actions < 1 || options.max_actions < options.min_actions) {
    throw std::invalid_argument("invalid random game bounds");
  }
  const int n = rng.Between(options.min_members, options.max_members);
  auto tables = std::make_shared<PotentialTables>();
  tables->unary.resize(static_cast<std::size_t>(n));
  tables->pair.assign(static_cast<std::size_t>(n),
                      std::vector<std::vector<double>>(static_cast<std::size_t>(n)));

  LocalGame game;
  game.owner = 0;
  for (int j = 0; j < n; ++j) {
    const int n_actions = rng.Between(options.min_actions, options.max_actions);
    std::vector<Position> displacements;
    for (int a = 0; a < n_actions; ++a) {
      displacements.push_back({0.0, static_cast<double>(a), 0.0});
      // Upper end of (0, 1]; Uniform() never returns 1.
      tables->unary[static_cast<std::size_t>(j)].push_back(1.0 - rng.Uniform());
    }
    const Position home{1000.0 * j, 0.0, 0.0};
    game.members.push_back(j);
    game.states.push_back({j, home});
    game.effective_states.push_back(home);
    game.approximated.push_back(false);
    game.actions.emplace_back(std::move(displacements));
  }
  for (std::size_t j = 0; j < tables->unary.size(); ++j) {
    for (std::size_t k = j + 1; k < tables->unary.size(); ++k) {
      auto& table = tables->pair[j][k];
      table.resize(tables->unary[j].size() * tables->unary[k].size());
      for (double& v : table) v = 1.0 - rng.Uniform();
    }
  }
  game.weights = {1.0, options.max_alpha_b * rng.Uniform()};

  std::shared_ptr<const PotentialTables> shared = tables;
  game.potentials.unary = [shared](const Position& candidate, std::span<const Position>) {
    const auto [member, action] = shared->Cell(candidate);
    return shared->unary[member][action];
  };
  game.potentials.pairwise = [shared](const Position& a, const Position& b) {
    auto ca = shared->Cell(a);
    auto cb = shared->Cell(b);
    if (ca.first == cb.first) throw std::invalid_argument("pairwise potential on one member");
    if (ca.first > cb.first) std::swap(ca, cb);
    const std::size_t width = shared->unary[cb.first].size();
    return shared->pair[ca.first][cb.first][ca.second * width + cb.second];
  };
  return game;
}

}  // namespace swarmgame
