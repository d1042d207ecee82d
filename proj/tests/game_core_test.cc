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

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "swarmgame/game_core.h"
#include "swarmgame/random.h"

namespace swarmgame {
namespace {

PotentialPair ConstantPotentials(double c, double p) {
  return {[c](const Position&, std::span<const Position>) { return c; },
          [p](const Position&, const Position&) { return p; }};
}

// Smooth position-dependent potentials in (0, 1]; pairwise symmetric.
PotentialPair WavyPotentials() {
  PotentialPair pp;
  pp.unary = [](const Position& c, std::span<const Position> ctx) {
    double s = 0.5 + 0.3 * std::sin(0.01 * c.x + 0.02 * c.y);
    for (const auto& q : ctx) s += 0.01 * std::cos(0.001 * (q.x - c.x));
    return std::clamp(0.5 + 0.4 * std::tanh(s - 0.5), 1e-6, 1.0);
  };
  pp.pairwise = [](const Position& a, const Position& b) {
    const double d = Distance(a, b);
    return 1.0 / (1.0 + 0.01 * d);
  };
  return pp;
}

LocalGame ManualGame(const std::vector<Position>& positions, const PotentialPair& pp,
                     PayoffWeights w, const ActionSet& acts) {
  LocalGame g;
  g.owner = 0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    g.members.push_back(static_cast<AgentId>(i));
    g.states.push_back({static_cast<AgentId>(i), positions[i]});
    g.effective_states.push_back(positions[i]);
    g.approximated.push_back(false);
    g.actions.push_back(acts);
  }
  g.potentials = pp;
  g.weights = w;
  return g;
}

// Brute-force payoff: build the explicit factor list and sum it.
double FactorListPayoff(const LocalGame& g, const std::vector<int>& joint) {
  struct Factor {
    std::vector<std::size_t> scope;
    double weight;
  };
  std::vector<Factor> factors;
  for (std::size_t j = 0; j < g.size(); ++j) factors.push_back({{j}, g.weights.alpha_a});
  for (std::size_t j = 0; j < g.size(); ++j)
    for (std::size_t k = 0; k < g.size(); ++k)
      if (j < k) factors.push_back({{j, k}, g.weights.alpha_b});
  double total = 0.0;
  for (const auto& f : factors) {
    if (f.scope.size() == 1) {
      const std::size_t j = f.scope[0];
      std::vector<Position> ctx;
      for (std::size_t k = 0; k < g.size(); ++k)
        if (k != j) ctx.push_back(g.effective_states[k]);
      total += f.weight * g.potentials.unary(
                              g.effective_states[j] + g.actions[j][static_cast<std::size_t>(joint[j])], ctx);
    } else {
      const std::size_t j = f.scope[0], k = f.scope[1];
      total += f.weight *
               g.potentials.pairwise(g.effective_states[j] + g.actions[j][static_cast<std::size_t>(joint[j])],
                                     g.effective_states[k] + g.actions[k][static_cast<std::size_t>(joint[k])]);
    }
  }
  return total;
}

TopologyGraph PathGraph(int n) {
  std::vector<std::uint8_t> adj(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i + 1 < n; ++i) {
    adj[static_cast<std::size_t>(i * n + i + 1)] = 1;
    adj[static_cast<std::size_t>((i + 1) * n + i)] = 1;
  }
  return TopologyGraph::FromAdjacency(n, adj);
}

TEST_CASE("action set invariants") {
  CHECK_THROWS_AS(ActionSet({}), std::invalid_argument);
  CHECK_THROWS_AS(ActionSet({{1, 0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(ActionSet({{0, 0, 0}, {1, 0, 0}, {1, 0, 0}}), std::invalid_argument);
  const auto planar = ActionSet::Lattice(5.0, 2);
  CHECK(planar.size() == 9);
  CHECK(planar[0] == Position{});
  for (const auto& d : planar.displacements()) CHECK(d.z == 0.0);
  CHECK(ActionSet::Lattice(5.0, 3).size() == 27);
  CHECK_THROWS_AS(ActionSet::Lattice(5.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(ActionSet::Lattice(0.0, 2), std::invalid_argument);
}

TEST_CASE("payoff weights validation") {
  CHECK_NOTHROW(PayoffWeights{1.0, 0.0}.Validate());
  CHECK_THROWS_AS((PayoffWeights{0.0, 0.0}.Validate()), std::invalid_argument);
  CHECK_THROWS_AS((PayoffWeights{-1.0, 0.5}.Validate()), std::invalid_argument);
}

TEST_CASE("joint payoff with constant potentials") {
  const double c = 0.4, p = 0.7;
  const auto g = ManualGame({{0, 0, 0}, {10, 0, 0}, {20, 0, 0}}, ConstantPotentials(c, p),
                            {1.0, 0.001}, ActionSet::Lattice(1.0, 2));
  const std::vector<int> joint{0, 3, 8};
  CHECK(JointPayoff(g, joint) == doctest::Approx(3 * c + 0.003 * p).epsilon(1e-14));

  auto unary_only = g;
  unary_only.weights = {1.0, 0.0};
  CHECK(JointPayoff(unary_only, joint) == doctest::Approx(3 * c));

  const auto single = ManualGame({{0, 0, 0}}, ConstantPotentials(c, p), {2.0, 0.5},
                                 ActionSet::Lattice(1.0, 2));
  CHECK(JointPayoff(single, std::vector<int>{4}) == doctest::Approx(2.0 * c));
}

TEST_CASE("joint payoff rejects bad profiles and bad potentials") {
  const auto g = ManualGame({{0, 0, 0}, {10, 0, 0}}, ConstantPotentials(0.5, 0.5), {1, 1},
                            ActionSet::Lattice(1.0, 2));
  CHECK_THROWS_AS(JointPayoff(g, std::vector<int>{0, 9}), std::out_of_range);
  CHECK_THROWS_AS(JointPayoff(g, std::vector<int>{-1, 0}), std::out_of_range);
  CHECK_THROWS_AS(JointPayoff(g, std::vector<int>{0}), std::invalid_argument);

  const auto bad = ManualGame({{0, 0, 0}}, ConstantPotentials(0.0, 0.5), {1, 1},
                              ActionSet::Lattice(1.0, 2));
  CHECK_THROWS_AS(JointPayoff(bad, std::vector<int>{0}), std::domain_error);
}

TEST_CASE("joint payoff equals factor-list re-summation") {
  Rng rng(99);
  const auto acts = ActionSet::Lattice(7.0, 3);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = rng.Between(1, 5);
    std::vector<Position> pos;
    for (int i = 0; i < n; ++i) pos.push_back({rng.Uniform(-300, 300), rng.Uniform(-300, 300), 40});
    const auto g = ManualGame(pos, WavyPotentials(), {rng.Uniform(0, 2), rng.Uniform(0, 2)}, acts);
    std::vector<int> joint(static_cast<std::size_t>(n));
    for (auto& a : joint) a = rng.Between(0, 26);
    CHECK(JointPayoff(g, joint) == doctest::Approx(FactorListPayoff(g, joint)).epsilon(1e-12));
  }
}

TEST_CASE("joint payoff is invariant under member permutation") {
  Rng rng(5);
  const auto acts = ActionSet::Lattice(7.0, 2);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = rng.Between(2, 5);
    std::vector<Position> pos;
    std::vector<int> joint;
    for (int i = 0; i < n; ++i) {
      pos.push_back({rng.Uniform(-300, 300), rng.Uniform(-300, 300), 40});
      joint.push_back(rng.Between(0, 8));
    }
    std::vector<std::size_t> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    rng.Shuffle(std::span<std::size_t>(perm));
    std::vector<Position> pos2;
    std::vector<int> joint2;
    for (std::size_t i : perm) {
      pos2.push_back(pos[i]);
      joint2.push_back(joint[i]);
    }
    const PayoffWeights w{1.0, 0.3};
    const double a = JointPayoff(ManualGame(pos, WavyPotentials(), w, acts), joint);
    const double b = JointPayoff(ManualGame(pos2, WavyPotentials(), w, acts), joint2);
    CHECK(a == doctest::Approx(b).epsilon(1e-12));
  }
}

TEST_CASE("virtual mean state") {
  std::vector<RobotState> states{{0, {0, 0, 10}}, {1, {1, 0, 10}}, {2, {2, 0, 10}}};
  CHECK(VirtualMeanState({0, 1, {0}}, states) == Position{0, 0, 10});
  const Position m = VirtualMeanState({1, 1, {0, 1, 2}}, states);
  CHECK(m.x == doctest::Approx(1.0));
  CHECK(m.y == 0.0);
  CHECK(m.z == doctest::Approx(10.0));

  std::vector<RobotState> same{{0, {3, 4, 5}}, {1, {3, 4, 5}}};
  CHECK(VirtualMeanState({0, 1, {0, 1}}, same) == Position{3, 4, 5});
  CHECK_THROWS_AS(VirtualMeanState({0, 1, {}}, same), std::invalid_argument);
}

TEST_CASE("virtual mean lies inside the members' bounding box") {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = rng.Between(1, 8);
    std::vector<RobotState> states;
    Neighborhood hood{0, 1, {}};
    for (int i = 0; i < n; ++i) {
      states.push_back({i, {rng.Uniform(-1e3, 1e3), rng.Uniform(-1e3, 1e3), rng.Uniform(0, 100)}});
      hood.members.push_back(i);
    }
    const Position m = VirtualMeanState(hood, states);
    auto within = [&](auto get) {
      double lo = 1e18, hi = -1e18;
      for (const auto& s : states) {
        lo = std::min(lo, get(s.position));
        hi = std::max(hi, get(s.position));
      }
      return get(m) >= lo - 1e-9 && get(m) <= hi + 1e-9;
    };
    CHECK(within([](const Position& p) { return p.x; }));
    CHECK(within([](const Position& p) { return p.y; }));
    CHECK(within([](const Position& p) { return p.z; }));
  }
}

TEST_CASE("local game construction") {
  const auto acts = ActionSet::Lattice(1.0, 2);
  const auto pp = ConstantPotentials(0.5, 0.5);
  const PayoffWeights w{1.0, 0.001};

  SUBCASE("complete graph approximates nothing") {
    std::vector<std::uint8_t> adj{0, 1, 1, 1, 0, 1, 1, 1, 0};
    const auto g = TopologyGraph::FromAdjacency(3, adj);
    std::vector<RobotState> states{{0, {0, 0, 0}}, {1, {5, 0, 0}}, {2, {9, 0, 0}}};
    std::vector<ActionSet> actions(3, acts);
    for (int h = 1; h <= 3; ++h) {
      const auto game = BuildLocalGame(1, h, g, states, actions, pp, w);
      CHECK(game.members == std::vector<AgentId>{0, 1, 2});
      CHECK(std::none_of(game.approximated.begin(), game.approximated.end(), [](bool b) { return b; }));
      for (std::size_t s = 0; s < 3; ++s) CHECK(game.effective_states[s] == game.states[s].position);
    }
  }

  SUBCASE("path graph approximates the boundary member") {
    const auto g = PathGraph(4);
    std::vector<RobotState> states{{0, {0, 0, 0}}, {1, {3, 0, 0}}, {2, {9, 0, 0}}, {3, {20, 0, 0}}};
    std::vector<ActionSet> actions(4, acts);
    const auto game = BuildLocalGame(0, 1, g, states, actions, pp, w);
    CHECK(game.members == std::vector<AgentId>{0, 1});
    CHECK_FALSE(game.approximated[0]);
    CHECK(game.effective_states[0] == Position{0, 0, 0});
    CHECK(game.approximated[1]);
    CHECK(game.effective_states[1].x == doctest::Approx(4.0));  // (0 + 3 + 9) / 3

    const auto plain = BuildLocalGame(0, 1, g, states, actions, pp, w, false);
    CHECK_FALSE(plain.approximated[1]);
    CHECK(plain.effective_states[1] == Position{3, 0, 0});
  }

  SUBCASE("isolated owner") {
    const auto g = TopologyGraph::FromAdjacency(2, {0, 0, 0, 0});
    std::vector<RobotState> states{{0, {0, 0, 0}}, {1, {1, 0, 0}}};
    std::vector<ActionSet> actions(2, acts);
    const auto game = BuildLocalGame(1, 2, g, states, actions, pp, w);
    CHECK(game.members == std::vector<AgentId>{1});
    CHECK(game.OwnerSlot() == 0);
    CHECK_FALSE(game.approximated[0]);
  }

  SUBCASE("errors propagate") {
    const auto g = PathGraph(2);
    std::vector<RobotState> states{{0, {0, 0, 0}}, {1, {1, 0, 0}}};
    std::vector<ActionSet> actions(2, acts);
    CHECK_THROWS_AS(BuildLocalGame(2, 1, g, states, actions, pp, w), std::out_of_range);
    CHECK_THROWS_AS(BuildLocalGame(0, 0, g, states, actions, pp, w), std::invalid_argument);
  }
}

TEST_CASE("owner is never approximated") {
  Rng rng(23);
  const auto acts = ActionSet::Lattice(1.0, 2);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = rng.Between(1, 8);
    std::vector<std::uint8_t> adj(static_cast<std::size_t>(n * n), 0);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (rng.Uniform() < 0.35) adj[static_cast<std::size_t>(i * n + j)] = adj[static_cast<std::size_t>(j * n + i)] = 1;
    const auto g = TopologyGraph::FromAdjacency(n, adj);
    std::vector<RobotState> states;
    for (int i = 0; i < n; ++i) states.push_back({i, {rng.Uniform(0, 100), rng.Uniform(0, 100), 0}});
    std::vector<ActionSet> actions(static_cast<std::size_t>(n), acts);
    for (int owner = 0; owner < n; ++owner) {
      const auto game = BuildLocalGame(owner, rng.Between(1, 3), g, states, actions,
                                       ConstantPotentials(0.5, 0.5), {1, 0.1});
      const auto slot = game.OwnerSlot();
      CHECK_FALSE(game.approximated[slot]);
      CHECK(game.effective_states[slot] == states[static_cast<std::size_t>(owner)].position);
    }
  }
}

}  // namespace
}  // namespace swarmgame
