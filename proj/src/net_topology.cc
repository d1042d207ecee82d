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

#include "swarmgame/net_topology.h"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <string>

#include "swarmgame/random.h"

namespace swarmgame {

double Distance(const Position& a, const Position& b) {
  const Position d = a - b;
  return std::sqrt(d.x * d.x + d.y * d.y + d.z * d.z);
}

void LinkModelParams::Validate() const {
  if (!std::isfinite(tx_power_dbm) || !std::isfinite(ref_loss_db) ||
      !std::isfinite(path_loss_exponent) || !std::isfinite(rx_sensitivity_dbm) ||
      !std::isfinite(ref_distance_m)) {
    throw std::invalid_argument("link parameters must be finite");
  }
  if (path_loss_exponent < 1.0) {
    throw std::invalid_argument("path_loss_exponent must be >= 1");
  }
  if (ref_distance_m <= 0.0) {
    throw std::invalid_argument("ref_distance_m must be > 0");
  }
  if (rx_sensitivity_dbm >= tx_power_dbm) {
    throw std::invalid_argument(
        "rx_sensitivity_dbm must be below tx_power_dbm");
  }
}

double ReceivedPower(const LinkModelParams& params, double distance_m) {
  if (!std::isfinite(distance_m) || distance_m < 0.0) {
    throw std::invalid_argument("distance must be finite and non-negative, got " +
                                std::to_string(distance_m));
  }
  const double relative =
      std::max(distance_m, params.ref_distance_m) / params.ref_distance_m;
  return params.tx_power_dbm - params.ref_loss_db -
         10.0 * params.path_loss_exponent * std::log10(relative);
}

double LinkRange(const LinkModelParams& params) {
  const double budget =
      params.tx_power_dbm - params.ref_loss_db - params.rx_sensitivity_dbm;
  if (budget <= 0.0) return params.ref_distance_m;
  return params.ref_distance_m *
         std::pow(10.0, budget / (10.0 * params.path_loss_exponent));
}

std::size_t TopologyGraph::Index(AgentId i, AgentId j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_) {
    throw std::out_of_range("agent index out of range");
  }
  return static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
         static_cast<std::size_t>(j);
}

TopologyGraph TopologyGraph::FromAdjacency(int n_agents,
                                           std::vector<std::uint8_t> adjacency) {
  if (n_agents < 1) throw std::invalid_argument("graph needs >= 1 agent");
  const auto n = static_cast<std::size_t>(n_agents);
  if (adjacency.size() != n * n) {
    throw std::invalid_argument("adjacency must be n x n");
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (adjacency[i * n + i]) {
      throw std::invalid_argument("adjacency diagonal must be empty");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      if (static_cast<bool>(adjacency[i * n + j]) !=
          static_cast<bool>(adjacency[j * n + i])) {
        throw std::invalid_argument("adjacency must be symmetric");
      }
    }
  }
  for (auto& a : adjacency) a = a ? 1 : 0;

  TopologyGraph g;
  g.n_ = n_agents;
  g.adjacency_ = std::move(adjacency);
  g.hops_.assign(n * n, kUnreachable);

  std::deque<std::size_t> frontier;
  for (std::size_t src = 0; src < n; ++src) {
    int* row = &g.hops_[src * n];
    row[src] = 0;
    frontier.assign(1, src);
    while (!frontier.empty()) {
      const std::size_t u = frontier.front();
      frontier.pop_front();
      for (std::size_t v = 0; v < n; ++v) {
        if (g.adjacency_[u * n + v] && row[v] == kUnreachable) {
          row[v] = row[u] + 1;
          frontier.push_back(v);
        }
      }
    }
  }
  return g;
}

int TopologyGraph::Degree(AgentId i) const {
  int degree = 0;
  for (AgentId j = 0; j < n_; ++j) degree += Adjacent(i, j) ? 1 : 0;
  return degree;
}

int TopologyGraph::NumEdges() const {
  int edges = 0;
  for (auto a : adjacency_) edges += a;
  return edges / 2;
}

TopologyGraph BuildLinkGraph(std::span<const Position> positions,
                             const LinkModelParams& params) {
  if (positions.empty()) {
    throw std::invalid_argument("cannot build a link graph without agents");
  }
  params.Validate();
  const std::size_t n = positions.size();
  std::vector<std::uint8_t> adjacency(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (!positions[i].IsFinite()) {
      throw std::invalid_argument("agent position must be finite");
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      const double rx = ReceivedPower(params, Distance(positions[i], positions[j]));
      const std::uint8_t linked = rx >= params.rx_sensitivity_dbm ? 1 : 0;
      adjacency[i * n + j] = linked;
      adjacency[j * n + i] = linked;
    }
  }
  return TopologyGraph::FromAdjacency(static_cast<int>(n), std::move(adjacency));
}

bool Neighborhood::Contains(AgentId id) const {
  return std::binary_search(members.begin(), members.end(), id);
}

Neighborhood ComputeNeighborhood(const TopologyGraph& graph, AgentId owner,
                                 int h) {
  if (owner < 0 || owner >= graph.NumAgents()) {
    throw std::out_of_range("neighborhood owner " + std::to_string(owner) +
                            " out of range");
  }
  if (h < 1) throw std::invalid_argument("hop bound h must be >= 1");
  Neighborhood hood{owner, h, {}};
  for (AgentId j = 0; j < graph.NumAgents(); ++j) {
    if (j == owner || graph.Hops(owner, j) <= h) hood.members.push_back(j);
  }
  return hood;
}

std::vector<SweepRecord> ConnectivitySweep(const LinkModelParams& params,
                                           std::span<const double> spacings,
                                           const SweepOptions& options) {
  if (spacings.empty()) throw std::invalid_argument("no spacings to sweep");
  if (options.n_agents < 2) throw std::invalid_argument("sweep needs >= 2 agents");
  if (options.trials < 1) throw std::invalid_argument("sweep needs >= 1 trial");
  params.Validate();

  const int n = options.n_agents;
  const double pairs_per_trial = 0.5 * n * (n - 1);
  std::vector<SweepRecord> records;
  records.reserve(spacings.size());
  std::vector<Position> positions(static_cast<std::size_t>(n));

  for (std::size_t s = 0; s < spacings.size(); ++s) {
    const double side = spacings[s];
    if (!std::isfinite(side) || side < 0.0) {
      throw std::invalid_argument("spacing must be finite and non-negative");
    }
    double degree_sum = 0.0;
    double hop_sum = 0.0;
    long long reachable = 0;
    for (int t = 0; t < options.trials; ++t) {
      Rng rng = Rng::Stream(options.seed, s, static_cast<std::uint64_t>(t));
      for (auto& p : positions) {
        p.x = rng.Uniform(0.0, side);
        p.y = rng.Uniform(0.0, side);
        p.z = options.altitude_m;
      }
      const TopologyGraph g = BuildLinkGraph(positions, params);
      degree_sum += 2.0 * g.NumEdges() / n;
      for (AgentId i = 0; i < n; ++i) {
        for (AgentId j = i + 1; j < n; ++j) {
          const int hops = g.Hops(i, j);
          if (hops == kUnreachable) continue;
          hop_sum += hops;
          ++reachable;
        }
      }
    }
    SweepRecord rec;
    rec.spacing_m = side;
    rec.avg_direct_neighbors = degree_sum / options.trials;
    if (reachable > 0) rec.avg_hop_count = hop_sum / static_cast<double>(reachable);
    rec.reachable_pair_fraction =
        static_cast<double>(reachable) / (pairs_per_trial * options.trials);
    records.push_back(rec);
  }
  return records;
}

}  // namespace swarmgame
