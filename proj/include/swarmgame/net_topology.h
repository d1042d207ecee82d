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

#ifndef SWARMGAME_NET_TOPOLOGY_H_
#define SWARMGAME_NET_TOPOLOGY_H_

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace swarmgame {

using AgentId = int;

// A point (or displacement) in meters.
struct Position {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  bool IsFinite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }
  friend Position operator+(const Position& a, const Position& b) {
    return {a.x + b.x, a.y + b.y, a.z + b.z};
  }
  friend Position operator-(const Position& a, const Position& b) {
    return {a.x - b.x, a.y - b.y, a.z - b.z};
  }
  friend bool operator==(const Position&, const Position&) = default;
};

double Distance(const Position& a, const Position& b);

// Log-distance (Friis-style) link budget. Defaults correspond to a 16.02 dBm
// transmitter and free-space loss at 1 m for a 5 GHz carrier.
struct LinkModelParams {
  double tx_power_dbm = 16.02;
  double ref_loss_db = 46.67;
  double path_loss_exponent = 2.0;
  double rx_sensitivity_dbm = -85.0;
  double ref_distance_m = 1.0;

  // Throws std::invalid_argument when an invariant does not hold.
  void Validate() const;
};

// T0 - L0 - 10 n log10(max(d, d0) / d0). Throws on negative or non-finite d.
double ReceivedPower(const LinkModelParams& params, double distance_m);

// Distance at which the received power drops to the receiver sensitivity.
double LinkRange(const LinkModelParams& params);

inline constexpr int kUnreachable = std::numeric_limits<int>::max();

// Undirected communication graph with all-pairs hop counts. Hop counts stand
// in for what a proactive routing protocol would report in steady state.
class TopologyGraph {
 public:
  // Adjacency is row-major n x n. Throws unless it is symmetric with an
  // empty diagonal. Hops are filled by breadth-first search from every node.
  static TopologyGraph FromAdjacency(int n_agents,
                                     std::vector<std::uint8_t> adjacency);

  int NumAgents() const { return n_; }
  bool Adjacent(AgentId i, AgentId j) const { return adjacency_[Index(i, j)]; }
  int Hops(AgentId i, AgentId j) const { return hops_[Index(i, j)]; }
  int Degree(AgentId i) const;
  int NumEdges() const;

 private:
  TopologyGraph() = default;
  std::size_t Index(AgentId i, AgentId j) const;

  int n_ = 0;
  std::vector<std::uint8_t> adjacency_;
  std::vector<int> hops_;
};

// Edge (i, j) iff the received power at their separation reaches the
// receiver sensitivity. Throws on empty input or invalid params.
TopologyGraph BuildLinkGraph(std::span<const Position> positions,
                             const LinkModelParams& params);

struct Neighborhood {
  AgentId owner = 0;
  int h = 1;
  std::vector<AgentId> members;  // sorted ascending, includes owner

  bool Contains(AgentId id) const;
};

// {owner} plus every agent within h hops.
Neighborhood ComputeNeighborhood(const TopologyGraph& graph, AgentId owner,
                                 int h);

struct SweepRecord {
  double spacing_m = 0.0;
  double avg_direct_neighbors = 0.0;
  // NaN when no pair was reachable in any trial.
  double avg_hop_count = std::numeric_limits<double>::quiet_NaN();
  double reachable_pair_fraction = 0.0;
};

struct SweepOptions {
  int n_agents = 7;
  int trials = 100;
  std::uint64_t seed = 0;
  double altitude_m = 50.0;
};

// For each spacing L, drops n agents uniformly at random in an L x L square
// (fixed altitude) and averages link statistics over the trials. Unreachable
// pairs are excluded from the hop average.
std::vector<SweepRecord> ConnectivitySweep(const LinkModelParams& params,
                                           std::span<const double> spacings,
                                           const SweepOptions& options);

}  // namespace swarmgame

#endif  // SWARMGAME_NET_TOPOLOGY_H_
