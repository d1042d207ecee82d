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

#include "swarmgame/mf_solver.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "swarmgame/random.h"

namespace swarmgame {

GameEnergies GameEnergies::FromLocalGame(const LocalGame& game) {
  game.Validate();
  const std::size_t n = game.size();
  const double alpha_a = game.weights.alpha_a;
  const double alpha_b = game.weights.alpha_b;

  std::vector<std::vector<double>> unary(n);
  for (std::size_t j = 0; j < n; ++j) {
    unary[j].resize(game.actions[j].size());
    for (std::size_t x = 0; x < unary[j].size(); ++x) {
      unary[j][x] = -alpha_a * UnaryTerm(game, j, x);
    }
  }
  std::vector<std::vector<double>> pair;
  if (alpha_b != 0.0) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        const std::size_t nk = game.actions[k].size();
        std::vector<double> table(game.actions[j].size() * nk);
        for (std::size_t x = 0; x < game.actions[j].size(); ++x) {
          for (std::size_t y = 0; y < nk; ++y) {
            table[x * nk + y] = -alpha_b * PairwiseTerm(game, j, x, k, y);
          }
        }
        pair.push_back(std::move(table));
      }
    }
  }
  return GameEnergies(std::move(unary), std::move(pair), game.members);
}

GameEnergies::GameEnergies(std::vector<std::vector<double>> unary,
                           std::vector<std::vector<double>> pair,
                           std::vector<AgentId> members)
    : members_(std::move(members)), unary_(std::move(unary)), pair_(std::move(pair)) {
  const std::size_t n = unary_.size();
  if (n == 0) throw std::invalid_argument("energies need at least one member");
  if (members_.empty()) {
    members_.resize(n);
    std::iota(members_.begin(), members_.end(), 0);
  }
  if (members_.size() != n) throw std::invalid_argument("member id count mismatch");
  for (const auto& row : unary_) {
    if (row.empty()) throw std::invalid_argument("member with no actions");
    for (double e : row) {
      if (!std::isfinite(e)) throw std::invalid_argument("unary energy must be finite");
    }
  }
  const std::size_t n_pairs = n * (n - 1) / 2;
  if (pair_.empty()) {
    has_pairs_ = false;
    return;
  }
  if (pair_.size() != n_pairs) throw std::invalid_argument("wrong number of pair tables");
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t k = j + 1; k < n; ++k) {
      const auto& table = pair_[PairIndex(j, k)];
      if (table.size() != unary_[j].size() * unary_[k].size()) {
        throw std::invalid_argument("pair table has the wrong shape");
      }
      for (double e : table) {
        if (!std::isfinite(e)) throw std::invalid_argument("pair energy must be finite");
      }
    }
  }
  has_pairs_ = true;
}

std::size_t GameEnergies::PairIndex(std::size_t j, std::size_t k) const {
  // Row j of the strict upper triangle starts after sum_{r<j} (n-1-r) entries.
  const std::size_t n = unary_.size();
  return j * (2 * n - j - 1) / 2 + (k - j - 1);
}

double GameEnergies::Pair(std::size_t j, std::size_t x, std::size_t k,
                          std::size_t y) const {
  if (!has_pairs_) return 0.0;
  if (j < k) return pair_[PairIndex(j, k)][x * unary_[k].size() + y];
  return pair_[PairIndex(k, j)][y * unary_[j].size() + x];
}

double GameEnergies::Energy(std::span<const int> profile) const {
  const std::size_t n = NumMembers();
  if (profile.size() != n) throw std::invalid_argument("profile size mismatch");
  double e = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const auto x = static_cast<std::size_t>(profile[j]);
    if (profile[j] < 0 || x >= NumActions(j)) throw std::out_of_range("action out of range");
    e += unary_[j][x];
    for (std::size_t k = j + 1; k < n; ++k) {
      e += Pair(j, x, k, static_cast<std::size_t>(profile[k]));
    }
  }
  return e;
}

void SolverConfig::Validate() const {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0, 1)");
  if (max_sweeps < 1) throw std::invalid_argument("max_sweeps must be >= 1");
}

std::vector<double> SoftminDistribution(std::span<const double> energies) {
  if (energies.empty()) throw std::invalid_argument("softmin over empty set");
  const double lowest = *std::min_element(energies.begin(), energies.end());
  std::vector<double> probs(energies.size());
  double z = 0.0;
  for (std::size_t i = 0; i < energies.size(); ++i) {
    probs[i] = std::exp(-(energies[i] - lowest));
    z += probs[i];
  }
  for (double& p : probs) p /= z;
  return probs;
}

MarginalSet InitMarginals(const GameEnergies& energies) {
  MarginalSet q(energies.NumMembers());
  for (std::size_t j = 0; j < q.size(); ++j) {
    std::vector<double> unary(energies.NumActions(j));
    for (std::size_t x = 0; x < unary.size(); ++x) unary[x] = energies.Unary(j, x);
    q[j] = {energies.Member(j), SoftminDistribution(unary)};
  }
  return q;
}

double ExpectedEnergy(const GameEnergies& energies, std::size_t j, std::size_t x,
                      const MarginalSet& current) {
  double e = energies.Unary(j, x);
  if (!energies.HasPairs()) return e;
  for (std::size_t k = 0; k < energies.NumMembers(); ++k) {
    if (k == j) continue;
    const auto& qk = current[k].probs;
    for (std::size_t y = 0; y < qk.size(); ++y) {
      if (qk[y] != 0.0) e += qk[y] * energies.Pair(j, x, k, y);
    }
  }
  return e;
}

Marginal UpdateMarginal(const GameEnergies& energies, std::size_t j,
                        const MarginalSet& current) {
  if (j >= energies.NumMembers() || current.size() != energies.NumMembers()) {
    throw std::out_of_range("member index out of range");
  }
  std::vector<double> expected(energies.NumActions(j));
  for (std::size_t x = 0; x < expected.size(); ++x) {
    expected[x] = ExpectedEnergy(energies, j, x, current);
  }
  return {energies.Member(j), SoftminDistribution(expected)};
}

double KlProduct(const MarginalSet& old_set, const MarginalSet& new_set) {
  if (old_set.size() != new_set.size()) throw std::invalid_argument("marginal set shape mismatch");
  double kl = 0.0;
  for (std::size_t j = 0; j < old_set.size(); ++j) {
    const auto& p = old_set[j].probs;
    const auto& q = new_set[j].probs;
    if (p.size() != q.size()) throw std::invalid_argument("marginal shape mismatch");
    for (std::size_t x = 0; x < p.size(); ++x) {
      if (p[x] == 0.0) continue;
      if (q[x] == 0.0) return std::numeric_limits<double>::infinity();
      kl += p[x] * std::log(p[x] / q[x]);
    }
  }
  // Rounding can leave a tiny negative value when the sets agree.
  return std::max(kl, 0.0);
}

double FreeEnergy(const GameEnergies& energies, const MarginalSet& q) {
  const std::size_t n = energies.NumMembers();
  double expected = 0.0;
  double entropy = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    const auto& qj = q[j].probs;
    for (std::size_t x = 0; x < qj.size(); ++x) {
      if (qj[x] == 0.0) continue;
      expected += qj[x] * energies.Unary(j, x);
      entropy -= qj[x] * std::log(qj[x]);
      if (!energies.HasPairs()) continue;
      for (std::size_t k = j + 1; k < n; ++k) {
        const auto& qk = q[k].probs;
        for (std::size_t y = 0; y < qk.size(); ++y) {
          expected += qj[x] * qk[y] * energies.Pair(j, x, k, y);
        }
      }
    }
  }
  return expected - entropy;
}

namespace {

double NormalizationError(const MarginalSet& q) {
  double worst = 0.0;
  for (const auto& m : q) {
    const double sum = std::accumulate(m.probs.begin(), m.probs.end(), 0.0);
    worst = std::max(worst, std::abs(sum - 1.0));
  }
  return worst;
}

}  // namespace

SolveReport SolveLocalGame(const GameEnergies& energies, const SolverConfig& config) {
  config.Validate();
  const std::size_t n = energies.NumMembers();
  SolveReport report;
  report.marginals = InitMarginals(energies);
  report.initial_free_energy = FreeEnergy(energies, report.marginals);
  report.max_normalization_error = NormalizationError(report.marginals);

  Rng rng(config.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);

  for (int sweep = 0; sweep < config.max_sweeps; ++sweep) {
    const MarginalSet before = report.marginals;
    if (config.update_order == UpdateOrder::kSeededRandom) {
      rng.Shuffle(std::span<std::size_t>(order));
    }
    for (std::size_t j : order) {
      report.marginals[j] = UpdateMarginal(energies, j, report.marginals);
    }
    report.sweeps_used = sweep + 1;
    report.final_kl = KlProduct(before, report.marginals);
    report.free_energy_trace.push_back(FreeEnergy(energies, report.marginals));
    report.max_normalization_error =
        std::max(report.max_normalization_error, NormalizationError(report.marginals));
    if (report.final_kl < config.delta) {
      report.converged = true;
      break;
    }
  }
  return report;
}

SolveReport SolveLocalGame(const LocalGame& game, const SolverConfig& config) {
  return SolveLocalGame(GameEnergies::FromLocalGame(game), config);
}

std::vector<int> BestResponseProfile(const MarginalSet& marginals) {
  std::vector<int> profile;
  profile.reserve(marginals.size());
  for (const auto& m : marginals) {
    if (m.probs.empty()) throw std::invalid_argument("empty marginal");
    // max_element returns the first maximum, i.e. the lowest index on ties.
    profile.push_back(static_cast<int>(
        std::max_element(m.probs.begin(), m.probs.end()) - m.probs.begin()));
  }
  return profile;
}

}  // namespace swarmgame
