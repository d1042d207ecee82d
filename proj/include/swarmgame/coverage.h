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

#ifndef SWARMGAME_COVERAGE_H_
#define SWARMGAME_COVERAGE_H_

#include <array>
#include <span>
#include <vector>

#include "swarmgame/game_core.h"
#include "swarmgame/net_topology.h"

namespace swarmgame {

// Region of interest: the `confidence` concentration ellipse of a bivariate
// Gaussian on the ground plane (z = 0).
struct RoiGaussian {
  std::array<double, 2> mean{0.0, 0.0};
  std::array<std::array<double, 2>, 2> covariance{{{200.0 * 200.0, 0.0}, {0.0, 200.0 * 200.0}}};
  double confidence = 0.95;

  // Symmetric positive definite covariance, confidence in (0, 1).
  void Validate() const;
  double Mahalanobis2(double x, double y) const;
};

// Quantile of the chi-square distribution with two degrees of freedom.
double ChiSquare2Quantile(double p);

struct GroundPoint {
  double x = 0.0;
  double y = 0.0;
};

struct QuadratureGrid {
  std::vector<GroundPoint> points;
  std::vector<double> weights;  // sum to 1
};

// Cell-centred resolution x resolution grid over the ellipse's bounding box,
// masked to the ellipse and weighted by the Gaussian density.
QuadratureGrid BuildGrid(const RoiGaussian& roi, int resolution);

// Affine map of dBm into (0, 1]: the receiver sensitivity maps to 0 (clamped
// to epsilon) and the received power at the reference distance maps to 1.
struct SignalSquash {
  double floor_dbm = 0.0;
  double ceil_dbm = 1.0;
  double epsilon = 1e-6;

  static SignalSquash ForLink(const LinkModelParams& link);
  double operator()(double dbm) const;
};

// Grid expectation of the strongest signal any of {candidate} + context
// delivers to each ROI point, in dBm.
double ExpectedMaxSignalDbm(const Position& candidate, std::span<const Position> context,
                            const QuadratureGrid& grid, const LinkModelParams& link);

double UnaryCoverage(const Position& candidate, std::span<const Position> context,
                     const QuadratureGrid& grid, const LinkModelParams& link);

double PairwiseCoverage(const Position& a, const Position& b, const LinkModelParams& link);

// Builds the grid once and shares it between the returned closures.
PotentialPair MakeCoveragePotentials(const RoiGaussian& roi, int resolution,
                                     const LinkModelParams& link);

}  // namespace swarmgame

#endif  // SWARMGAME_COVERAGE_H_
