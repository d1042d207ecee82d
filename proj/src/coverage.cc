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

#include "swarmgame/coverage.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

namespace swarmgame {

void RoiGaussian::Validate() const {
  const auto& c = covariance;
  for (const auto& row : c) {
    for (double v : row) {
      if (!std::isfinite(v)) throw std::invalid_argument("ROI covariance must be finite");
    }
  }
  if (!std::isfinite(mean[0]) || !std::isfinite(mean[1])) {
    throw std::invalid_argument("ROI mean must be finite");
  }
  if (c[0][1] != c[1][0]) throw std::invalid_argument("ROI covariance must be symmetric");
  if (!(c[0][0] > 0.0) || !(c[0][0] * c[1][1] - c[0][1] * c[1][0] > 0.0)) {
    throw std::invalid_argument("ROI covariance must be positive definite");
  }
  if (!(confidence > 0.0 && confidence < 1.0)) {
    throw std::invalid_argument("ROI confidence must lie in (0, 1)");
  }
}

double RoiGaussian::Mahalanobis2(double x, double y) const {
  const auto& c = covariance;
  const double det = c[0][0] * c[1][1] - c[0][1] * c[1][0];
  const double dx = x - mean[0];
  const double dy = y - mean[1];
  return (c[1][1] * dx * dx - 2.0 * c[0][1] * dx * dy + c[0][0] * dy * dy) / det;
}

double ChiSquare2Quantile(double p) {
  if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("quantile level must lie in [0, 1)");
  return -2.0 * std::log1p(-p);
}

QuadratureGrid BuildGrid(const RoiGaussian& roi, int resolution) {
  roi.Validate();
  if (resolution < 2) throw std::invalid_argument("grid resolution must be >= 2");
  const double level = ChiSquare2Quantile(roi.confidence);
  const double half_x = std::sqrt(level * roi.covariance[0][0]);
  const double half_y = std::sqrt(level * roi.covariance[1][1]);
  const double cell_x = 2.0 * half_x / resolution;
  const double cell_y = 2.0 * half_y / resolution;

  QuadratureGrid grid;
  double total = 0.0;
  for (int iy = 0; iy < resolution; ++iy) {
    const double y = roi.mean[1] - half_y + (iy + 0.5) * cell_y;
    for (int ix = 0; ix < resolution; ++ix) {
      const double x = roi.mean[0] - half_x + (ix + 0.5) * cell_x;
      const double m2 = roi.Mahalanobis2(x, y);
      if (m2 > level) continue;
      // Cell area and the density's normalizer are constant and cancel.
      const double w = std::exp(-0.5 * m2);
      grid.points.push_back({x, y});
      grid.weights.push_back(w);
      total += w;
    }
  }
  for (double& w : grid.weights) w /= total;
  return grid;
}

SignalSquash SignalSquash::ForLink(const LinkModelParams& link) {
  return {link.rx_sensitivity_dbm, link.tx_power_dbm - link.ref_loss_db, 1e-6};
}

double SignalSquash::operator()(double dbm) const {
  const double v = (dbm - floor_dbm) / (ceil_dbm - floor_dbm);
  return std::clamp(v, epsilon, 1.0);
}

double ExpectedMaxSignalDbm(const Position& candidate, std::span<const Position> context,
                            const QuadratureGrid& grid, const LinkModelParams& link) {
  if (grid.points.empty()) throw std::invalid_argument("empty quadrature grid");
  double sum = 0.0;
  for (std::size_t i = 0; i < grid.points.size(); ++i) {
    const Position ground{grid.points[i].x, grid.points[i].y, 0.0};
    // Received power falls with distance, so the max signal is the nearest transmitter's.
    double nearest = Distance(candidate, ground);
    for (const Position& p : context) nearest = std::min(nearest, Distance(p, ground));
    sum += grid.weights[i] * ReceivedPower(link, nearest);
  }
  return sum;
}

double UnaryCoverage(const Position& candidate, std::span<const Position> context,
                     const QuadratureGrid& grid, const LinkModelParams& link) {
  return SignalSquash::ForLink(link)(ExpectedMaxSignalDbm(candidate, context, grid, link));
}

double PairwiseCoverage(const Position& a, const Position& b, const LinkModelParams& link) {
  return SignalSquash::ForLink(link)(ReceivedPower(link, Distance(a, b)));
}

PotentialPair MakeCoveragePotentials(const RoiGaussian& roi, int resolution,
                                     const LinkModelParams& link) {
  link.Validate();
  auto grid = std::make_shared<const QuadratureGrid>(BuildGrid(roi, resolution));
  PotentialPair pair;
  pair.unary = [grid, link](const Position& candidate, std::span<const Position> context) {
    return UnaryCoverage(candidate, context, *grid, link);
  };
  pair.pairwise = [link](const Position& a, const Position& b) {
    return PairwiseCoverage(a, b, link);
  };
  return pair;
}

}  // namespace swarmgame
