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

#ifndef SWARMGAME_STATS_H_
#define SWARMGAME_STATS_H_

#include <span>
#include <vector>

namespace swarmgame {

// 1-based ranks; tied values share the mean of their positions.
std::vector<double> AverageRanks(std::span<const double> values);

// NaN when either series is constant.
double PearsonCorrelation(std::span<const double> a, std::span<const double> b);
double SpearmanCorrelation(std::span<const double> a, std::span<const double> b);

}  // namespace swarmgame

#endif  // SWARMGAME_STATS_H_
