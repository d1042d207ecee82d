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

#include "swarmgame/scenario_io.h"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <system_error>

namespace swarmgame {

using nlohmann::json;

namespace {

std::string Join(const std::string& prefix, const std::string& key) {
  return prefix.empty() ? key : prefix + "." + key;
}

// Thin cursor over one JSON object that remembers its dotted path.
class Section {
 public:
  Section(const json& node, std::string path, std::initializer_list<const char*> allowed)
      : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_, "expected an object");
    for (const auto& [key, value] : node_.items()) {
      bool known = false;
      for (const char* a : allowed) known = known || key == a;
      if (!known) throw ConfigError(Join(path_, key), "unknown field");
    }
  }

  bool Has(const char* key) const { return node_.contains(key); }
  std::string Path(const char* key) const { return Join(path_, key); }
  const json& At(const char* key) const {
    if (!Has(key)) throw ConfigError(Path(key), "missing required field");
    return node_.at(key);
  }

  double Number(const char* key) const {
    const json& v = At(key);
    if (!v.is_number()) throw ConfigError(Path(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(Path(key), "expected a finite number");
    return d;
  }
  double Number(const char* key, double fallback) const {
    return Has(key) ? Number(key) : fallback;
  }
  long long Integer(const char* key) const {
    const json& v = At(key);
    if (!v.is_number_integer()) throw ConfigError(Path(key), "expected an integer");
    return v.get<long long>();
  }
  long long Integer(const char* key, long long fallback) const {
    return Has(key) ? Integer(key) : fallback;
  }
  bool Bool(const char* key, bool fallback) const {
    if (!Has(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_boolean()) throw ConfigError(Path(key), "expected true or false");
    return v.get<bool>();
  }
  std::string String(const char* key, const std::string& fallback) const {
    if (!Has(key)) return fallback;
    const json& v = node_.at(key);
    if (!v.is_string()) throw ConfigError(Path(key), "expected a string");
    return v.get<std::string>();
  }
  Section Child(const char* key, std::initializer_list<const char*> allowed) const {
    static const json kEmpty = json::object();
    return Section(Has(key) ? node_.at(key) : kEmpty, Path(key), allowed);
  }

 private:
  const json& node_;
  std::string path_;
};

std::vector<double> NumberArray(const json& v, const std::string& path, std::size_t size) {
  if (!v.is_array() || v.size() != size) {
    throw ConfigError(path, "expected an array of " + std::to_string(size) + " numbers");
  }
  std::vector<double> out;
  for (std::size_t i = 0; i < size; ++i) {
    if (!v[i].is_number() || !std::isfinite(v[i].get<double>())) {
      throw ConfigError(path + "[" + std::to_string(i) + "]", "expected a finite number");
    }
    out.push_back(v[i].get<double>());
  }
  return out;
}

Position ToPosition(const json& v, const std::string& path) {
  const auto xyz = NumberArray(v, path, 3);
  return {xyz[0], xyz[1], xyz[2]};
}

int CheckedInt(long long v, const std::string& path, long long lo) {
  if (v < lo || v > std::numeric_limits<int>::max()) {
    throw ConfigError(path, "must be an integer >= " + std::to_string(lo));
  }
  return static_cast<int>(v);
}

}  // namespace

ScenarioConfig ParseScenario(const json& doc, const ScenarioOverrides& overrides) {
  const Section root(doc, "", {"agents", "link", "game", "roi", "solver", "sim"});
  ScenarioConfig config;

  const Section link = root.Child("link", {"tx_power_dbm", "ref_loss_db", "path_loss_exponent",
                                           "rx_sensitivity_dbm", "ref_distance_m"});
  config.link.tx_power_dbm = link.Number("tx_power_dbm");
  config.link.ref_loss_db = link.Number("ref_loss_db");
  config.link.path_loss_exponent = link.Number("path_loss_exponent");
  config.link.rx_sensitivity_dbm = link.Number("rx_sensitivity_dbm", config.link.rx_sensitivity_dbm);
  config.link.ref_distance_m = link.Number("ref_distance_m", config.link.ref_distance_m);
  try {
    config.link.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("link", e.what());
  }

  const Section game = root.Child("game", {"h", "alpha_a", "alpha_b", "action_step_m",
                                           "action_dims", "virtual_neighbors"});
  config.h = CheckedInt(game.Integer("h"), game.Path("h"), 1);
  config.weights.alpha_a = game.Number("alpha_a", config.weights.alpha_a);
  config.weights.alpha_b = game.Number("alpha_b", config.weights.alpha_b);
  config.actions.step_m = game.Number("action_step_m", config.actions.step_m);
  config.actions.dims = CheckedInt(game.Integer("action_dims", config.actions.dims),
                                   game.Path("action_dims"), 2);
  config.virtual_neighbors = game.Bool("virtual_neighbors", config.virtual_neighbors);
  if (config.actions.dims > 3) throw ConfigError(game.Path("action_dims"), "must be 2 or 3");
  if (!(config.actions.step_m > 0.0)) throw ConfigError(game.Path("action_step_m"), "must be > 0");
  try {
    config.weights.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("game", e.what());
  }

  const Section roi = root.Child("roi", {"mean", "covariance", "confidence", "resolution"});
  if (roi.Has("mean")) {
    const auto m = NumberArray(roi.At("mean"), roi.Path("mean"), 2);
    config.roi.mean = {m[0], m[1]};
  }
  if (roi.Has("covariance")) {
    const json& c = roi.At("covariance");
    if (!c.is_array() || c.size() != 2) throw ConfigError(roi.Path("covariance"), "expected a 2x2 array");
    for (std::size_t r = 0; r < 2; ++r) {
      const auto row = NumberArray(c[r], roi.Path("covariance") + "[" + std::to_string(r) + "]", 2);
      config.roi.covariance[r] = {row[0], row[1]};
    }
  }
  config.roi.confidence = roi.Number("confidence", config.roi.confidence);
  config.roi_resolution = CheckedInt(roi.Integer("resolution", config.roi_resolution),
                                     roi.Path("resolution"), 2);
  try {
    config.roi.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("roi", e.what());
  }

  const Section solver = root.Child("solver", {"delta", "max_sweeps", "update_order", "seed"});
  config.solver.delta = solver.Number("delta", config.solver.delta);
  config.solver.max_sweeps = CheckedInt(solver.Integer("max_sweeps", config.solver.max_sweeps),
                                        solver.Path("max_sweeps"), 1);
  const std::string order = solver.String("update_order", "round_robin");
  if (order == "round_robin") {
    config.solver.update_order = UpdateOrder::kRoundRobin;
  } else if (order == "seeded_random") {
    config.solver.update_order = UpdateOrder::kSeededRandom;
  } else {
    throw ConfigError(solver.Path("update_order"), "expected round_robin or seeded_random");
  }
  config.solver.seed = static_cast<std::uint64_t>(
      CheckedInt(solver.Integer("seed", 0), solver.Path("seed"), 0));
  if (!(config.solver.delta > 0.0 && config.solver.delta < 1.0)) {
    throw ConfigError(solver.Path("delta"), "must lie in (0, 1)");
  }

  const Section sim = root.Child("sim", {"steps", "seed", "threads"});
  config.steps = CheckedInt(sim.Integer("steps"), sim.Path("steps"), 1);
  config.seed = static_cast<std::uint64_t>(CheckedInt(sim.Integer("seed", 0), sim.Path("seed"), 0));
  config.threads = CheckedInt(sim.Integer("threads", 1), sim.Path("threads"), 1);

  if (overrides.steps) config.steps = *overrides.steps;
  if (overrides.seed) config.seed = *overrides.seed;
  if (overrides.h) config.h = *overrides.h;
  if (overrides.virtual_neighbors) config.virtual_neighbors = *overrides.virtual_neighbors;
  if (overrides.threads) config.threads = *overrides.threads;

  const json& agents = root.At("agents");
  if (agents.is_array()) {
    if (agents.empty()) throw ConfigError("agents", "needs at least one agent");
    if (overrides.agent_count) {
      throw ConfigError("agents", "agent count override needs a spawn block, not an explicit list");
    }
    for (std::size_t i = 0; i < agents.size(); ++i) {
      const std::string path = "agents[" + std::to_string(i) + "]";
      const Section a(agents[i], path, {"id", "position"});
      RobotState state;
      state.id = CheckedInt(a.Integer("id"), a.Path("id"), 0);
      state.position = ToPosition(a.At("position"), a.Path("position"));
      for (const auto& prev : config.agents) {
        if (prev.id == state.id) throw ConfigError(a.Path("id"), "duplicate agent id");
      }
      config.agents.push_back(state);
    }
  } else {
    const Section spawn(agents, "agents", {"count", "spawn_center", "spawn_half_width_m"});
    int count = CheckedInt(spawn.Integer("count"), spawn.Path("count"), 1);
    if (overrides.agent_count) count = *overrides.agent_count;
    const Position center = ToPosition(spawn.At("spawn_center"), spawn.Path("spawn_center"));
    const double half_width = spawn.Number("spawn_half_width_m", 60.0);
    if (half_width < 0.0) throw ConfigError(spawn.Path("spawn_half_width_m"), "must be >= 0");
    config.agents = SpawnAgents(count, center, half_width, config.seed);
  }

  try {
    config.Validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("", e.what());
  }
  return config;
}

ScenarioConfig LoadScenarioFile(const std::filesystem::path& path,
                                const ScenarioOverrides& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("", "cannot open scenario file " + path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("scenario file is not valid JSON: ") + e.what());
  }
  return ParseScenario(doc, overrides);
}

json ScenarioToJson(const ScenarioConfig& config) {
  json agents = json::array();
  for (const auto& a : config.agents) {
    agents.push_back({{"id", a.id}, {"position", {a.position.x, a.position.y, a.position.z}}});
  }
  const auto& c = config.roi.covariance;
  return {
      {"agents", agents},
      {"link",
       {{"tx_power_dbm", config.link.tx_power_dbm},
        {"ref_loss_db", config.link.ref_loss_db},
        {"path_loss_exponent", config.link.path_loss_exponent},
        {"rx_sensitivity_dbm", config.link.rx_sensitivity_dbm},
        {"ref_distance_m", config.link.ref_distance_m}}},
      {"game",
       {{"h", config.h},
        {"alpha_a", config.weights.alpha_a},
        {"alpha_b", config.weights.alpha_b},
        {"action_step_m", config.actions.step_m},
        {"action_dims", config.actions.dims},
        {"virtual_neighbors", config.virtual_neighbors}}},
      {"roi",
       {{"mean", {config.roi.mean[0], config.roi.mean[1]}},
        {"covariance", {{c[0][0], c[0][1]}, {c[1][0], c[1][1]}}},
        {"confidence", config.roi.confidence},
        {"resolution", config.roi_resolution}}},
      {"solver",
       {{"delta", config.solver.delta},
        {"max_sweeps", config.solver.max_sweeps},
        {"update_order", config.solver.update_order == UpdateOrder::kRoundRobin
                             ? "round_robin"
                             : "seeded_random"},
        {"seed", config.solver.seed}}},
      {"sim", {{"steps", config.steps}, {"seed", config.seed}, {"threads", config.threads}}},
  };
}

std::string ConfigHash(const json& resolved) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char ch : resolved.dump()) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string FormatNumber(double value) {
  if (std::isnan(value)) return "nan";
  if (value == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

std::string TraceCsv(std::span<const StepRecord> records, bool include_timing) {
  std::ostringstream out;
  out << kTraceHeader << '\n';
  const auto consensus = records.empty() ? std::vector<double>{} : ConsensusMetric(records);
  for (std::size_t s = 0; s < records.size(); ++s) {
    const StepRecord& rec = records[s];
    for (const auto& a : rec.agents) {
      out << rec.step << ',' << a.id << ',' << FormatNumber(a.position.x) << ','
          << FormatNumber(a.position.y) << ',' << FormatNumber(a.position.z) << ','
          << a.action_index << ',' << FormatNumber(a.payoff) << ','
          << FormatNumber(rec.swarm_mean_payoff) << ',' << a.solver_sweeps << ','
          << FormatNumber(include_timing ? a.solve_time_s : 0.0) << ','
          << FormatNumber(consensus[s]) << '\n';
    }
  }
  return out.str();
}

std::string StatsCsv(std::span<const SweepRecord> records) {
  std::ostringstream out;
  out << kStatsHeader << '\n';
  for (const auto& r : records) {
    out << FormatNumber(r.spacing_m) << ',' << FormatNumber(r.avg_direct_neighbors) << ','
        << FormatNumber(r.avg_hop_count) << ',' << FormatNumber(r.reachable_pair_fraction)
        << '\n';
  }
  return out.str();
}

void WriteFileAtomic(const std::filesystem::path& path, const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << contents;
    out.flush();
    if (!out) throw std::runtime_error("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot move " + tmp.string() + " into place: " + ec.message());
  }
}

}  // namespace swarmgame
