// Copyright 2026 The takg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Discrete-event surrogate of the five-tank mixing plant.
//
// Only the nine actuators that feed the state vector are simulated. The plant
// starts all-off, idles for `initial_ms` and then cycles through six
// production phases, each with a fixed actuator pattern and a duration drawn
// uniformly on the sample grid from [min_ms, max_ms]. Faults change phase
// durations only, never the phase sequence.
//
// At every phase boundary the plant writes a full actuator snapshot, so the
// sample log restates unchanged actuators and relies on coalescing to drop
// them. After the last cycle the log closes with the snapshot that starts
// the next cycle, so every simulated phase has an observable end.
//
// Nominal phase durations are surrogate values. Only the fluid-transfer
// phase (pump P201 on, valve V204 open) is anchored: its jitter range tops
// out at 121.8 s, and the reference clogging fault adds 5.2 s to it.

#pragma once

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "takg/event_model.hpp"

namespace takg::fivetank {

struct PhaseSpec {
  std::string name;
  /// One value per actuator, aligned with PlantConfig::actuators.
  std::vector<SignalValue> pattern;
  Millis min_ms = 0;
  Millis max_ms = 0;

  friend bool operator==(const PhaseSpec&, const PhaseSpec&) = default;
};

struct PlantConfig {
  std::vector<SignalId> actuators;
  Millis initial_ms = 5000;
  std::vector<PhaseSpec> phases;
  Millis sample_period_ms = 100;
  std::uint32_t cycles = 0;
  std::uint64_t seed = 0;

  SignalOrdering ordering() const { return SignalOrdering(actuators); }
  StateVector initial_vector() const { return StateVector::zeros(actuators.size()); }

  friend bool operator==(const PlantConfig&, const PlantConfig&) = default;
};

inline constexpr std::size_t kPhaseCount = 6;

enum class FaultKind { Clogging, Leakage };

inline std::string to_string(FaultKind k) { return k == FaultKind::Clogging ? "clogging" : "leakage"; }

struct FaultSpec {
  FaultKind kind = FaultKind::Clogging;
  std::size_t phase_index = 0;
  std::uint32_t onset_cycle = 0;
  /// Clogging: added duration. Leakage: removed duration.
  Millis amount_ms = 0;
  std::uint32_t duration_cycles = 1;

  bool active(std::uint32_t cycle, std::size_t phase) const noexcept {
    return phase == phase_index && cycle >= onset_cycle && cycle < onset_cycle + duration_cycles;
  }

  friend bool operator==(const FaultSpec&, const FaultSpec&) = default;
};

struct PhaseRecord {
  std::uint32_t cycle = 0;
  std::size_t phase = 0;
  Millis start_ms = 0;
  Millis nominal_ms = 0;
  Millis actual_ms = 0;
  std::optional<FaultKind> fault;
};

struct GroundTruth {
  Millis initial_ms = 0;
  std::vector<PhaseRecord> phases;
  Millis end_ms = 0;
};

struct Simulation {
  std::vector<RawSample> samples;
  GroundTruth truth;
};

// Acceptance seed: under it the fluid-transfer phase of cycle 21 draws the
// top of its range (121.8 s), which the reference clogging fault extends.
inline constexpr std::uint64_t kDefaultSeed = 2024;
inline constexpr std::uint32_t kReferenceFaultCycle = 21;
inline constexpr std::uint32_t kDefaultCycles = 54;

/// Reference plant: V201..V208 and P201, about five hours of production.
inline PlantConfig default_config() {
  PlantConfig c;
  for (const char* id : {"V201", "V202", "V203", "V204", "V205", "V206", "V207", "V208", "P201"}) {
    c.actuators.emplace_back(id);
  }
  //             V201 V202 V203 V204 V205 V206 V207 V208 P201
  c.phases = {
      {"drain_inputs", {0, 0, 0, 0, 0, 1, 1, 1, 0}, 58000, 62000},
      {"transfer_to_B204", {0, 0, 0, 1, 0, 0, 0, 0, 1}, 118600, 121800},
      {"discharge_B204", {0, 0, 0, 0, 1, 0, 0, 0, 0}, 43000, 47000},
      {"fill_B201", {1, 0, 0, 0, 0, 0, 0, 0, 0}, 28000, 32000},
      {"fill_B202", {0, 1, 0, 0, 0, 0, 0, 0, 0}, 28000, 32000},
      {"fill_B203", {0, 0, 1, 0, 0, 0, 0, 0, 0}, 28000, 32000},
  };
  c.initial_ms = 5000;
  c.sample_period_ms = 100;
  c.cycles = kDefaultCycles;
  c.seed = kDefaultSeed;
  return c;
}

/// Clogged pipe towards P201: the transfer phase of one cycle takes 5.2 s longer.
inline FaultSpec reference_clogging() {
  return FaultSpec{FaultKind::Clogging, 1, kReferenceFaultCycle, 5200, 1};
}

inline void validate(const PlantConfig& c) {
  auto fail = [](const std::string& m) { throw Error(ErrorCode::InvalidConfig, m); };
  if (c.actuators.empty()) fail("no actuators");
  (void)c.ordering();
  if (c.sample_period_ms <= 0) fail("sample period must be positive");
  if (c.initial_ms < c.sample_period_ms) fail("initial phase shorter than one sample period");
  if (c.phases.size() != kPhaseCount) fail("exactly 6 production phases are required");
  const StateVector initial = c.initial_vector();
  for (std::size_t i = 0; i < c.phases.size(); ++i) {
    const auto& p = c.phases[i];
    if (p.pattern.size() != c.actuators.size()) fail("phase " + p.name + ": pattern length");
    if (p.min_ms < c.sample_period_ms) fail("phase " + p.name + ": shorter than one sample period");
    if (p.min_ms > p.max_ms) fail("phase " + p.name + ": empty jitter range");
    if (StateVector(p.pattern) == initial) fail("phase " + p.name + ": repeats the initial pattern");
    for (std::size_t j = 0; j < i; ++j) {
      if (c.phases[j].pattern == p.pattern) fail("phase " + p.name + ": repeats another pattern");
    }
  }
}

inline void validate(const PlantConfig& c, const std::vector<FaultSpec>& faults) {
  validate(c);
  for (const auto& f : faults) {
    if (f.phase_index >= kPhaseCount) {
      throw Error(ErrorCode::InvalidFaultPhase,
                  "fault phase " + std::to_string(f.phase_index) + " outside 0..5");
    }
    if (f.amount_ms <= 0) throw Error(ErrorCode::InvalidConfig, "fault amount must be positive");
    if (f.duration_cycles == 0) throw Error(ErrorCode::InvalidConfig, "fault lasts zero cycles");
  }
}

inline Simulation simulate(const PlantConfig& config, const std::vector<FaultSpec>& faults = {}) {
  validate(config, faults);
  Simulation sim;
  auto snapshot = [&](Millis t, const std::vector<SignalValue>& pattern) {
    for (std::size_t i = 0; i < config.actuators.size(); ++i) {
      sim.samples.push_back(RawSample{t, config.actuators[i], pattern[i]});
    }
  };

  snapshot(0, config.initial_vector().values);
  sim.truth.initial_ms = config.initial_ms;
  if (config.cycles == 0) return sim;

  // The raw 64-bit stream of mt19937_64 is fully specified, unlike the
  // standard distributions, so draws are reproducible across toolchains.
  std::mt19937_64 rng(config.seed);
  Millis t = config.initial_ms;
  for (std::uint32_t cycle = 0; cycle < config.cycles; ++cycle) {
    for (std::size_t i = 0; i < config.phases.size(); ++i) {
      const auto& phase = config.phases[i];
      const auto steps = static_cast<std::uint64_t>((phase.max_ms - phase.min_ms) /
                                                    config.sample_period_ms);
      const Millis nominal =
          phase.min_ms + static_cast<Millis>(rng() % (steps + 1)) * config.sample_period_ms;
      Millis actual = nominal;
      std::optional<FaultKind> applied;
      for (const auto& f : faults) {
        if (!f.active(cycle, i)) continue;
        actual += f.kind == FaultKind::Clogging ? f.amount_ms : -f.amount_ms;
        applied = f.kind;
      }
      if (actual < config.sample_period_ms) {
        throw Error(ErrorCode::InvalidConfig, "fault shortens phase " + phase.name +
                                                  " below one sample period");
      }
      snapshot(t, phase.pattern);
      sim.truth.phases.push_back(PhaseRecord{cycle, i, t, nominal, actual, applied});
      t += actual;
    }
  }
  snapshot(t, config.phases.front().pattern);
  sim.truth.end_ms = t;
  return sim;
}

// --- JSON ------------------------------------------------------------------

inline nlohmann::ordered_json config_to_json(const PlantConfig& c) {
  nlohmann::ordered_json j;
  auto actuators = nlohmann::ordered_json::array();
  for (const auto& a : c.actuators) actuators.push_back(a.name);
  j["actuators"] = std::move(actuators);
  j["initial_ms"] = c.initial_ms;
  auto phases = nlohmann::ordered_json::array();
  for (const auto& p : c.phases) {
    nlohmann::ordered_json jp;
    jp["name"] = p.name;
    auto pattern = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < c.actuators.size(); ++i) {
      if (p.pattern[i] != 0) pattern[c.actuators[i].name] = p.pattern[i];
    }
    jp["pattern"] = std::move(pattern);
    jp["min_ms"] = p.min_ms;
    jp["max_ms"] = p.max_ms;
    phases.push_back(std::move(jp));
  }
  j["phases"] = std::move(phases);
  j["sample_period_ms"] = c.sample_period_ms;
  j["cycles"] = c.cycles;
  j["seed"] = c.seed;
  return j;
}

/// Parses a config; absent fields keep the default_config() values. Phase
/// patterns list the non-zero actuators only.
namespace detail {

// nlohmann converts -1 to a huge unsigned value; reject it instead.
template <typename U>
U unsigned_field(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_unsigned() || v.get<std::uint64_t>() > std::numeric_limits<U>::max()) {
    throw Error(ErrorCode::InvalidConfig, std::string("'") + key + "' must be a non-negative integer");
  }
  return v.get<U>();
}

}  // namespace detail

inline PlantConfig config_from_json(const nlohmann::json& j) {
  PlantConfig c = default_config();
  try {
    if (j.contains("actuators")) {
      c.actuators.clear();
      for (const auto& a : j.at("actuators")) c.actuators.emplace_back(a.get<std::string>());
    }
    const auto ordering = c.ordering();
    if (j.contains("initial_ms")) c.initial_ms = j.at("initial_ms").get<Millis>();
    if (j.contains("phases")) {
      c.phases.clear();
      for (const auto& jp : j.at("phases")) {
        PhaseSpec p;
        p.name = jp.value("name", "phase" + std::to_string(c.phases.size() + 1));
        p.pattern.assign(c.actuators.size(), 0);
        for (auto it = jp.at("pattern").begin(); it != jp.at("pattern").end(); ++it) {
          p.pattern[ordering.index_of(it.key())] = it.value().get<SignalValue>();
        }
        p.min_ms = jp.at("min_ms").get<Millis>();
        p.max_ms = jp.at("max_ms").get<Millis>();
        c.phases.push_back(std::move(p));
      }
    }
    if (j.contains("sample_period_ms")) c.sample_period_ms = j.at("sample_period_ms").get<Millis>();
    if (j.contains("cycles")) c.cycles = detail::unsigned_field<std::uint32_t>(j, "cycles");
    if (j.contains("seed")) c.seed = detail::unsigned_field<std::uint64_t>(j, "seed");
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidConfig, e.what());
  }
  validate(c);
  return c;
}

inline nlohmann::ordered_json truth_to_json(const PlantConfig& c, const GroundTruth& t) {
  nlohmann::ordered_json j;
  j["initial_ms"] = t.initial_ms;
  j["end_ms"] = t.end_ms;
  auto phases = nlohmann::ordered_json::array();
  for (const auto& p : t.phases) {
    nlohmann::ordered_json jp;
    jp["cycle"] = p.cycle;
    jp["phase"] = p.phase;
    jp["name"] = c.phases.at(p.phase).name;
    jp["start_ms"] = p.start_ms;
    jp["nominal_ms"] = p.nominal_ms;
    jp["actual_ms"] = p.actual_ms;
    jp["fault"] = p.fault ? nlohmann::ordered_json(to_string(*p.fault)) : nlohmann::ordered_json();
    phases.push_back(std::move(jp));
  }
  j["phases"] = std::move(phases);
  return j;
}

inline GroundTruth truth_from_json(const nlohmann::json& j) {
  GroundTruth t;
  try {
    t.initial_ms = j.at("initial_ms").get<Millis>();
    t.end_ms = j.at("end_ms").get<Millis>();
    for (const auto& jp : j.at("phases")) {
      PhaseRecord p;
      p.cycle = jp.at("cycle").get<std::uint32_t>();
      p.phase = jp.at("phase").get<std::size_t>();
      p.start_ms = jp.at("start_ms").get<Millis>();
      p.nominal_ms = jp.at("nominal_ms").get<Millis>();
      p.actual_ms = jp.at("actual_ms").get<Millis>();
      if (!jp.at("fault").is_null()) {
        p.fault = jp.at("fault").get<std::string>() == "leakage" ? FaultKind::Leakage
                                                                 : FaultKind::Clogging;
      }
      t.phases.push_back(p);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidFormat, std::string("ground truth: ") + e.what());
  }
  return t;
}

/// Parses "kind,phase,onset,amount_ms[,duration_cycles]", e.g. "clogging,1,21,5200,1".
inline FaultSpec parse_fault(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto comma = text.find(',', start);
    parts.push_back(text.substr(start, comma - start));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (parts.size() < 4 || parts.size() > 5) {
    throw Error(ErrorCode::InvalidConfig, "fault '" + text + "': expected kind,phase,onset,amount[,cycles]");
  }
  FaultSpec f;
  if (parts[0] == "clogging") {
    f.kind = FaultKind::Clogging;
  } else if (parts[0] == "leakage") {
    f.kind = FaultKind::Leakage;
  } else {
    throw Error(ErrorCode::InvalidConfig, "unknown fault kind '" + parts[0] + "'");
  }
  try {
    f.phase_index = std::stoul(parts[1]);
    f.onset_cycle = static_cast<std::uint32_t>(std::stoul(parts[2]));
    f.amount_ms = std::stoll(parts[3]);
    f.duration_cycles = parts.size() == 5 ? static_cast<std::uint32_t>(std::stoul(parts[4])) : 1;
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidConfig, "fault '" + text + "': malformed number");
  }
  return f;
}

}  // namespace takg::fivetank
