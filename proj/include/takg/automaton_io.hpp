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

// Automaton file format. Keys are sorted (nlohmann::json uses std::map), so
// equal automata serialize to byte-identical documents:
//
//   {
//     "initial": 0,
//     "learner": {...},                     // optional metadata
//     "signal_ordering": ["V201", ...],
//     "states": {"0": [0, ...], "1": [...]},
//     "transitions": [{"changes": {"V201": 1}, "count": 3, "max_ms": 31000,
//                      "min_ms": 28000, "source": 0, "target": 1}, ...]
//   }
//
// Transitions are listed in discovery order.

#pragma once

#include <istream>
#include <ostream>
#include <string>

#include "json.hpp"
#include "takg/event_io.hpp"
#include "takg/otala.hpp"

namespace takg {

struct LearnerMetadata {
  std::uint64_t convergence_window = 0;
  bool automatic_window = true;
  bool converged = false;
  std::uint64_t events_ingested = 0;
  std::uint64_t events_since_last_change = 0;
  Millis cycle_ms = kDefaultCycleMs;
};

inline LearnerMetadata learner_metadata(const LearnerSession& s, Millis cycle_ms) {
  return LearnerMetadata{s.convergence_window(), s.automatic_window(), s.has_converged(),
                         s.events_ingested(), s.events_since_last_change(), cycle_ms};
}

inline nlohmann::json automaton_to_json(const TimedAutomaton& a,
                                        const std::optional<LearnerMetadata>& meta = std::nullopt) {
  nlohmann::json j;
  j["initial"] = a.initial().index;
  nlohmann::json ordering = nlohmann::json::array();
  for (const auto& s : a.signal_ordering().signals()) ordering.push_back(s.name);
  j["signal_ordering"] = std::move(ordering);
  nlohmann::json states = nlohmann::json::object();
  for (std::size_t i = 0; i < a.state_count(); ++i) states[std::to_string(i)] = a.states()[i].values;
  j["states"] = std::move(states);
  nlohmann::json transitions = nlohmann::json::array();
  for (const auto& t : a.transitions()) {
    nlohmann::json changes = nlohmann::json::object();
    for (const auto& c : t.event.changes()) changes[c.signal.name] = c.to;
    transitions.push_back({{"source", t.source.index},
                           {"target", t.target.index},
                           {"changes", std::move(changes)},
                           {"min_ms", t.timing.min_ms},
                           {"max_ms", t.timing.max_ms},
                           {"count", t.timing.observation_count}});
  }
  j["transitions"] = std::move(transitions);
  if (meta) {
    j["learner"] = {{"convergence_window", meta->convergence_window},
                    {"automatic_window", meta->automatic_window},
                    {"converged", meta->converged},
                    {"events_ingested", meta->events_ingested},
                    {"events_since_last_change", meta->events_since_last_change},
                    {"cycle_ms", meta->cycle_ms}};
  }
  return j;
}

inline void write_automaton_json(std::ostream& os, const TimedAutomaton& a,
                                 const std::optional<LearnerMetadata>& meta = std::nullopt) {
  os << automaton_to_json(a, meta).dump(2) << '\n';
}

inline TimedAutomaton automaton_from_json(const nlohmann::json& j) {
  try {
    const auto ordering =
        SignalOrdering::from_names(j.at("signal_ordering").get<std::vector<std::string>>());
    const auto& states = j.at("states");
    const auto initial = j.at("initial").get<std::uint32_t>();
    const std::size_t n = states.size();
    auto vector_of = [&](std::uint32_t id) {
      const auto key = std::to_string(id);
      if (!states.contains(key)) {
        throw Error(ErrorCode::InvalidFormat, "state " + key + " is not defined");
      }
      return StateVector(states.at(key).get<std::vector<SignalValue>>());
    };

    TimedAutomaton a(ordering, vector_of(initial));
    if (initial != 0) {
      throw Error(ErrorCode::InvalidFormat, "initial state must have id 0");
    }
    for (std::uint32_t id = 1; id < n; ++id) {
      if (a.add_state(vector_of(id)).index != id) {
        throw Error(ErrorCode::InvalidFormat, "state " + std::to_string(id) + " repeats a vector");
      }
    }
    for (const auto& jt : j.at("transitions")) {
      const StateId source{jt.at("source").get<std::uint32_t>()};
      const StateId target{jt.at("target").get<std::uint32_t>()};
      if (!a.has_state(source) || !a.has_state(target)) {
        throw Error(ErrorCode::InvalidFormat, "transition endpoint outside the state set");
      }
      Event e = event_from_changes(jt.at("changes"), ordering, a.vector(source));
      TimingInterval timing{jt.at("min_ms").get<Millis>(), jt.at("max_ms").get<Millis>(),
                            jt.at("count").get<std::uint64_t>()};
      a.add_transition(Transition{source, std::move(e), target, timing});
    }
    a.validate();
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidFormat, std::string("automaton file: ") + e.what());
  }
}

inline TimedAutomaton read_automaton_json(std::istream& is) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidFormat, std::string("automaton file: ") + e.what());
  }
  return automaton_from_json(j);
}

}  // namespace takg
