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

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "takg/event_model.hpp"

namespace takg {

struct StateId {
  std::uint32_t index = 0;

  friend auto operator<=>(const StateId&, const StateId&) = default;
  friend bool operator==(const StateId&, const StateId&) = default;
};

/// Conventional name of a state: q0 is the initial state, q1.. in discovery order.
inline std::string state_name(StateId s) { return "q" + std::to_string(s.index); }

/// Closed interval of source-state dwell times observed for a transition.
struct TimingInterval {
  Millis min_ms = 0;
  Millis max_ms = 0;
  std::uint64_t observation_count = 0;

  static TimingInterval first(Millis d) { return TimingInterval{d, d, 1}; }

  void widen(Millis d) {
    min_ms = std::min(min_ms, d);
    max_ms = std::max(max_ms, d);
    ++observation_count;
  }

  bool contains(Millis d) const noexcept { return min_ms <= d && d <= max_ms; }

  friend bool operator==(const TimingInterval&, const TimingInterval&) = default;
};

struct Transition {
  StateId source;
  Event event;
  StateId target;
  TimingInterval timing;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// Deterministic timed automaton whose states are identified by state vectors.
///
/// The clock is reset on every transition, so a transition's timing bounds the
/// time spent in its source state. Transitions keep discovery order.
class TimedAutomaton {
 public:
  TimedAutomaton() = default;

  TimedAutomaton(SignalOrdering ordering, StateVector initial) : ordering_(std::move(ordering)) {
    if (initial.size() != ordering_.size()) {
      throw Error(ErrorCode::InvalidConfig, "initial vector length does not match signal ordering");
    }
    initial_ = add_state(std::move(initial));
  }

  const SignalOrdering& signal_ordering() const noexcept { return ordering_; }
  StateId initial() const noexcept { return initial_; }
  std::size_t state_count() const noexcept { return states_.size(); }
  std::size_t transition_count() const noexcept { return transitions_.size(); }
  const std::vector<StateVector>& states() const noexcept { return states_; }
  const std::vector<Transition>& transitions() const noexcept { return transitions_; }

  bool has_state(StateId s) const noexcept { return s.index < states_.size(); }

  const StateVector& vector(StateId s) const {
    if (!has_state(s)) throw Error(ErrorCode::UnknownStartState, "no state " + state_name(s));
    return states_[s.index];
  }

  std::optional<StateId> find_state(const StateVector& v) const {
    auto it = by_vector_.find(v);
    if (it == by_vector_.end()) return std::nullopt;
    return it->second;
  }

  /// Index into transitions() of the (source, event) transition.
  std::optional<std::size_t> find_transition(StateId source, const Event& e) const {
    auto it = by_key_.find(Key{source, e});
    if (it == by_key_.end()) return std::nullopt;
    return it->second;
  }

  /// Transition indices leaving `source`, in discovery order.
  std::vector<std::size_t> outgoing(StateId source) const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
      if (transitions_[i].source == source) out.push_back(i);
    }
    return out;
  }

  StateId add_state(StateVector v) {
    if (v.size() != ordering_.size()) {
      throw Error(ErrorCode::InvalidFormat, "state vector length does not match signal ordering");
    }
    if (auto existing = find_state(v)) return *existing;
    const StateId id{static_cast<std::uint32_t>(states_.size())};
    by_vector_.emplace(v, id);
    states_.push_back(std::move(v));
    return id;
  }

  /// Adds a transition; throws NondeterministicTransition if (source, event) exists.
  std::size_t add_transition(Transition t) {
    Key key{t.source, t.event};
    if (by_key_.contains(key)) {
      throw Error(ErrorCode::NondeterministicTransition,
                  "duplicate transition out of " + state_name(t.source));
    }
    by_key_.emplace(std::move(key), transitions_.size());
    transitions_.push_back(std::move(t));
    return transitions_.size() - 1;
  }

  Transition& transition(std::size_t i) { return transitions_.at(i); }
  const Transition& transition(std::size_t i) const { return transitions_.at(i); }

  /// Checks endpoint existence, vector consistency, determinism and reachability.
  void validate() const {
    if (states_.empty()) throw Error(ErrorCode::UnreachableState, "automaton has no states");
    std::map<Key, std::size_t> seen;
    std::vector<std::vector<std::uint32_t>> adjacency(states_.size());
    for (std::size_t i = 0; i < transitions_.size(); ++i) {
      const auto& t = transitions_[i];
      if (!has_state(t.source) || !has_state(t.target)) {
        throw Error(ErrorCode::DanglingReference, "transition endpoint outside the state set");
      }
      if (!seen.emplace(Key{t.source, t.event}, i).second) {
        throw Error(ErrorCode::NondeterministicTransition,
                    "two transitions share source " + state_name(t.source) + " and event");
      }
      if (apply_event(ordering_, states_[t.source.index], t.event) != states_[t.target.index]) {
        throw Error(ErrorCode::InconsistentOldValue,
                    "transition " + state_name(t.source) + " -> " + state_name(t.target) +
                        " does not map source vector onto target vector");
      }
      if (t.timing.min_ms > t.timing.max_ms || t.timing.observation_count == 0) {
        throw Error(ErrorCode::InvalidFormat, "malformed timing interval");
      }
      adjacency[t.source.index].push_back(t.target.index);
    }
    std::vector<bool> reached(states_.size(), false);
    std::queue<std::uint32_t> frontier;
    reached[initial_.index] = true;
    frontier.push(initial_.index);
    while (!frontier.empty()) {
      const auto s = frontier.front();
      frontier.pop();
      for (auto n : adjacency[s]) {
        if (!reached[n]) {
          reached[n] = true;
          frontier.push(n);
        }
      }
    }
    for (std::uint32_t i = 0; i < reached.size(); ++i) {
      if (!reached[i]) {
        throw Error(ErrorCode::UnreachableState, state_name(StateId{i}) + " is unreachable");
      }
    }
  }

  /// Structural equality: same ordering, states, ids, transitions and timings.
  friend bool operator==(const TimedAutomaton& a, const TimedAutomaton& b) {
    return a.ordering_ == b.ordering_ && a.initial_ == b.initial_ && a.states_ == b.states_ &&
           a.transitions_ == b.transitions_;
  }

 private:
  struct Key {
    StateId source;
    Event event;
    friend auto operator<=>(const Key& a, const Key& b) {
      if (auto c = a.source <=> b.source; c != 0) return c;
      return a.event <=> b.event;
    }
  };

  SignalOrdering ordering_;
  StateId initial_{};
  std::vector<StateVector> states_;
  std::vector<Transition> transitions_;
  std::unordered_map<StateVector, StateId, StateVectorHash> by_vector_;
  std::map<Key, std::size_t> by_key_;
};

}  // namespace takg
