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

// Online learning of a state-vector timed automaton.
//
// Every distinct state vector is one state. Each ingested event moves the
// session from the current state to the state reached by applying the event;
// missing states and transitions are created, and the transition's timing
// interval is widened to include the time spent in the source state. No
// state merging takes place.

#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>

#include "takg/timed_automaton.hpp"

namespace takg {

/// Smallest window used when the convergence window is derived automatically.
inline constexpr std::uint64_t kMinAutoConvergenceWindow = 50;

class LearnerSession {
 public:
  /// `convergence_window` of nullopt selects the automatic window,
  /// max(50, 3 * transitions seen so far).
  LearnerSession(const SignalOrdering& ordering, const StateVector& initial,
                 std::optional<std::uint64_t> convergence_window = std::nullopt)
      : automaton_(ordering, initial), current_(automaton_.initial()), window_(convergence_window) {
    if (window_ && *window_ == 0) {
      throw Error(ErrorCode::InvalidConfig, "convergence window must be positive");
    }
  }

  /// Ingests one event. Throws InconsistentOldValue on corrupted input and
  /// leaves the session unchanged in that case.
  void ingest(const EventRecord& record) {
    if (ingested_ > 0 && record.timestamp <= last_transition_ms_) {
      throw Error(ErrorCode::NonMonotonicTimestamps,
                  "event at " + std::to_string(record.timestamp) + " ms does not follow " +
                      std::to_string(last_transition_ms_) + " ms");
    }
    if (record.timestamp < last_transition_ms_) {
      throw Error(ErrorCode::NonMonotonicTimestamps, "event before log start");
    }
    const Millis duration = record.timestamp - last_transition_ms_;
    StateVector next = apply_event(automaton_.signal_ordering(), automaton_.vector(current_),
                                   record.event);

    bool structure_changed = false;
    StateId target;
    if (auto existing = automaton_.find_state(next)) {
      target = *existing;
    } else {
      target = automaton_.add_state(std::move(next));
      structure_changed = true;
    }

    if (auto t = automaton_.find_transition(current_, record.event)) {
      automaton_.transition(*t).timing.widen(duration);
    } else {
      automaton_.add_transition(
          Transition{current_, record.event, target, TimingInterval::first(duration)});
      structure_changed = true;
    }

    current_ = target;
    last_transition_ms_ = record.timestamp;
    ++ingested_;
    events_since_change_ = structure_changed ? 0 : events_since_change_ + 1;
  }

  void ingest(std::span<const EventRecord> log) {
    for (const auto& r : log) ingest(r);
  }

  std::uint64_t convergence_window() const noexcept {
    if (window_) return *window_;
    return std::max<std::uint64_t>(kMinAutoConvergenceWindow, 3 * automaton_.transition_count());
  }

  bool has_converged() const noexcept { return events_since_change_ >= convergence_window(); }

  const TimedAutomaton& automaton() const noexcept { return automaton_; }
  StateId current() const noexcept { return current_; }
  Millis last_transition_ms() const noexcept { return last_transition_ms_; }
  std::uint64_t events_since_last_change() const noexcept { return events_since_change_; }
  std::uint64_t events_ingested() const noexcept { return ingested_; }
  bool automatic_window() const noexcept { return !window_.has_value(); }

  /// Validates the automaton invariants and returns it. A failure here is a
  /// learner bug, not a data problem.
  TimedAutomaton finalize() const {
    automaton_.validate();
    return automaton_;
  }

 private:
  TimedAutomaton automaton_;
  StateId current_;
  Millis last_transition_ms_ = 0;
  std::optional<std::uint64_t> window_;
  std::uint64_t events_since_change_ = 0;
  std::uint64_t ingested_ = 0;
};

/// Learns an automaton from a complete log.
inline TimedAutomaton learn_automaton(const SignalOrdering& ordering, const StateVector& initial,
                                      std::span<const EventRecord> log,
                                      std::optional<std::uint64_t> window = std::nullopt) {
  LearnerSession session(ordering, initial, window);
  session.ingest(log);
  return session.finalize();
}

}  // namespace takg
