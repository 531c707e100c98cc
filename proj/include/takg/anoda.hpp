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

// Replays an event stream through a learned timed automaton and classifies
// every observation as allowed, wrong timing or unknown event.
//
// Policy after an anomaly:
//  * WrongTiming: the event is structurally legal, so the detector follows
//    the matched transition and keeps monitoring.
//  * UnknownEvent: Halt stops the detector; VectorResync applies the event
//    to the current state vector and jumps to the state with that vector,
//    halting only when no such state exists.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "takg/timed_automaton.hpp"

namespace takg {

enum class ResyncPolicy { Halt, VectorResync };
enum class AnomalyKind { WrongTiming, UnknownEvent };
enum class ViolatedBound { BelowMin, AboveMax };
enum class DetectorStatus { Running, Halted };

inline std::string to_string(AnomalyKind k) {
  return k == AnomalyKind::WrongTiming ? "WrongTiming" : "UnknownEvent";
}
inline std::string to_string(ViolatedBound b) {
  return b == ViolatedBound::BelowMin ? "BelowMin" : "AboveMax";
}
inline std::string to_string(ResyncPolicy p) {
  return p == ResyncPolicy::Halt ? "halt" : "resync";
}
inline std::string to_string(DetectorStatus s) {
  return s == DetectorStatus::Running ? "Running" : "Halted";
}

struct ExpectedEvent {
  Event event;
  TimingInterval timing;

  friend bool operator==(const ExpectedEvent&, const ExpectedEvent&) = default;
};

struct AnomalyReport {
  AnomalyKind kind = AnomalyKind::WrongTiming;
  Millis at = 0;
  StateId source_state;
  Event observed_event;
  /// Time spent in source_state before the event.
  Millis observed_duration_ms = 0;
  // WrongTiming only.
  std::optional<ViolatedBound> violated_bound;
  std::optional<TimingInterval> reference;
  Millis deviation_ms = 0;
  // UnknownEvent only: every transition leaving source_state.
  std::vector<ExpectedEvent> expected_events;
  /// Where the detector went after the anomaly; nullopt when it halted.
  std::optional<StateId> continued_at;

  friend bool operator==(const AnomalyReport&, const AnomalyReport&) = default;
};

struct StepOutcome {
  std::optional<AnomalyReport> anomaly;
  /// Next state, or nullopt when the detector halted.
  std::optional<StateId> next;

  bool advanced() const noexcept { return !anomaly && next.has_value(); }
};

class Detector {
 public:
  /// Positions the detector at `start_state`; the clock starts at `entered_at`.
  Detector(const TimedAutomaton& automaton, StateId start_state,
           ResyncPolicy policy = ResyncPolicy::VectorResync, Millis entered_at = 0)
      : automaton_(&automaton), current_(start_state), entered_at_(entered_at), policy_(policy) {
    if (!automaton.has_state(start_state)) {
      throw Error(ErrorCode::UnknownStartState,
                  state_name(start_state) + " is not a state of the automaton");
    }
  }

  StepOutcome step(const EventRecord& record) {
    if (status_ == DetectorStatus::Halted) {
      throw Error(ErrorCode::DetectorHalted, "detector halted; no further observations accepted");
    }
    if (record.timestamp < entered_at_) {
      throw Error(ErrorCode::NonMonotonicTimestamps,
                  "observation at " + std::to_string(record.timestamp) +
                      " ms precedes state entry at " + std::to_string(entered_at_) + " ms");
    }
    const Millis d = record.timestamp - entered_at_;

    if (auto idx = automaton_->find_transition(current_, record.event)) {
      const Transition& t = automaton_->transition(*idx);
      StepOutcome out;
      if (!t.timing.contains(d)) {
        AnomalyReport r;
        r.kind = AnomalyKind::WrongTiming;
        r.at = record.timestamp;
        r.source_state = current_;
        r.observed_event = record.event;
        r.observed_duration_ms = d;
        r.reference = t.timing;
        if (d < t.timing.min_ms) {
          r.violated_bound = ViolatedBound::BelowMin;
          r.deviation_ms = t.timing.min_ms - d;
        } else {
          r.violated_bound = ViolatedBound::AboveMax;
          r.deviation_ms = d - t.timing.max_ms;
        }
        r.continued_at = t.target;
        out.anomaly = std::move(r);
      }
      move_to(t.target, record.timestamp);
      out.next = t.target;
      return out;
    }

    AnomalyReport r;
    r.kind = AnomalyKind::UnknownEvent;
    r.at = record.timestamp;
    r.source_state = current_;
    r.observed_event = record.event;
    r.observed_duration_ms = d;
    for (auto i : automaton_->outgoing(current_)) {
      const auto& t = automaton_->transition(i);
      r.expected_events.push_back(ExpectedEvent{t.event, t.timing});
    }

    std::optional<StateId> next;
    if (policy_ == ResyncPolicy::VectorResync) next = resync_target(record.event);
    if (next) {
      move_to(*next, record.timestamp);
    } else {
      status_ = DetectorStatus::Halted;
    }
    r.continued_at = next;
    return StepOutcome{std::move(r), next};
  }

  const TimedAutomaton& automaton() const noexcept { return *automaton_; }
  StateId current() const noexcept { return current_; }
  Millis entered_at() const noexcept { return entered_at_; }
  DetectorStatus status() const noexcept { return status_; }
  ResyncPolicy policy() const noexcept { return policy_; }

 private:
  std::optional<StateId> resync_target(const Event& e) const {
    try {
      const auto v = apply_event(automaton_->signal_ordering(), automaton_->vector(current_), e);
      return automaton_->find_state(v);
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  void move_to(StateId s, Millis t) {
    current_ = s;
    entered_at_ = t;
  }

  const TimedAutomaton* automaton_;
  StateId current_;
  Millis entered_at_;
  ResyncPolicy policy_;
  DetectorStatus status_ = DetectorStatus::Running;
};

struct DetectionResult {
  std::vector<AnomalyReport> reports;
  DetectorStatus status = DetectorStatus::Running;
  StateId final_state;
  /// Observations consumed before halting.
  std::size_t consumed = 0;
};

/// Folds `step` over the log. A halt ends the run and is reported in the
/// result rather than thrown.
inline DetectionResult run_detector(const TimedAutomaton& automaton, StateId start_state,
                                    std::span<const EventRecord> log,
                                    ResyncPolicy policy = ResyncPolicy::VectorResync,
                                    Millis entered_at = 0) {
  Detector detector(automaton, start_state, policy, entered_at);
  DetectionResult result;
  for (const auto& r : log) {
    auto out = detector.step(r);
    ++result.consumed;
    if (out.anomaly) result.reports.push_back(std::move(*out.anomaly));
    if (detector.status() == DetectorStatus::Halted) break;
  }
  result.status = detector.status();
  result.final_state = detector.current();
  return result;
}

struct Syndrome {
  std::vector<AnomalyReport> reports;
  Millis window_ms = 0;
  /// Position of the first report in the list passed to group_syndromes.
  std::size_t first_index = 0;
};

/// Splits time-ordered reports into maximal runs whose consecutive gaps are
/// at most `window_ms`.
inline std::vector<Syndrome> group_syndromes(std::span<const AnomalyReport> reports,
                                             Millis window_ms) {
  if (window_ms <= 0) throw Error(ErrorCode::InvalidConfig, "syndrome window must be positive");
  std::vector<Syndrome> out;
  for (std::size_t i = 0; i < reports.size(); ++i) {
    if (i > 0 && reports[i].at < reports[i - 1].at) {
      throw Error(ErrorCode::NonMonotonicTimestamps, "reports are not time-ordered");
    }
    if (out.empty() || reports[i].at - out.back().reports.back().at > window_ms) {
      out.push_back(Syndrome{{}, window_ms, i});
    }
    out.back().reports.push_back(reports[i]);
  }
  return out;
}

}  // namespace takg
