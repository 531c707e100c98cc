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

// Signals, state vectors and events: the alphabet of the learned automata.
//
// A state vector is the snapshot of all discrete IO values in a fixed signal
// ordering. An event is the set of signals whose value changed between two
// snapshots. Raw per-signal samples are coalesced into events on a fixed PLC
// cycle grid so that actuators switched in the same cycle form one event.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "takg/error.hpp"

namespace takg {

/// Milliseconds since log start.
using Millis = std::int64_t;

/// Discrete IO value. Valves and pumps use 0/1.
using SignalValue = std::int32_t;

inline constexpr Millis kDefaultCycleMs = 100;

struct SignalId {
  std::string name;

  SignalId() = default;
  explicit SignalId(std::string n) : name(std::move(n)) {}

  friend auto operator<=>(const SignalId&, const SignalId&) = default;
  friend bool operator==(const SignalId&, const SignalId&) = default;
};

/// Fixed ordering of the signals that make up a state vector.
class SignalOrdering {
 public:
  SignalOrdering() = default;

  explicit SignalOrdering(std::vector<SignalId> signals) : signals_(std::move(signals)) {
    for (std::size_t i = 0; i < signals_.size(); ++i) {
      if (signals_[i].name.empty()) {
        throw Error(ErrorCode::InvalidConfig, "empty signal name at position " + std::to_string(i));
      }
      if (!index_.emplace(signals_[i].name, i).second) {
        throw Error(ErrorCode::InvalidConfig, "duplicate signal '" + signals_[i].name + "'");
      }
    }
  }

  static SignalOrdering from_names(const std::vector<std::string>& names) {
    std::vector<SignalId> ids;
    ids.reserve(names.size());
    for (const auto& n : names) ids.emplace_back(n);
    return SignalOrdering(std::move(ids));
  }

  std::size_t size() const noexcept { return signals_.size(); }
  const std::vector<SignalId>& signals() const noexcept { return signals_; }
  const SignalId& operator[](std::size_t i) const { return signals_.at(i); }

  std::optional<std::size_t> find(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t index_of(const std::string& name) const {
    if (auto i = find(name)) return *i;
    throw Error(ErrorCode::UnknownSignal, "signal '" + name + "' is not in the signal ordering");
  }

  friend bool operator==(const SignalOrdering& a, const SignalOrdering& b) {
    return a.signals_ == b.signals_;
  }

 private:
  std::vector<SignalId> signals_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct StateVector {
  std::vector<SignalValue> values;

  StateVector() = default;
  explicit StateVector(std::vector<SignalValue> v) : values(std::move(v)) {}
  static StateVector zeros(std::size_t n) { return StateVector(std::vector<SignalValue>(n, 0)); }

  std::size_t size() const noexcept { return values.size(); }
  SignalValue operator[](std::size_t i) const { return values.at(i); }

  friend auto operator<=>(const StateVector&, const StateVector&) = default;
  friend bool operator==(const StateVector&, const StateVector&) = default;
};

struct StateVectorHash {
  std::size_t operator()(const StateVector& v) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto x : v.values) {
      h ^= std::hash<SignalValue>{}(x) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

/// One signal's value change inside an event.
struct Change {
  SignalId signal;
  SignalValue from = 0;
  SignalValue to = 0;

  friend bool operator==(const Change&, const Change&) = default;
};

/// A non-empty set of simultaneous signal changes.
///
/// Changes are kept sorted by signal name. Identity is the set of
/// (signal, new value) pairs; old values are implied by the source state and
/// only kept for integrity checks.
class Event {
 public:
  Event() = default;

  explicit Event(std::vector<Change> changes) : changes_(std::move(changes)) {
    if (changes_.empty()) throw Error(ErrorCode::InvalidFormat, "event without changes");
    std::sort(changes_.begin(), changes_.end(),
              [](const Change& a, const Change& b) { return a.signal < b.signal; });
    for (std::size_t i = 0; i < changes_.size(); ++i) {
      if (changes_[i].from == changes_[i].to) {
        throw Error(ErrorCode::InvalidFormat,
                    "change of '" + changes_[i].signal.name + "' restates its value");
      }
      if (i > 0 && changes_[i].signal == changes_[i - 1].signal) {
        throw Error(ErrorCode::InvalidFormat,
                    "signal '" + changes_[i].signal.name + "' changes twice in one event");
      }
    }
  }

  const std::vector<Change>& changes() const noexcept { return changes_; }
  std::size_t size() const noexcept { return changes_.size(); }
  bool empty() const noexcept { return changes_.empty(); }

  friend bool operator==(const Event& a, const Event& b) {
    return std::equal(a.changes_.begin(), a.changes_.end(), b.changes_.begin(), b.changes_.end(),
                      [](const Change& x, const Change& y) {
                        return x.signal == y.signal && x.to == y.to;
                      });
  }

  friend std::strong_ordering operator<=>(const Event& a, const Event& b) {
    return std::lexicographical_compare_three_way(
        a.changes_.begin(), a.changes_.end(), b.changes_.begin(), b.changes_.end(),
        [](const Change& x, const Change& y) {
          if (auto c = x.signal <=> y.signal; c != 0) return c;
          return x.to <=> y.to;
        });
  }

 private:
  std::vector<Change> changes_;
};

struct EventRecord {
  Event event;
  Millis timestamp = 0;

  friend bool operator==(const EventRecord&, const EventRecord&) = default;
};

struct RawSample {
  Millis timestamp = 0;
  SignalId signal;
  SignalValue value = 0;

  friend bool operator==(const RawSample&, const RawSample&) = default;
};

/// Applies `event` to `u`. Every change's old value must match `u`.
inline StateVector apply_event(const SignalOrdering& ordering, const StateVector& u,
                               const Event& event) {
  StateVector next = u;
  for (const auto& c : event.changes()) {
    const std::size_t i = ordering.index_of(c.signal.name);
    if (i >= u.size()) {
      throw Error(ErrorCode::UnknownSignal, "signal '" + c.signal.name + "' outside state vector");
    }
    if (u.values[i] != c.from) {
      throw Error(ErrorCode::InconsistentOldValue,
                  "signal '" + c.signal.name + "' is " + std::to_string(u.values[i]) +
                      " but the event expects " + std::to_string(c.from));
    }
    next.values[i] = c.to;
  }
  return next;
}

/// Folds the events of a log over `initial`.
inline StateVector fold_events(const SignalOrdering& ordering, StateVector initial,
                               std::span<const EventRecord> log) {
  for (const auto& r : log) initial = apply_event(ordering, initial, r.event);
  return initial;
}

/// Builds the event that turns `from` into `to`; nullopt when they are equal.
inline std::optional<Event> diff_vectors(const SignalOrdering& ordering, const StateVector& from,
                                         const StateVector& to) {
  std::vector<Change> changes;
  for (std::size_t i = 0; i < from.size(); ++i) {
    if (from.values[i] != to.values[i]) {
      changes.push_back(Change{ordering[i], from.values[i], to.values[i]});
    }
  }
  if (changes.empty()) return std::nullopt;
  return Event(std::move(changes));
}

/// Merges raw samples into events on a fixed cycle grid.
///
/// Samples in the same window (t / cycle_ms) form one event stamped with the
/// window's first effective change. Samples restating the current value are
/// dropped, and so is a window whose changes cancel out.
inline std::vector<EventRecord> coalesce_samples(std::span<const RawSample> samples,
                                                 const SignalOrdering& ordering,
                                                 const StateVector& initial,
                                                 Millis cycle_ms = kDefaultCycleMs) {
  if (cycle_ms <= 0) throw Error(ErrorCode::InvalidConfig, "cycle_ms must be positive");
  if (initial.size() != ordering.size()) {
    throw Error(ErrorCode::InvalidConfig, "initial vector length does not match signal ordering");
  }

  std::vector<EventRecord> out;
  StateVector current = initial;
  StateVector window_base = initial;
  std::optional<Millis> window;
  bool changed = false;
  Millis first_change = 0;
  Millis previous = 0;

  auto flush = [&] {
    if (changed) {
      if (auto e = diff_vectors(ordering, window_base, current)) {
        out.push_back(EventRecord{std::move(*e), first_change});
      }
    }
    changed = false;
    window_base = current;
  };

  for (const auto& s : samples) {
    if (s.timestamp < 0 || s.timestamp < previous) {
      throw Error(ErrorCode::NonMonotonicTimestamps,
                  "sample at " + std::to_string(s.timestamp) + " ms follows " +
                      std::to_string(previous) + " ms");
    }
    previous = s.timestamp;
    const std::size_t i = ordering.index_of(s.signal.name);
    const Millis w = s.timestamp / cycle_ms;
    if (window != w) {
      flush();
      window = w;
    }
    if (current.values[i] == s.value) continue;
    if (!changed) {
      changed = true;
      first_change = s.timestamp;
    }
    current.values[i] = s.value;
  }
  flush();
  return out;
}

/// Expands events back into one raw sample per change.
inline std::vector<RawSample> events_to_samples(std::span<const EventRecord> log) {
  std::vector<RawSample> out;
  for (const auto& r : log) {
    for (const auto& c : r.event.changes()) out.push_back(RawSample{r.timestamp, c.signal, c.to});
  }
  return out;
}

}  // namespace takg
