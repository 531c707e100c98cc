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

// JSON Lines formats for raw samples and coalesced events.
//
//   samples: {"t_ms": <int>, "signal": "<id>", "value": <int>}
//   events:  {"t_ms": <int>, "changes": {"<signal>": <newValue>, ...}}

#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "takg/event_model.hpp"

namespace takg {

namespace detail {

inline nlohmann::json parse_json_line(const std::string& line, std::size_t line_no) {
  try {
    return nlohmann::json::parse(line);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::InvalidFormat,
                "line " + std::to_string(line_no) + ": " + e.what());
  }
}

template <typename T>
T required(const nlohmann::json& j, const char* key, std::size_t line_no) {
  if (!j.is_object() || !j.contains(key)) {
    throw Error(ErrorCode::InvalidFormat,
                "line " + std::to_string(line_no) + ": missing field '" + key + "'");
  }
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidFormat,
                "line " + std::to_string(line_no) + ": field '" + key + "': " + e.what());
  }
}

inline bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace detail

inline void write_samples_jsonl(std::ostream& os, std::span<const RawSample> samples) {
  for (const auto& s : samples) {
    nlohmann::ordered_json j;
    j["t_ms"] = s.timestamp;
    j["signal"] = s.signal.name;
    j["value"] = s.value;
    os << j.dump() << '\n';
  }
}

inline std::vector<RawSample> read_samples_jsonl(std::istream& is) {
  std::vector<RawSample> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (detail::blank(line)) continue;
    const auto j = detail::parse_json_line(line, line_no);
    out.push_back(RawSample{detail::required<Millis>(j, "t_ms", line_no),
                            SignalId(detail::required<std::string>(j, "signal", line_no)),
                            detail::required<SignalValue>(j, "value", line_no)});
  }
  return out;
}

inline nlohmann::ordered_json changes_to_json(const Event& e) {
  nlohmann::ordered_json changes = nlohmann::ordered_json::object();
  for (const auto& c : e.changes()) changes[c.signal.name] = c.to;
  return changes;
}

inline void write_events_jsonl(std::ostream& os, std::span<const EventRecord> log) {
  for (const auto& r : log) {
    nlohmann::ordered_json j;
    j["t_ms"] = r.timestamp;
    j["changes"] = changes_to_json(r.event);
    os << j.dump() << '\n';
  }
}

/// Builds an event from a `{"signal": newValue}` map, taking old values from `source`.
template <typename Json>
Event event_from_changes(const Json& changes, const SignalOrdering& ordering,
                         const StateVector& source) {
  if (!changes.is_object() || changes.empty()) {
    throw Error(ErrorCode::InvalidFormat, "'changes' must be a non-empty object");
  }
  std::vector<Change> out;
  for (auto it = changes.begin(); it != changes.end(); ++it) {
    const std::size_t i = ordering.index_of(it.key());
    out.push_back(Change{ordering[i], source.values.at(i), it.value().template get<SignalValue>()});
  }
  return Event(std::move(out));
}

/// Reads coalesced events; old values are reconstructed by folding from `initial`.
inline std::vector<EventRecord> read_events_jsonl(std::istream& is, const SignalOrdering& ordering,
                                                  const StateVector& initial) {
  std::vector<EventRecord> out;
  StateVector current = initial;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (detail::blank(line)) continue;
    const auto j = detail::parse_json_line(line, line_no);
    const auto t = detail::required<Millis>(j, "t_ms", line_no);
    if (!out.empty() && t <= out.back().timestamp) {
      throw Error(ErrorCode::NonMonotonicTimestamps, "line " + std::to_string(line_no));
    }
    if (!j.contains("changes")) {
      throw Error(ErrorCode::InvalidFormat, "line " + std::to_string(line_no) + ": missing 'changes'");
    }
    Event e = event_from_changes(j.at("changes"), ordering, current);
    current = apply_event(ordering, current, e);
    out.push_back(EventRecord{std::move(e), t});
  }
  return out;
}

}  // namespace takg
