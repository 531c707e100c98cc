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

// Anomaly report file: JSON Lines, one report per line. The "syndrome" field
// is the index of the syndrome the report belongs to; a syndrome is therefore
// the index range of consecutive lines sharing that value.

#pragma once

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "takg/anoda.hpp"
#include "takg/event_io.hpp"

namespace takg {

namespace detail {

inline nlohmann::ordered_json timing_to_json(const TimingInterval& t) {
  nlohmann::ordered_json j;
  j["min_ms"] = t.min_ms;
  j["max_ms"] = t.max_ms;
  j["count"] = t.observation_count;
  return j;
}

inline TimingInterval timing_from_json(const nlohmann::json& j) {
  return TimingInterval{j.at("min_ms").get<Millis>(), j.at("max_ms").get<Millis>(),
                        j.at("count").get<std::uint64_t>()};
}

}  // namespace detail

inline nlohmann::ordered_json report_to_json(const AnomalyReport& r, std::size_t syndrome) {
  nlohmann::ordered_json j;
  j["kind"] = to_string(r.kind);
  j["at_ms"] = r.at;
  j["source_state"] = r.source_state.index;
  j["observed_event"] = changes_to_json(r.observed_event);
  j["observed_duration_ms"] = r.observed_duration_ms;
  if (r.kind == AnomalyKind::WrongTiming) {
    j["violated_bound"] = to_string(*r.violated_bound);
    j["reference"] = detail::timing_to_json(*r.reference);
    j["deviation_ms"] = r.deviation_ms;
  } else {
    auto expected = nlohmann::ordered_json::array();
    for (const auto& e : r.expected_events) {
      nlohmann::ordered_json je;
      je["changes"] = changes_to_json(e.event);
      je["timing"] = detail::timing_to_json(e.timing);
      expected.push_back(std::move(je));
    }
    j["expected_events"] = std::move(expected);
  }
  j["continued_at"] = r.continued_at ? nlohmann::ordered_json(r.continued_at->index)
                                     : nlohmann::ordered_json(nullptr);
  j["syndrome"] = syndrome;
  return j;
}

inline void write_anomalies_jsonl(std::ostream& os, std::span<const Syndrome> syndromes) {
  for (std::size_t s = 0; s < syndromes.size(); ++s) {
    for (const auto& r : syndromes[s].reports) os << report_to_json(r, s).dump() << '\n';
  }
}

struct AnomalyFile {
  std::vector<AnomalyReport> reports;
  std::vector<Syndrome> syndromes;
};

/// Reads an anomaly file. The automaton supplies the source-state vectors
/// needed to rebuild the old values of observed events.
inline AnomalyFile read_anomalies_jsonl(std::istream& is, const TimedAutomaton& automaton,
                                        Millis syndrome_window_ms = 0) {
  AnomalyFile out;
  std::string line;
  std::size_t line_no = 0;
  std::optional<std::size_t> last_syndrome;
  while (std::getline(is, line)) {
    ++line_no;
    if (detail::blank(line)) continue;
    const auto j = detail::parse_json_line(line, line_no);
    try {
      AnomalyReport r;
      const auto kind = j.at("kind").get<std::string>();
      if (kind == "WrongTiming") {
        r.kind = AnomalyKind::WrongTiming;
      } else if (kind == "UnknownEvent") {
        r.kind = AnomalyKind::UnknownEvent;
      } else {
        throw Error(ErrorCode::InvalidFormat, "unknown anomaly kind '" + kind + "'");
      }
      r.at = j.at("at_ms").get<Millis>();
      r.source_state = StateId{j.at("source_state").get<std::uint32_t>()};
      if (!automaton.has_state(r.source_state)) {
        throw Error(ErrorCode::DanglingReference,
                    state_name(r.source_state) + " is not a state of the automaton");
      }
      const auto& ordering = automaton.signal_ordering();
      const auto& source = automaton.vector(r.source_state);
      r.observed_event = event_from_changes(j.at("observed_event"), ordering, source);
      r.observed_duration_ms = j.at("observed_duration_ms").get<Millis>();
      if (r.kind == AnomalyKind::WrongTiming) {
        const auto bound = j.at("violated_bound").get<std::string>();
        r.violated_bound = bound == "BelowMin" ? ViolatedBound::BelowMin : ViolatedBound::AboveMax;
        r.reference = detail::timing_from_json(j.at("reference"));
        r.deviation_ms = j.at("deviation_ms").get<Millis>();
      } else {
        for (const auto& je : j.at("expected_events")) {
          r.expected_events.push_back(
              ExpectedEvent{event_from_changes(je.at("changes"), ordering, source),
                            detail::timing_from_json(je.at("timing"))});
        }
      }
      if (!j.at("continued_at").is_null()) {
        r.continued_at = StateId{j.at("continued_at").get<std::uint32_t>()};
      }
      const auto syndrome = j.at("syndrome").get<std::size_t>();
      if (!last_syndrome || syndrome != *last_syndrome) {
        if (last_syndrome && syndrome != *last_syndrome + 1) {
          throw Error(ErrorCode::InvalidFormat, "syndrome indices must be consecutive");
        }
        out.syndromes.push_back(Syndrome{{}, syndrome_window_ms, out.reports.size()});
        last_syndrome = syndrome;
      }
      out.syndromes.back().reports.push_back(r);
      out.reports.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::InvalidFormat, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace takg
