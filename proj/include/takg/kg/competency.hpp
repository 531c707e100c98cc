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

// Competency questions CQ1..CQ12 as prepared queries over the merged export.
//
// Requirements: R1 cyber-physical structure, R2 state definitions, R3
// anomaly definitions. Queries address resources by rdfs:label, so they work
// for any plant name; the state machine owner is the MixingModule.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "takg/kg/vocabulary.hpp"
#include "takg/rdf/query.hpp"

namespace takg::kg {

struct CompetencyQuestion {
  std::string id;           // "CQ1".."CQ12"
  std::string question;
  std::string requirement;  // "R1", "R2" or "R3"
  std::string json;         // query in the JSON query format

  rdf::Query query() const { return rdf::parse_query_json(json, prefixes()); }
};

inline const std::vector<CompetencyQuestion>& competency_queries() {
  static const std::vector<CompetencyQuestion> cqs = {
      {"CQ1", "Which sensors are part of Tank_B201?", "R1", R"({
  "select": ["?sensor"],
  "where": [["?d", "a", "sosa:Sensor"], ["?d", "sosa:isHostedBy", "?e"],
            ["?e", "rdfs:label", "\"Tank_B201\""], ["?d", "rdfs:label", "?sensor"]]
})"},
      {"CQ2", "Which actuators are part of the MixingModule?", "R1", R"({
  "select": ["?actuator"],
  "where": [["?d", "a", "sosa:Actuator"], ["?d", "sosa:isHostedBy", "?e"],
            ["?e", "rdfs:label", "\"MixingModule\""], ["?d", "rdfs:label", "?actuator"]]
})"},
      {"CQ3", "Where is sensor tank_B201.level mounted?", "R1", R"({
  "select": ["?entity"],
  "where": [["?d", "rdfs:label", "\"tank_B201.level\""], ["?d", "sosa:isHostedBy", "?e"],
            ["?e", "rdfs:label", "?entity"]]
})"},
      {"CQ4", "What property does tank_B201.level measure?", "R1", R"({
  "select": ["?property"],
  "where": [["?d", "rdfs:label", "\"tank_B201.level\""], ["?d", "sosa:observes", "?p"],
            ["?p", "din61360:hasTypeDescription", "?td"], ["?td", "din61360:preferredName", "?property"]]
})"},
      {"CQ5", "How many states does the state machine of the MixingModule contain?", "R1", R"({
  "count": true,
  "where": [["?e", "rdfs:label", "\"MixingModule\""], ["?e", "sm:hasStateMachine", "?m"],
            ["?m", "sm:hasState", "?s"]]
})"},
      {"CQ6", "What was the state of valve V204 in state q2?", "R2", R"({
  "select": ["?value"],
  "where": [["?e", "rdfs:label", "\"MixingModule\""], ["?e", "sm:hasStateMachine", "?m"],
            ["?m", "sm:hasState", "?s"], ["?s", "rdfs:label", "\"q2\""],
            ["?s", "ext:hasPropertyState", "?ps"], ["?ps", "ext:forProperty", "?p"],
            ["?d", "sosa:actsOnProperty", "?p"], ["?d", "rdfs:label", "\"V204\""],
            ["?ps", "ext:hasValueLabel", "?value"]]
})"},
      {"CQ7", "In which state was ValveV204 open and pump P201 turned on?", "R2", R"({
  "select": ["?state"],
  "where": [["?s", "a", "sm:State"],
            ["?s", "ext:hasPropertyState", "?v"], ["?v", "ext:forProperty", "?vp"],
            ["?vp", "rdfs:label", "\"ValveV204\""], ["?v", "ext:hasValueLabel", "\"open\""],
            ["?s", "ext:hasPropertyState", "?u"], ["?u", "ext:forProperty", "?up"],
            ["?up", "rdfs:label", "\"PumpP201\""], ["?u", "ext:hasValueLabel", "\"on\""],
            ["?s", "rdfs:label", "?state"]]
})"},
      {"CQ8", "Which events are allowed in state q3?", "R2", R"({
  "select": ["?event", "?property", "?value"],
  "where": [["?s", "rdfs:label", "\"q3\""], ["?t", "sm:sourceState", "?s"],
            ["?t", "sm:triggeredBy", "?e"], ["?e", "rdfs:label", "?event"],
            ["?e", "ext:hasEventDescription", "?d"], ["?d", "ext:forProperty", "?p"],
            ["?p", "rdfs:label", "?property"], ["?d", "ext:hasValueLabel", "?value"]]
})"},
      {"CQ9", "Between which two states was a timing anomaly observed?", "R3", R"({
  "select": ["?from", "?to"],
  "where": [["?sym", "a", "ext:TimingAnomaly"], ["?sym", "iso17359:onTransition", "?t"],
            ["?t", "sm:sourceState", "?a"], ["?a", "rdfs:label", "?from"],
            ["?t", "sm:targetState", "?b"], ["?b", "rdfs:label", "?to"]]
})"},
      {"CQ10", "By how many seconds was the anomaly outside the maximum transition time?", "R3", R"({
  "select": ["?deviation"],
  "where": [["?sym", "a", "ext:TimingAnomaly"], ["?sym", "ext:violatedBound", "\"AboveMax\""],
            ["?sym", "iso17359:deviation", "?deviation"]]
})"},
      {"CQ11", "Which timing anomalies were part of a syndrome?", "R3", R"({
  "select": ["?timing"],
  "where": [["?sym", "a", "ext:TimingAnomaly"], ["?sym", "iso17359:partOfSyndrome", "?syn"],
            ["?sym", "iso17359:referenceValue", "?tt"], ["?tt", "rdfs:label", "?timing"]]
})"},
      {"CQ12", "Which event should have occurred when the timing anomaly was observed?", "R3", R"({
  "select": ["?property", "?value"],
  "where": [["?sym", "a", "ext:TimingAnomaly"], ["?sym", "iso17359:onTransition", "?t"],
            ["?t", "sm:triggeredBy", "?e"], ["?e", "ext:hasEventDescription", "?d"],
            ["?d", "ext:forProperty", "?p"], ["?p", "rdfs:label", "?property"],
            ["?d", "ext:hasValue", "?value"]]
})"},
  };
  return cqs;
}

inline const CompetencyQuestion* find_competency_query(std::string_view id) {
  for (const auto& cq : competency_queries()) {
    if (cq.id == id) return &cq;
  }
  return nullptr;
}

}  // namespace takg::kg
