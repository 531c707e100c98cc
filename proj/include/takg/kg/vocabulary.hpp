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

// Alignment vocabulary: ISA88 physical hierarchy, SOSA sensing/actuation,
// DIN EN 61360 property semantics, UML state machines, the timed-automaton
// extensions (transition timing, property states, event descriptions) and
// ISO 17359 symptoms.
//
// SOSA uses its W3C namespace. The other namespaces and every term name are
// defined by this library; they are stable across releases.

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "takg/rdf/graph.hpp"

namespace takg::kg {

using rdf::Iri;

namespace ns {
inline constexpr std::string_view isa88 = "https://example.org/cpps-kg/isa88#";
inline constexpr std::string_view sosa = "http://www.w3.org/ns/sosa/";
inline constexpr std::string_view din61360 = "https://example.org/cpps-kg/din61360#";
inline constexpr std::string_view sm = "https://example.org/cpps-kg/statemachine#";
inline constexpr std::string_view ext = "https://example.org/cpps-kg/alignment#";
inline constexpr std::string_view iso17359 = "https://example.org/cpps-kg/iso17359#";
/// Instance data: <ex><plant>/<kind>/<name>.
inline constexpr std::string_view ex = "https://example.org/cpps-kg/data/";
}  // namespace ns

namespace isa88 {
inline const Iri Enterprise = rdf::iri_in(ns::isa88, "Enterprise");
inline const Iri Site = rdf::iri_in(ns::isa88, "Site");
inline const Iri Area = rdf::iri_in(ns::isa88, "Area");
inline const Iri ProcessCell = rdf::iri_in(ns::isa88, "ProcessCell");
inline const Iri Unit = rdf::iri_in(ns::isa88, "Unit");
inline const Iri EquipmentModule = rdf::iri_in(ns::isa88, "EquipmentModule");
inline const Iri ControlModule = rdf::iri_in(ns::isa88, "ControlModule");
inline const Iri hasPart = rdf::iri_in(ns::isa88, "hasPart");
}  // namespace isa88

namespace sosa {
inline const Iri Sensor = rdf::iri_in(ns::sosa, "Sensor");
inline const Iri Actuator = rdf::iri_in(ns::sosa, "Actuator");
inline const Iri Platform = rdf::iri_in(ns::sosa, "Platform");
inline const Iri FeatureOfInterest = rdf::iri_in(ns::sosa, "FeatureOfInterest");
inline const Iri ObservableProperty = rdf::iri_in(ns::sosa, "ObservableProperty");
inline const Iri ActuatableProperty = rdf::iri_in(ns::sosa, "ActuatableProperty");
inline const Iri observes = rdf::iri_in(ns::sosa, "observes");
inline const Iri actsOnProperty = rdf::iri_in(ns::sosa, "actsOnProperty");
inline const Iri isHostedBy = rdf::iri_in(ns::sosa, "isHostedBy");
}  // namespace sosa

namespace din61360 {
inline const Iri DataElement = rdf::iri_in(ns::din61360, "DataElement");
inline const Iri TypeDescription = rdf::iri_in(ns::din61360, "TypeDescription");
inline const Iri hasTypeDescription = rdf::iri_in(ns::din61360, "hasTypeDescription");
inline const Iri preferredName = rdf::iri_in(ns::din61360, "preferredName");
}  // namespace din61360

namespace sm {
inline const Iri StateMachine = rdf::iri_in(ns::sm, "StateMachine");
inline const Iri State = rdf::iri_in(ns::sm, "State");
inline const Iri InitialState = rdf::iri_in(ns::sm, "InitialState");
inline const Iri Transition = rdf::iri_in(ns::sm, "Transition");
inline const Iri Event = rdf::iri_in(ns::sm, "Event");
inline const Iri hasStateMachine = rdf::iri_in(ns::sm, "hasStateMachine");
inline const Iri hasState = rdf::iri_in(ns::sm, "hasState");
inline const Iri hasTransition = rdf::iri_in(ns::sm, "hasTransition");
inline const Iri sourceState = rdf::iri_in(ns::sm, "sourceState");
inline const Iri targetState = rdf::iri_in(ns::sm, "targetState");
inline const Iri triggeredBy = rdf::iri_in(ns::sm, "triggeredBy");
}  // namespace sm

namespace ext {
inline const Iri TransitionTiming = rdf::iri_in(ns::ext, "TransitionTiming");
inline const Iri PropertyState = rdf::iri_in(ns::ext, "PropertyState");
inline const Iri EventDescription = rdf::iri_in(ns::ext, "EventDescription");
inline const Iri TimingAnomaly = rdf::iri_in(ns::ext, "TimingAnomaly");
inline const Iri FunctionalAnomaly = rdf::iri_in(ns::ext, "FunctionalAnomaly");
inline const Iri hasTransitionTiming = rdf::iri_in(ns::ext, "hasTransitionTiming");
inline const Iri minDuration = rdf::iri_in(ns::ext, "minDuration");
inline const Iri maxDuration = rdf::iri_in(ns::ext, "maxDuration");
inline const Iri observationCount = rdf::iri_in(ns::ext, "observationCount");
inline const Iri hasPropertyState = rdf::iri_in(ns::ext, "hasPropertyState");
inline const Iri hasEventDescription = rdf::iri_in(ns::ext, "hasEventDescription");
inline const Iri forProperty = rdf::iri_in(ns::ext, "forProperty");
inline const Iri hasValue = rdf::iri_in(ns::ext, "hasValue");
inline const Iri hasValueLabel = rdf::iri_in(ns::ext, "hasValueLabel");
inline const Iri violatedBound = rdf::iri_in(ns::ext, "violatedBound");
inline const Iri inState = rdf::iri_in(ns::ext, "inState");
inline const Iri observedEvent = rdf::iri_in(ns::ext, "observedEvent");
inline const Iri expectedEvent = rdf::iri_in(ns::ext, "expectedEvent");
}  // namespace ext

namespace iso17359 {
inline const Iri DiagnosticModel = rdf::iri_in(ns::iso17359, "DiagnosticModel");
inline const Iri Symptom = rdf::iri_in(ns::iso17359, "Symptom");
inline const Iri ReferenceValue = rdf::iri_in(ns::iso17359, "ReferenceValue");
inline const Iri Syndrome = rdf::iri_in(ns::iso17359, "Syndrome");
inline const Iri observedValue = rdf::iri_in(ns::iso17359, "observedValue");
inline const Iri referenceValue = rdf::iri_in(ns::iso17359, "referenceValue");
inline const Iri deviation = rdf::iri_in(ns::iso17359, "deviation");
inline const Iri detectedBy = rdf::iri_in(ns::iso17359, "detectedBy");
inline const Iri partOfSyndrome = rdf::iri_in(ns::iso17359, "partOfSyndrome");
inline const Iri occurredAt = rdf::iri_in(ns::iso17359, "occurredAt");
inline const Iri onTransition = rdf::iri_in(ns::iso17359, "onTransition");
}  // namespace iso17359

/// Prefix table shared by every exported graph.
inline std::map<std::string, std::string> prefixes() {
  return {{"rdf", std::string(rdf::ns::rdf)},   {"rdfs", std::string(rdf::ns::rdfs)},
          {"xsd", std::string(rdf::ns::xsd)},   {"isa88", std::string(ns::isa88)},
          {"sosa", std::string(ns::sosa)},      {"din61360", std::string(ns::din61360)},
          {"sm", std::string(ns::sm)},          {"ext", std::string(ns::ext)},
          {"iso17359", std::string(ns::iso17359)}, {"ex", std::string(ns::ex)}};
}

inline rdf::Graph empty_graph() {
  rdf::Graph g;
  for (const auto& [p, n] : prefixes()) g.set_prefix(p, n);
  return g;
}

/// Class and property declarations plus the alignment axioms between the
/// source vocabularies (control modules as SOSA platforms, timings as ISO
/// 17359 reference values, state machines as diagnostic models).
inline rdf::Graph vocabulary_graph() {
  using rdf::Iri;
  const Iri rdfs_class = rdf::iri_in(rdf::ns::rdfs, "Class");
  const Iri rdf_property = rdf::iri_in(rdf::ns::rdf, "Property");
  const Iri sub_class = rdf::iri_in(rdf::ns::rdfs, "subClassOf");
  rdf::Graph g = empty_graph();
  const std::vector<Iri> classes = {
      isa88::Enterprise, isa88::Site, isa88::Area, isa88::ProcessCell, isa88::Unit,
      isa88::EquipmentModule, isa88::ControlModule, sosa::Sensor, sosa::Actuator, sosa::Platform,
      sosa::FeatureOfInterest, sosa::ObservableProperty, sosa::ActuatableProperty,
      din61360::DataElement, din61360::TypeDescription, sm::StateMachine, sm::State,
      sm::InitialState, sm::Transition, sm::Event, ext::TransitionTiming, ext::PropertyState,
      ext::EventDescription, ext::TimingAnomaly, ext::FunctionalAnomaly,
      iso17359::DiagnosticModel, iso17359::Symptom, iso17359::ReferenceValue, iso17359::Syndrome};
  const std::vector<Iri> properties = {
      isa88::hasPart, sosa::observes, sosa::actsOnProperty, sosa::isHostedBy,
      din61360::hasTypeDescription, din61360::preferredName, sm::hasStateMachine, sm::hasState,
      sm::hasTransition, sm::sourceState, sm::targetState, sm::triggeredBy,
      ext::hasTransitionTiming, ext::minDuration, ext::maxDuration, ext::observationCount,
      ext::hasPropertyState, ext::hasEventDescription, ext::forProperty, ext::hasValue,
      ext::hasValueLabel, ext::violatedBound, ext::inState, ext::observedEvent,
      ext::expectedEvent, iso17359::observedValue, iso17359::referenceValue, iso17359::deviation,
      iso17359::detectedBy, iso17359::partOfSyndrome, iso17359::occurredAt,
      iso17359::onTransition};
  for (const auto& c : classes) g.insert(c, rdf::rdf_type, rdfs_class);
  for (const auto& p : properties) g.insert(p, rdf::rdf_type, rdf_property);
  g.insert(isa88::ControlModule, sub_class, sosa::Platform);
  g.insert(isa88::ControlModule, sub_class, sosa::FeatureOfInterest);
  g.insert(sm::InitialState, sub_class, sm::State);
  g.insert(ext::TimingAnomaly, sub_class, iso17359::Symptom);
  g.insert(ext::FunctionalAnomaly, sub_class, iso17359::Symptom);
  g.insert(ext::TransitionTiming, sub_class, iso17359::ReferenceValue);
  g.insert(sm::StateMachine, sub_class, iso17359::DiagnosticModel);
  return g;
}

}  // namespace takg::kg
