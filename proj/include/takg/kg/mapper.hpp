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

// Mappings into the knowledge graph: plant facts, learned automata and
// detected anomalies.
//
// Every resource gets a deterministic IRI <ex><plant>/<kind>/<name>, so equal
// inputs give equal graphs. Durations are written in seconds as xsd:decimal
// with one fractional digit; timestamps stay integer milliseconds.
//
// Automaton graph size. For |S| states, |T| transitions, n signals and k
// changed-signal entries summed over all transition events:
//
//   f(|S|, |T|, n, k) = 4 + |S| * (3 + 5n) + 14 * |T| + 5k
//
//   4        machine type, label, owner link, InitialState type of q0
//   3 + 5n   per state: type, label, hasState, and per signal a property
//            state (link, type, property, value, value label)
//   14       per transition: 7 for the transition (type, label, hasTransition,
//            source, target, trigger, timing link), 5 for its timing (type,
//            label, min, max, count) and 2 for its event (type, label)
//   5        per event description: link, type, property, value, value label

#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <span>
#include <string>

#include "takg/anoda.hpp"
#include "takg/kg/plant_facts.hpp"
#include "takg/kg/vocabulary.hpp"
#include "takg/rdf/graph.hpp"

namespace takg::kg {

inline constexpr std::size_t automaton_triple_count(std::size_t states, std::size_t transitions,
                                                    std::size_t signals, std::size_t changes) {
  return 4 + states * (3 + 5 * signals) + 14 * transitions + 5 * changes;
}

/// "121.8" for 121800 ms. Rounds half up to a tenth of a second.
inline std::string seconds_decimal(Millis ms) {
  const bool negative = ms < 0;
  const Millis abs = negative ? -ms : ms;
  const Millis tenths = (abs + 50) / 100;
  return std::string(negative && tenths != 0 ? "-" : "") + std::to_string(tenths / 10) + "." +
         std::to_string(tenths % 10);
}

inline rdf::Literal seconds_literal(Millis ms) { return rdf::typed(seconds_decimal(ms), rdf::xsd::decimal); }

/// Human-readable value of an actuator: valves open/closed, pumps on/off,
/// chosen from the property's semantic label; other devices keep the number.
inline std::string actuator_value_label(std::string_view semantic_label, SignalValue value) {
  std::string lower(semantic_label);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if ((value == 0 || value == 1) && lower.find("pump") != std::string::npos) return value ? "on" : "off";
  if ((value == 0 || value == 1) && lower.find("valve") != std::string::npos) return value ? "open" : "closed";
  return std::to_string(value);
}

/// IRI scheme for one plant and the state machine of one of its entities.
class Naming {
 public:
  Naming(std::string plant, std::string owner) : plant_(std::move(plant)), owner_(std::move(owner)) {}

  const std::string& plant() const noexcept { return plant_; }
  const std::string& owner() const noexcept { return owner_; }

  Iri make(std::string_view kind, std::string_view name) const {
    return Iri(std::string(ns::ex) + plant_ + "/" + std::string(kind) + "/" + std::string(name));
  }

  Iri entity(std::string_view id) const { return make("entity", id); }
  Iri device(std::string_view id) const { return make("device", id); }
  Iri property(std::string_view id) const { return make("property", id); }
  Iri type_description(std::string_view id) const { return make("typedescription", id); }

  Iri machine() const { return make("statemachine", owner_); }
  Iri state(StateId s) const { return make("state", owner_ + "-" + state_name(s)); }
  Iri property_state(StateId s, std::string_view signal) const {
    return make("propertystate", owner_ + "-" + state_name(s) + "-" + std::string(signal));
  }
  /// Transitions, timings and events are numbered from 1 in discovery order.
  Iri transition(std::size_t index) const { return make("transition", owner_ + "-t" + std::to_string(index + 1)); }
  Iri timing(std::size_t index) const { return make("timing", owner_ + "-t" + std::to_string(index + 1)); }
  Iri event(std::size_t index) const { return make("event", owner_ + "-e" + std::to_string(index + 1)); }
  Iri event_description(std::size_t index, std::string_view signal) const {
    return make("eventdescription", owner_ + "-e" + std::to_string(index + 1) + "-" + std::string(signal));
  }

  Iri symptom(Millis at) const { return make("symptom", owner_ + "-" + std::to_string(at)); }
  Iri syndrome(Millis first_at) const { return make("syndrome", owner_ + "-" + std::to_string(first_at)); }
  Iri observed_event(Millis at) const { return make("observedevent", owner_ + "-" + std::to_string(at)); }
  Iri observed_event_description(Millis at, std::string_view signal) const {
    return make("eventdescription", owner_ + "-observed-" + std::to_string(at) + "-" + std::string(signal));
  }

 private:
  std::string plant_;
  std::string owner_;
};

inline rdf::Graph map_plant(const PlantFacts& facts, std::string_view plant) {
  validate(facts);
  const Naming name(std::string(plant), "");
  rdf::Graph g = empty_graph();
  for (const auto& h : facts.hierarchy) {
    const Iri e = name.entity(h.id);
    g.insert(e, rdf::rdf_type, *isa88_class(h.level));
    g.insert(e, rdf::rdfs_label, rdf::plain(h.id));
    if (!h.parent.empty()) g.insert(name.entity(h.parent), isa88::hasPart, e);
  }
  for (const auto& d : facts.devices) {
    const Iri dev = name.device(d.id);
    const Iri prop = name.property(d.property);
    const Iri host = name.entity(d.host);
    const bool sensor = d.kind == DeviceKind::Sensor;
    g.insert(dev, rdf::rdf_type, sensor ? sosa::Sensor : sosa::Actuator);
    g.insert(dev, rdf::rdfs_label, rdf::plain(d.id));
    g.insert(dev, sosa::isHostedBy, host);
    g.insert(dev, sensor ? sosa::observes : sosa::actsOnProperty, prop);
    if (facts.entity(d.host)->level == "ControlModule") g.insert(host, rdf::rdf_type, sosa::Platform);

    g.insert(prop, rdf::rdf_type, sensor ? sosa::ObservableProperty : sosa::ActuatableProperty);
    g.insert(prop, rdf::rdf_type, din61360::DataElement);
    g.insert(prop, rdf::rdfs_label, rdf::plain(d.property));
    const Iri td = name.type_description(d.property);
    g.insert(prop, din61360::hasTypeDescription, td);
    g.insert(td, rdf::rdf_type, din61360::TypeDescription);
    g.insert(td, din61360::preferredName, rdf::plain(d.semantic_label));
  }
  return g;
}

namespace detail {

inline const DeviceRow& actuator_for(const PlantFacts& facts, const std::string& signal) {
  const DeviceRow* d = facts.device(signal);
  if (!d || d->kind != DeviceKind::Actuator) {
    throw Error(ErrorCode::UnknownActuator, "signal '" + signal + "' is not an actuator of the plant");
  }
  return *d;
}

/// Link, type, property, value and value label of one signal value node.
inline void insert_signal_value(rdf::Graph& g, const Naming& name, const Iri& owner_node, const Iri& link,
                                const Iri& node, const Iri& type, const DeviceRow& device,
                                SignalValue value) {
  g.insert(owner_node, link, node);
  g.insert(node, rdf::rdf_type, type);
  g.insert(node, ext::forProperty, name.property(device.property));
  g.insert(node, ext::hasValue, rdf::integer_literal(value));
  g.insert(node, ext::hasValueLabel, rdf::plain(actuator_value_label(device.semantic_label, value)));
}

}  // namespace detail

/// Maps the automaton learned for plant entity `naming.owner()`.
inline rdf::Graph map_automaton(const TimedAutomaton& a, const Naming& name, const PlantFacts& facts) {
  if (!facts.entity(name.owner())) {
    throw Error(ErrorCode::DanglingReference, "owner '" + name.owner() + "' is not a plant entity");
  }
  const auto& signals = a.signal_ordering().signals();
  std::vector<const DeviceRow*> devices;
  for (const auto& s : signals) devices.push_back(&detail::actuator_for(facts, s.name));

  rdf::Graph g = empty_graph();
  const Iri machine = name.machine();
  g.insert(machine, rdf::rdf_type, sm::StateMachine);
  g.insert(machine, rdf::rdfs_label, rdf::plain(name.owner() + " state machine"));
  g.insert(name.entity(name.owner()), sm::hasStateMachine, machine);

  for (std::uint32_t i = 0; i < a.state_count(); ++i) {
    const StateId id{i};
    const Iri state = name.state(id);
    g.insert(state, rdf::rdf_type, sm::State);
    if (id == a.initial()) g.insert(state, rdf::rdf_type, sm::InitialState);
    g.insert(state, rdf::rdfs_label, rdf::plain(state_name(id)));
    g.insert(machine, sm::hasState, state);
    const auto& v = a.vector(id);
    for (std::size_t j = 0; j < signals.size(); ++j) {
      detail::insert_signal_value(g, name, state, ext::hasPropertyState,
                                  name.property_state(id, signals[j].name), ext::PropertyState,
                                  *devices[j], v[j]);
    }
  }

  for (std::size_t k = 0; k < a.transition_count(); ++k) {
    const auto& t = a.transition(k);
    const Iri tr = name.transition(k);
    const Iri timing = name.timing(k);
    const Iri event = name.event(k);
    g.insert(tr, rdf::rdf_type, sm::Transition);
    g.insert(tr, rdf::rdfs_label, rdf::plain("t" + std::to_string(k + 1)));
    g.insert(machine, sm::hasTransition, tr);
    g.insert(tr, sm::sourceState, name.state(t.source));
    g.insert(tr, sm::targetState, name.state(t.target));
    g.insert(tr, sm::triggeredBy, event);
    g.insert(tr, ext::hasTransitionTiming, timing);

    g.insert(timing, rdf::rdf_type, ext::TransitionTiming);
    g.insert(timing, rdf::rdfs_label, rdf::plain("Trans.Timing" + std::to_string(k + 1)));
    g.insert(timing, ext::minDuration, seconds_literal(t.timing.min_ms));
    g.insert(timing, ext::maxDuration, seconds_literal(t.timing.max_ms));
    g.insert(timing, ext::observationCount,
             rdf::integer_literal(static_cast<long long>(t.timing.observation_count)));

    g.insert(event, rdf::rdf_type, sm::Event);
    g.insert(event, rdf::rdfs_label, rdf::plain("e" + std::to_string(k + 1)));
    for (const auto& c : t.event.changes()) {
      detail::insert_signal_value(g, name, event, ext::hasEventDescription,
                                  name.event_description(k, c.signal.name), ext::EventDescription,
                                  detail::actuator_for(facts, c.signal.name), c.to);
    }
  }
  return g;
}

/// Maps anomaly reports and their syndromes onto the automaton graph built
/// with the same naming.
inline rdf::Graph map_anomalies(std::span<const AnomalyReport> reports, std::span<const Syndrome> syndromes,
                                const TimedAutomaton& a, const Naming& name, const PlantFacts& facts) {
  rdf::Graph g = empty_graph();
  if (reports.empty() && syndromes.empty()) return g;
  const Iri machine = name.machine();
  g.insert(machine, rdf::rdf_type, iso17359::DiagnosticModel);

  for (const auto& r : reports) {
    if (!a.has_state(r.source_state)) {
      throw Error(ErrorCode::DanglingReference, "report at " + std::to_string(r.at) + " ms names unknown " +
                                                    state_name(r.source_state));
    }
    const Iri sym = name.symptom(r.at);
    g.insert(sym, rdf::rdf_type, iso17359::Symptom);
    g.insert(sym, rdf::rdfs_label, rdf::plain("Symptom@" + std::to_string(r.at)));
    g.insert(sym, iso17359::occurredAt, rdf::integer_literal(r.at));
    g.insert(sym, iso17359::detectedBy, machine);
    g.insert(sym, ext::inState, name.state(r.source_state));
    g.insert(sym, iso17359::observedValue, seconds_literal(r.observed_duration_ms));

    if (r.kind == AnomalyKind::WrongTiming) {
      const auto k = a.find_transition(r.source_state, r.observed_event);
      if (!k || !r.reference || !r.violated_bound) {
        throw Error(ErrorCode::DanglingReference, "timing anomaly at " + std::to_string(r.at) +
                                                      " ms matches no transition");
      }
      const auto& timing = a.transition(*k).timing;
      const Millis observed = (r.observed_duration_ms + 50) / 100;
      const bool above = *r.violated_bound == ViolatedBound::AboveMax;
      const Millis bound = ((above ? timing.max_ms : timing.min_ms) + 50) / 100;
      g.insert(sym, rdf::rdf_type, ext::TimingAnomaly);
      g.insert(sym, iso17359::referenceValue, name.timing(*k));
      g.insert(name.timing(*k), rdf::rdf_type, iso17359::ReferenceValue);
      g.insert(sym, iso17359::deviation, seconds_literal((above ? observed - bound : bound - observed) * 100));
      g.insert(sym, ext::violatedBound, rdf::plain(to_string(*r.violated_bound)));
      g.insert(sym, iso17359::onTransition, name.transition(*k));
      g.insert(sym, ext::observedEvent, name.event(*k));
    } else {
      g.insert(sym, rdf::rdf_type, ext::FunctionalAnomaly);
      const Iri observed = name.observed_event(r.at);
      g.insert(sym, ext::observedEvent, observed);
      g.insert(observed, rdf::rdf_type, sm::Event);
      g.insert(observed, rdf::rdfs_label, rdf::plain("observed@" + std::to_string(r.at)));
      for (const auto& c : r.observed_event.changes()) {
        detail::insert_signal_value(g, name, observed, ext::hasEventDescription,
                                    name.observed_event_description(r.at, c.signal.name),
                                    ext::EventDescription, detail::actuator_for(facts, c.signal.name), c.to);
      }
      for (auto k : a.outgoing(r.source_state)) g.insert(sym, ext::expectedEvent, name.event(k));
    }
  }

  for (const auto& s : syndromes) {
    if (s.reports.empty()) continue;
    const Iri syn = name.syndrome(s.reports.front().at);
    g.insert(syn, rdf::rdf_type, iso17359::Syndrome);
    g.insert(syn, rdf::rdfs_label, rdf::plain("Syndrome@" + std::to_string(s.reports.front().at)));
    for (const auto& r : s.reports) {
      const bool known = std::any_of(reports.begin(), reports.end(),
                                     [&](const AnomalyReport& x) { return x.at == r.at; });
      if (!known) {
        throw Error(ErrorCode::DanglingReference,
                    "syndrome member at " + std::to_string(r.at) + " ms is not among the reports");
      }
      g.insert(name.symptom(r.at), iso17359::partOfSyndrome, syn);
    }
  }
  return g;
}

}  // namespace takg::kg
