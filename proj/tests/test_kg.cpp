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

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "support.hpp"

namespace takg::kg {
namespace {

using rdf::Graph;
using rdf::Iri;
using rdf::Term;
using takg::testing::reference;
using takg::testing::Rng;

template <typename F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::Io;
}

/// Rows rendered as space-joined lexical forms.
std::vector<std::string> rows(const Graph& g, const std::string& json) {
  std::vector<std::string> out;
  for (const auto& row : rdf::query(g, rdf::parse_query_json(json, prefixes())).rows) {
    std::string line;
    for (const auto& t : row) line += (line.empty() ? "" : " ") + rdf::term_text(t);
    out.push_back(line);
  }
  return out;
}

std::vector<std::string> cq(const Graph& g, const std::string& id) {
  const auto* q = find_competency_query(id);
  EXPECT_NE(q, nullptr) << id;
  return q ? rows(g, q->json) : std::vector<std::string>{};
}

PlantFacts facts_from(const std::string& hierarchy, const std::string& devices) {
  std::istringstream h(hierarchy);
  std::istringstream d(devices);
  return read_plant_facts(h, d);
}

const std::string kDeviceHeader = "id,kind,host,property,semantic_label\n";

/// Tenths of a second in a one-digit decimal literal.
long long tenths(const std::string& lexical) {
  std::string digits;
  for (char c : lexical) {
    if (c != '.') digits += c;
  }
  EXPECT_EQ(lexical.size() - lexical.find('.'), 2u) << lexical;
  return std::stoll(digits);
}

const Iri& only_object(const Graph& g, const Iri& s, const Iri& p) {
  const Term* found = nullptr;
  std::size_t n = 0;
  g.match(s, p, std::nullopt, [&](const rdf::Triple& t) {
    found = &t.object;
    ++n;
  });
  EXPECT_EQ(n, 1u) << s.value << " " << p.value;
  static const Iri none("urn:none");
  return found && std::holds_alternative<Iri>(*found) ? std::get<Iri>(*found) : none;
}

const rdf::Literal& only_literal(const Graph& g, const Iri& s, const Iri& p) {
  const Term* found = nullptr;
  g.match(s, p, std::nullopt, [&](const rdf::Triple& t) { found = &t.object; });
  static const rdf::Literal none = rdf::plain("");
  EXPECT_TRUE(found && std::holds_alternative<rdf::Literal>(*found)) << s.value << " " << p.value;
  return found && std::holds_alternative<rdf::Literal>(*found) ? std::get<rdf::Literal>(*found) : none;
}

// --- formatting -------------------------------------------------------------

TEST(Format, SecondsHaveOneDigitRoundedHalfUp) {
  EXPECT_EQ(seconds_decimal(121800), "121.8");
  EXPECT_EQ(seconds_decimal(127000), "127.0");
  EXPECT_EQ(seconds_decimal(5200), "5.2");
  EXPECT_EQ(seconds_decimal(0), "0.0");
  EXPECT_EQ(seconds_decimal(49), "0.0");
  EXPECT_EQ(seconds_decimal(50), "0.1");
  EXPECT_EQ(seconds_decimal(1949), "1.9");
  EXPECT_EQ(seconds_decimal(1950), "2.0");
  EXPECT_EQ(seconds_decimal(-150), "-0.2");
  EXPECT_EQ(seconds_decimal(-40), "0.0");
  EXPECT_EQ(seconds_literal(5200), rdf::typed("5.2", rdf::xsd::decimal));
}

TEST(Format, ValueLabelsFollowTheSemanticLabel) {
  EXPECT_EQ(actuator_value_label("Valve Opening State", 1), "open");
  EXPECT_EQ(actuator_value_label("Valve Opening State", 0), "closed");
  EXPECT_EQ(actuator_value_label("Pump Activation State", 1), "on");
  EXPECT_EQ(actuator_value_label("PUMP", 0), "off");
  EXPECT_EQ(actuator_value_label("Valve Opening State", 2), "2");
  EXPECT_EQ(actuator_value_label("Heater Power", 1), "1");
  EXPECT_EQ(actuator_value_label("Heater Power", -3), "-3");
}

TEST(Naming, IrisFollowTheDataScheme) {
  const Naming n("FiveTank", "MixingModule");
  const std::string base = "https://example.org/cpps-kg/data/FiveTank/";
  EXPECT_EQ(n.entity("Tank_B201").value, base + "entity/Tank_B201");
  EXPECT_EQ(n.device("tank_B201.level").value, base + "device/tank_B201.level");
  EXPECT_EQ(n.machine().value, base + "statemachine/MixingModule");
  EXPECT_EQ(n.state(StateId{2}).value, base + "state/MixingModule-q2");
  EXPECT_EQ(n.property_state(StateId{2}, "V204").value, base + "propertystate/MixingModule-q2-V204");
  EXPECT_EQ(n.transition(2).value, base + "transition/MixingModule-t3");
  EXPECT_EQ(n.timing(2).value, base + "timing/MixingModule-t3");
  EXPECT_EQ(n.event(0).value, base + "event/MixingModule-e1");
  EXPECT_EQ(n.event_description(3, "V205").value, base + "eventdescription/MixingModule-e4-V205");
  EXPECT_EQ(n.symptom(127000).value, base + "symptom/MixingModule-127000");
  EXPECT_EQ(n.syndrome(127000).value, base + "syndrome/MixingModule-127000");
  EXPECT_EQ(n.observed_event(9).value, base + "observedevent/MixingModule-9");
  EXPECT_EQ(n.observed_event_description(9, "P201").value,
            base + "eventdescription/MixingModule-observed-9-P201");
}

// --- vocabulary and plant facts ---------------------------------------------

TEST(Vocabulary, DeclaresAlignmentAxioms) {
  const Graph g = vocabulary_graph();
  const Iri sub_class = rdf::iri_in(rdf::ns::rdfs, "subClassOf");
  EXPECT_TRUE(g.contains({isa88::ControlModule, sub_class, sosa::Platform}));
  EXPECT_TRUE(g.contains({ext::TransitionTiming, sub_class, iso17359::ReferenceValue}));
  EXPECT_TRUE(g.contains({sm::StateMachine, sub_class, iso17359::DiagnosticModel}));
  EXPECT_TRUE(g.contains({ext::TimingAnomaly, sub_class, iso17359::Symptom}));
  EXPECT_EQ(g.prefixes(), prefixes());
}

TEST(PlantFacts, ShippedCsvFilesMatchTheEmbeddedCopy) {
  auto slurp = [](const std::string& name) {
    std::ifstream in(std::string(TAKG_SOURCE_DIR) + "/data/five_tank/" + name, std::ios::binary);
    EXPECT_TRUE(in.good()) << name;
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  };
  EXPECT_EQ(slurp("hierarchy.csv"), std::string(kFiveTankHierarchyCsv));
  EXPECT_EQ(slurp("devices.csv"), std::string(kFiveTankDevicesCsv));
}

TEST(PlantFacts, FiveTankContents) {
  const auto f = five_tank_facts();
  EXPECT_EQ(f.hierarchy.size(), 10u);
  EXPECT_EQ(f.devices.size(), 19u);
  ASSERT_NE(f.device("V204"), nullptr);
  EXPECT_EQ(f.device("V204")->property, "ValveV204");
  EXPECT_EQ(f.device("V204")->kind, DeviceKind::Actuator);
  ASSERT_NE(f.entity("Tank_B201"), nullptr);
  EXPECT_EQ(f.entity("Tank_B201")->parent, "MixingModule");
}

TEST(PlantFacts, QuotedFieldsMayContainCommas) {
  const auto f = facts_from("id,class,parent\nCell,ProcessCell,\n",
                            kDeviceHeader + "V1,Actuator,Cell,Prop,\"Valve, main \"\"A\"\"\"\n");
  EXPECT_EQ(f.devices.at(0).semantic_label, "Valve, main \"A\"");
}

TEST(PlantFacts, RejectsBrokenInput) {
  const std::string ok_devices = kDeviceHeader;
  EXPECT_EQ(code_of([&] { facts_from("id,class,parent\nA,Unit,\nA,Unit,\n", ok_devices); }),
            ErrorCode::DuplicateEntity);
  EXPECT_EQ(code_of([&] { facts_from("id,class,parent\nA,Unit,\n", kDeviceHeader + "A,Sensor,A,p,l\n"); }),
            ErrorCode::DuplicateEntity);
  EXPECT_EQ(code_of([&] { facts_from("id,class,parent\nA,Unit,Ghost\n", ok_devices); }),
            ErrorCode::DanglingParent);
  EXPECT_EQ(code_of([&] { facts_from("id,class,parent\nA,Unit,\n", kDeviceHeader + "s,Sensor,Ghost,p,l\n"); }),
            ErrorCode::DanglingParent);
  EXPECT_EQ(code_of([&] { facts_from("id,class,parent\nA,Unit,B\nB,Unit,A\n", ok_devices); }),
            ErrorCode::CyclicHierarchy);
  EXPECT_EQ(code_of([&] { facts_from("id,class,parent\nA,Unit,A\n", ok_devices); }), ErrorCode::CyclicHierarchy);
  EXPECT_EQ(code_of([&] { facts_from("name,class,parent\n", ok_devices); }), ErrorCode::InvalidFormat);
  EXPECT_EQ(code_of([&] { facts_from("", ok_devices); }), ErrorCode::InvalidFormat);
  EXPECT_EQ(code_of([&] { facts_from("id,class,parent\nA,Unit\n", ok_devices); }), ErrorCode::InvalidFormat);
  EXPECT_EQ(code_of([&] { facts_from("id,class,parent\nA,Tank,\n", ok_devices); }), ErrorCode::InvalidFormat);
  EXPECT_EQ(code_of([&] { facts_from("id,class,parent\nA,Unit,\n", kDeviceHeader + "s,Gauge,A,p,l\n"); }),
            ErrorCode::InvalidFormat);
  EXPECT_EQ(code_of([&] { facts_from("id,class,parent\nA,Unit,\n", kDeviceHeader + "s,Sensor,A,p,\"l\n"); }),
            ErrorCode::InvalidFormat);
}

// --- plant mapping ----------------------------------------------------------

TEST(MapPlant, TypesHostsAndProperties) {
  const Graph g = map_plant(five_tank_facts(), "FiveTank");
  EXPECT_EQ(rows(g, R"({"count": true, "where": [["?d", "a", "sosa:Sensor"]]})"),
            std::vector<std::string>{"10"});
  EXPECT_EQ(rows(g, R"({"count": true, "where": [["?d", "a", "sosa:Actuator"]]})"),
            std::vector<std::string>{"9"});
  EXPECT_EQ(rows(g, R"({"select": ["?l"], "where": [["?p", "a", "sosa:Platform"], ["?p", "rdfs:label", "?l"]]})"),
            std::vector<std::string>{"PumpStation"});
  EXPECT_EQ(rows(g, R"({"select": ["?l"], "where": [["?c", "rdfs:label", "\"MixingModule\""],
                     ["?c", "isa88:hasPart", "?u"], ["?u", "a", "isa88:Unit"], ["?u", "rdfs:label", "?l"]]})"),
            (std::vector<std::string>{"Tank_B201", "Tank_B202", "Tank_B203", "Tank_B204", "Tank_B205"}));
  EXPECT_EQ(rows(g, R"({"select": ["?p"], "where": [["?d", "rdfs:label", "\"V204\""],
                     ["?d", "sosa:actsOnProperty", "?x"], ["?x", "a", "sosa:ActuatableProperty"],
                     ["?x", "a", "din61360:DataElement"], ["?x", "rdfs:label", "?p"]]})"),
            std::vector<std::string>{"ValveV204"});
}

// --- automaton mapping ------------------------------------------------------

TEST(MapAutomaton, PropertyStatesOfQ2) {
  const auto& g = reference().graph;
  const auto r = rows(g, R"({"select": ["?prop", "?label"], "where": [["?s", "rdfs:label", "\"q2\""],
      ["?s", "ext:hasPropertyState", "?ps"], ["?ps", "ext:forProperty", "?p"], ["?p", "rdfs:label", "?prop"],
      ["?ps", "ext:hasValueLabel", "?label"]]})");
  EXPECT_EQ(r, (std::vector<std::string>{"PumpP201 on", "ValveDiscrete closed", "ValveIn1 closed",
                                         "ValveIn2 closed", "ValveIn3 closed", "ValveOut1 closed",
                                         "ValveOut2 closed", "ValveOut3 closed", "ValveV204 open"}));
}

TEST(MapAutomaton, TransitionThreeCarriesTheAnomalousEvent) {
  const auto& g = reference().graph;
  const Naming n("FiveTank", "MixingModule");
  EXPECT_EQ(rows(g, R"({"count": true, "where": [["?t", "rdfs:label", "\"t3\""], ["?t", "sm:triggeredBy", "?e"],
                     ["?e", "ext:hasEventDescription", "?d"]]})"),
            std::vector<std::string>{"3"});
  EXPECT_EQ(only_object(g, n.transition(2), sm::sourceState), n.state(StateId{2}));
  EXPECT_EQ(only_object(g, n.transition(2), sm::targetState), n.state(StateId{3}));
  EXPECT_EQ(only_literal(g, n.timing(2), ext::maxDuration).lexical, "121.8");
  EXPECT_EQ(only_object(g, n.transition(6), sm::targetState), n.state(StateId{1}));
  EXPECT_TRUE(g.contains({n.state(StateId{0}), rdf::rdf_type, sm::InitialState}));
  EXPECT_FALSE(g.contains({n.state(StateId{1}), rdf::rdf_type, sm::InitialState}));
}

TEST(MapAutomaton, DegenerateAutomatonHasSeventeenTriples) {
  const auto ordering = takg::testing::signals(2);
  const auto a = learn_automaton(ordering, StateVector::zeros(2), {});
  const auto g = map_automaton(a, Naming("Plant", "Cell"), takg::testing::facts_for(ordering));
  // machine: type, label, owner link; q0: State, InitialState, label,
  // hasState; two property states of five triples each.
  EXPECT_EQ(g.size(), 17u);
  EXPECT_EQ(automaton_triple_count(1, 0, 2, 0), 17u);
}

TEST(MapAutomaton, ReferenceAutomatonMatchesTheCountLaw) {
  const auto& a = reference().automaton;
  std::size_t changes = 0;
  for (const auto& t : a.transitions()) changes += t.event.changes().size();
  const auto g = map_automaton(a, Naming("FiveTank", "MixingModule"), five_tank_facts());
  EXPECT_EQ(g.size(), automaton_triple_count(7, 7, 9, changes));
}

TEST(MapAutomatonProperty, TripleCountLawOnRandomAutomata) {
  Rng rng(71);
  for (int round = 0; round < 100; ++round) {
    const auto a = takg::testing::random_automaton(rng);
    std::size_t changes = 0;
    for (const auto& t : a.transitions()) changes += t.event.changes().size();
    const auto facts = takg::testing::facts_for(a.signal_ordering());
    const auto g = map_automaton(a, Naming("Plant", "Cell"), facts);
    ASSERT_EQ(g.size(), automaton_triple_count(a.state_count(), a.transition_count(),
                                               a.signal_ordering().size(), changes))
        << "round " << round;
  }
}

TEST(MapAutomaton, RejectsSignalsThatAreNotActuators) {
  const auto facts = five_tank_facts();
  const SignalOrdering sensors({SignalId{"tank_B201.level"}});
  const auto a = learn_automaton(sensors, StateVector::zeros(1), {});
  EXPECT_EQ(code_of([&] { map_automaton(a, Naming("FiveTank", "MixingModule"), facts); }),
            ErrorCode::UnknownActuator);
  const SignalOrdering unknown({SignalId{"V999"}});
  const auto b = learn_automaton(unknown, StateVector::zeros(1), {});
  EXPECT_EQ(code_of([&] { map_automaton(b, Naming("FiveTank", "MixingModule"), facts); }),
            ErrorCode::UnknownActuator);
  EXPECT_EQ(code_of([&] { map_automaton(reference().automaton, Naming("FiveTank", "Nowhere"), facts); }),
            ErrorCode::DanglingReference);
}

// --- anomaly mapping --------------------------------------------------------

TEST(MapAnomalies, NoReportsGiveAnEmptyGraph) {
  const auto& r = reference();
  const auto g = map_anomalies({}, {}, r.automaton, Naming("FiveTank", "MixingModule"), five_tank_facts());
  EXPECT_TRUE(g.empty());
  EXPECT_EQ(g.prefixes(), prefixes());
}

TEST(MapAnomalies, ReferenceAnomalyIsFiveSecondsTooLate) {
  const auto& g = reference().graph;
  const Naming n("FiveTank", "MixingModule");
  const Iri sym = n.symptom(reference().detection.reports.at(0).at);
  EXPECT_TRUE(g.contains({sym, rdf::rdf_type, ext::TimingAnomaly}));
  EXPECT_TRUE(g.contains({sym, rdf::rdf_type, iso17359::Symptom}));
  EXPECT_EQ(only_literal(g, sym, iso17359::deviation), rdf::typed("5.2", rdf::xsd::decimal));
  EXPECT_EQ(only_literal(g, sym, iso17359::observedValue).lexical, "127.0");
  EXPECT_EQ(only_literal(g, sym, ext::violatedBound).lexical, "AboveMax");
  EXPECT_EQ(only_object(g, sym, iso17359::referenceValue), n.timing(2));
  EXPECT_EQ(only_object(g, sym, iso17359::onTransition), n.transition(2));
  EXPECT_EQ(only_object(g, sym, ext::observedEvent), n.event(2));
  EXPECT_EQ(only_object(g, sym, ext::inState), n.state(StateId{2}));
  EXPECT_EQ(only_object(g, sym, iso17359::detectedBy), n.machine());
  EXPECT_TRUE(g.contains({n.machine(), rdf::rdf_type, iso17359::DiagnosticModel}));
  EXPECT_TRUE(g.contains({n.timing(2), rdf::rdf_type, iso17359::ReferenceValue}));
}

TEST(MapAnomalies, DeviationEqualsObservedMinusBoundInTheGraph) {
  const auto& g = reference().graph;
  const auto r = rows(g, R"({"select": ["?obs", "?max", "?dev"], "where": [["?sym", "a", "ext:TimingAnomaly"],
      ["?sym", "ext:violatedBound", "\"AboveMax\""], ["?sym", "iso17359:observedValue", "?obs"],
      ["?sym", "iso17359:referenceValue", "?tt"], ["?tt", "ext:maxDuration", "?max"],
      ["?sym", "iso17359:deviation", "?dev"]]})");
  ASSERT_EQ(r.size(), 1u);
  std::istringstream cells(r[0]);
  std::string obs, max, dev;
  cells >> obs >> max >> dev;
  EXPECT_EQ(tenths(obs) - tenths(max), tenths(dev));
  EXPECT_EQ(rows(g, R"({"select": ["?sym"], "where": [["?sym", "iso17359:deviation", "?d"]],
                     "filter": [["?d", ">", 5.1], ["?d", "<=", 5.2]]})")
                .size(),
            1u);
}

TEST(MapAnomalies, SyndromeOfTwoTimingAnomalies) {
  const auto& ref = reference();
  auto reports = ref.detection.reports;
  ASSERT_EQ(reports.size(), 1u);
  auto second = reports[0];
  second.at += 60000;
  reports.push_back(second);
  const auto syndromes = group_syndromes(reports, 300000);
  ASSERT_EQ(syndromes.size(), 1u);
  const Naming n("FiveTank", "MixingModule");
  const auto facts = five_tank_facts();
  Graph g = map_automaton(ref.automaton, n, facts);
  g.merge(map_anomalies(reports, syndromes, ref.automaton, n, facts));
  EXPECT_EQ(cq(g, "CQ11"), (std::vector<std::string>{"Trans.Timing3", "Trans.Timing3"}));
  EXPECT_EQ(rows(g, R"({"select": ["?l"], "where": [["?s", "a", "iso17359:Syndrome"], ["?s", "rdfs:label", "?l"]]})"),
            std::vector<std::string>{"Syndrome@" + std::to_string(reports[0].at)});
}

TEST(MapAnomalies, UnknownEventBecomesAFunctionalAnomaly) {
  const auto& ref = reference();
  const auto& ordering = ref.automaton.signal_ordering();
  auto v = ref.automaton.vector(StateId{0}).values;
  v[ordering.index_of("P201")] = 1;
  const auto e = *diff_vectors(ordering, ref.automaton.vector(StateId{0}), StateVector(v));
  const std::vector<EventRecord> log = {EventRecord{e, 9000}};
  const auto d = run_detector(ref.automaton, StateId{0}, log, ResyncPolicy::Halt);
  ASSERT_EQ(d.reports.size(), 1u);
  ASSERT_EQ(d.reports[0].kind, AnomalyKind::UnknownEvent);
  const Naming n("FiveTank", "MixingModule");
  const auto g = map_anomalies(d.reports, {}, ref.automaton, n, five_tank_facts());
  const Iri sym = n.symptom(9000);
  EXPECT_TRUE(g.contains({sym, rdf::rdf_type, ext::FunctionalAnomaly}));
  EXPECT_TRUE(g.contains({sym, ext::observedEvent, n.observed_event(9000)}));
  EXPECT_TRUE(g.contains({sym, ext::expectedEvent, n.event(0)}));
  EXPECT_TRUE(g.contains({n.observed_event(9000), ext::hasEventDescription,
                          n.observed_event_description(9000, "P201")}));
  EXPECT_EQ(only_literal(g, n.observed_event_description(9000, "P201"), ext::hasValueLabel).lexical, "on");
  EXPECT_EQ(only_literal(g, sym, iso17359::observedValue).lexical, "9.0");
}

TEST(MapAnomalies, RejectsDanglingReports) {
  const auto& ref = reference();
  const Naming n("FiveTank", "MixingModule");
  const auto facts = five_tank_facts();
  auto bad = ref.detection.reports;
  bad[0].source_state = StateId{99};
  EXPECT_EQ(code_of([&] { map_anomalies(bad, {}, ref.automaton, n, facts); }), ErrorCode::DanglingReference);
  bad = ref.detection.reports;
  bad[0].source_state = StateId{5};
  EXPECT_EQ(code_of([&] { map_anomalies(bad, {}, ref.automaton, n, facts); }), ErrorCode::DanglingReference);
  auto syndromes = ref.syndromes;
  syndromes[0].reports[0].at += 1;
  EXPECT_EQ(code_of([&] { map_anomalies(ref.detection.reports, syndromes, ref.automaton, n, facts); }),
            ErrorCode::DanglingReference);
}

// --- whole export -----------------------------------------------------------

TEST(Export, EveryDataNodeIsTypedAndEveryTermIsDeclared) {
  const auto& g = reference().graph;
  const std::string data(ns::ex);
  std::set<Iri> typed_nodes;
  std::set<Iri> classes;
  std::set<Iri> properties;
  const Iri rdfs_class = rdf::iri_in(rdf::ns::rdfs, "Class");
  const Iri rdf_property = rdf::iri_in(rdf::ns::rdf, "Property");
  for (const auto& t : g) {
    if (t.predicate == rdf::rdf_type) {
      typed_nodes.insert(t.subject);
      if (t.object == Term{rdfs_class}) classes.insert(t.subject);
      if (t.object == Term{rdf_property}) properties.insert(t.subject);
    }
  }
  const std::set<Iri> builtin = {rdf::rdf_type, rdf::rdfs_label, rdf::iri_in(rdf::ns::rdfs, "subClassOf")};
  for (const auto& t : g) {
    const bool is_data = t.subject.value.starts_with(data);
    if (!is_data) continue;
    EXPECT_TRUE(typed_nodes.contains(t.subject)) << t.subject.value;
    EXPECT_TRUE(builtin.contains(t.predicate) || properties.contains(t.predicate)) << t.predicate.value;
    if (const auto* o = std::get_if<Iri>(&t.object)) {
      if (t.predicate == rdf::rdf_type) {
        EXPECT_TRUE(classes.contains(*o)) << o->value;
      } else {
        EXPECT_TRUE(o->value.starts_with(data)) << o->value;
        EXPECT_TRUE(typed_nodes.contains(*o)) << t.subject.value << " -> " << o->value;
      }
    }
  }
}

TEST(Export, CompetencyQuestionsAnswerOnTheReferenceRun) {
  const auto& g = reference().graph;
  EXPECT_EQ(cq(g, "CQ1"), (std::vector<std::string>{"B201_isFull", "tank_B201.level"}));
  EXPECT_EQ(cq(g, "CQ2"),
            (std::vector<std::string>{"P201", "V201", "V202", "V203", "V204", "V205", "V206", "V207", "V208"}));
  EXPECT_EQ(cq(g, "CQ3"), std::vector<std::string>{"Tank_B201"});
  EXPECT_EQ(cq(g, "CQ4"), std::vector<std::string>{"Filling Level of Tank_B201"});
  EXPECT_EQ(cq(g, "CQ5"), std::vector<std::string>{"7"});
  EXPECT_EQ(cq(g, "CQ6"), std::vector<std::string>{"open"});
  EXPECT_EQ(cq(g, "CQ7"), std::vector<std::string>{"q2"});
  EXPECT_EQ(cq(g, "CQ8"), (std::vector<std::string>{"e4 ValveDiscrete closed", "e4 ValveIn1 open"}));
  EXPECT_EQ(cq(g, "CQ9"), std::vector<std::string>{"q2 q3"});
  EXPECT_EQ(cq(g, "CQ10"), std::vector<std::string>{"5.2"});
  EXPECT_EQ(cq(g, "CQ11"), std::vector<std::string>{"Trans.Timing3"});
  EXPECT_EQ(cq(g, "CQ12"), (std::vector<std::string>{"PumpP201 0", "ValveDiscrete 1", "ValveV204 0"}));
}

TEST(Export, CompetencyCatalogue) {
  const auto& all = competency_queries();
  ASSERT_EQ(all.size(), 12u);
  for (std::size_t i = 0; i < all.size(); ++i) {
    EXPECT_EQ(all[i].id, "CQ" + std::to_string(i + 1));
    EXPECT_NO_THROW(all[i].query()) << all[i].id;
    const std::string expected = i < 5 ? "R1" : (i < 8 ? "R2" : "R3");
    EXPECT_EQ(all[i].requirement, expected);
  }
  EXPECT_EQ(find_competency_query("CQ13"), nullptr);
}

}  // namespace
}  // namespace takg::kg
