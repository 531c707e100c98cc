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

// Generators and reference implementations shared by the unit, property and
// acceptance tests. The oracles here deliberately avoid the library code
// they check.

#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <unistd.h>

#include "takg/takg.hpp"

namespace takg::testing {

using Rng = std::mt19937_64;

inline std::uint64_t uniform(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  return lo + rng() % (hi - lo + 1);
}

inline bool coin(Rng& rng, unsigned percent = 50) { return rng() % 100 < percent; }

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& v) {
  return v[rng() % v.size()];
}

// --- events and automata ----------------------------------------------------

inline SignalOrdering signals(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("S" + std::to_string(i + 1));
  return SignalOrdering::from_names(names);
}

/// Random walk over `states` distinct vectors (the first is the initial one).
/// Consecutive vectors differ, so every step is an event.
inline std::vector<EventRecord> random_walk(Rng& rng, const SignalOrdering& ordering, std::size_t states,
                                            std::size_t steps, SignalValue max_value = 2,
                                            Millis max_gap = 5000) {
  std::set<std::vector<SignalValue>> seen{std::vector<SignalValue>(ordering.size(), 0)};
  std::vector<StateVector> pool{StateVector::zeros(ordering.size())};
  for (int guard = 0; pool.size() < states && guard < 1000; ++guard) {
    std::vector<SignalValue> v(ordering.size());
    for (auto& x : v) x = static_cast<SignalValue>(uniform(rng, 0, max_value));
    if (seen.insert(v).second) pool.emplace_back(v);
  }
  std::vector<EventRecord> log;
  std::size_t current = 0;
  Millis t = 0;
  for (std::size_t i = 0; i < steps && pool.size() > 1; ++i) {
    std::size_t next = rng() % pool.size();
    if (next == current) next = (next + 1) % pool.size();
    t += static_cast<Millis>(uniform(rng, 1, static_cast<std::uint64_t>(max_gap)));
    log.push_back(EventRecord{*diff_vectors(ordering, pool[current], pool[next]), t});
    current = next;
  }
  return log;
}

inline TimedAutomaton random_automaton(Rng& rng) {
  const auto ordering = signals(uniform(rng, 1, 4));
  const auto log = random_walk(rng, ordering, uniform(rng, 1, 6), uniform(rng, 0, 40));
  return learn_automaton(ordering, StateVector::zeros(ordering.size()), log);
}

/// Facts declaring every signal of `ordering` as an actuator of one unit.
inline kg::PlantFacts facts_for(const SignalOrdering& ordering) {
  kg::PlantFacts f;
  f.hierarchy = {{"Plant", "Enterprise", ""}, {"Cell", "ProcessCell", "Plant"}};
  for (const auto& s : ordering.signals()) {
    const bool pump = s.name.back() == '1';
    f.devices.push_back(kg::DeviceRow{s.name, kg::DeviceKind::Actuator, "Cell", "Prop" + s.name,
                                      pump ? "Pump Activation State" : "Valve Opening State"});
  }
  return f;
}

// --- RDF --------------------------------------------------------------------

inline std::string random_text(Rng& rng, std::size_t max_len) {
  static const std::vector<std::string> pieces = {
      "a", "b", "Z", "0", "7", " ", "\"", "'", "\\", "\n", "\t", "\r", "#", "@", "^", ".", ";", ",",
      "<", ">", ":", "_", "-", "\xC3\xA9", "\xE2\x82\xAC", "\xF0\x9F\x98\x80", "\x01", "\x7F", "\"\"\""};
  std::string out;
  const auto n = uniform(rng, 0, max_len);
  for (std::size_t i = 0; i < n; ++i) out += pick(rng, pieces);
  return out;
}

inline std::vector<rdf::Iri> iri_pool(Rng& rng, std::size_t n) {
  static const std::vector<std::string> bases = {"http://example.org/", "http://example.org/ns#",
                                                 "urn:x:", "https://example.org/d/\xC3\xA9t\xC3\xA9/"};
  std::vector<rdf::Iri> out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string local = pick(rng, std::vector<std::string>{"n", "node", "x-y", "a_b", "p/q", "Q"});
    out.emplace_back(pick(rng, bases) + local + std::to_string(i));
  }
  return out;
}

inline rdf::Literal random_literal(Rng& rng) {
  switch (rng() % 6) {
    case 0: return rdf::plain(random_text(rng, 8));
    case 1: return rdf::lang_literal(random_text(rng, 6), pick(rng, std::vector<std::string>{"en", "de", "en-gb"}));
    case 2: return rdf::integer_literal(static_cast<long long>(uniform(rng, 0, 2000)) - 1000);
    case 3: {
      const auto v = static_cast<long long>(uniform(rng, 0, 20000)) - 10000;
      const auto a = v < 0 ? -v : v;
      return rdf::typed(std::string(v < 0 ? "-" : "") + std::to_string(a / 10) + "." + std::to_string(a % 10),
                        rdf::xsd::decimal);
    }
    case 4: return rdf::typed(coin(rng) ? "true" : "false", rdf::xsd::boolean);
    default: return rdf::typed(random_text(rng, 5), rdf::Iri("http://example.org/dt#custom"));
  }
}

/// Random graph of at most `max_triples` triples over a small vocabulary, so
/// subjects and objects repeat and joins have something to find.
inline rdf::Graph random_graph(Rng& rng, std::size_t max_triples) {
  rdf::Graph g;
  if (coin(rng)) g.set_prefix("ex", "http://example.org/");
  if (coin(rng)) g.set_prefix("ns", "http://example.org/ns#");
  if (coin(rng)) g.set_prefix("u", "urn:x:");
  const auto nodes = iri_pool(rng, uniform(rng, 1, 12));
  const auto preds = iri_pool(rng, uniform(rng, 1, 4));
  const auto target = uniform(rng, 0, max_triples);
  for (std::size_t i = 0; i < target; ++i) {
    rdf::Term o = coin(rng, 60) ? rdf::Term{pick(rng, nodes)} : rdf::Term{random_literal(rng)};
    g.insert(pick(rng, nodes), coin(rng, 10) ? rdf::rdf_type : pick(rng, preds), std::move(o));
  }
  return g;
}

/// Nested-loop evaluation: patterns in the given order, every triple tried
/// at every level, filters applied at the end.
inline std::vector<std::vector<rdf::Term>> oracle_query(const rdf::Graph& g, const rdf::Query& q) {
  using Binding = std::map<std::string, rdf::Term>;
  std::vector<Binding> rows{Binding{}};
  auto unify = [](const rdf::PatternTerm& pt, const rdf::Term& value, Binding& b) {
    if (const auto* c = std::get_if<rdf::Term>(&pt)) return *c == value;
    const auto& name = std::get<rdf::Variable>(pt).name;
    auto it = b.find(name);
    if (it == b.end()) {
      b.emplace(name, value);
      return true;
    }
    return it->second == value;
  };
  for (const auto& p : q.where) {
    std::vector<Binding> next;
    for (const auto& b : rows) {
      for (const auto& t : g) {
        Binding c = b;
        if (unify(p.subject, rdf::Term{t.subject}, c) && unify(p.predicate, rdf::Term{t.predicate}, c) &&
            unify(p.object, t.object, c)) {
          next.push_back(std::move(c));
        }
      }
    }
    rows = std::move(next);
  }

  // Numeric filters compare long doubles; generated values have at most one
  // fractional digit, well within its precision.
  auto number = [](const rdf::Term& t) -> std::optional<long double> {
    const auto* l = std::get_if<rdf::Literal>(&t);
    if (!l || (l->datatype != rdf::xsd::integer && l->datatype != rdf::xsd::decimal)) return std::nullopt;
    return std::stold(l->lexical);
  };
  auto value = [](const rdf::PatternTerm& pt, const Binding& b) -> rdf::Term {
    if (const auto* c = std::get_if<rdf::Term>(&pt)) return *c;
    return b.at(std::get<rdf::Variable>(pt).name);
  };
  std::vector<std::vector<rdf::Term>> out;
  const auto names = rdf::projection(q);
  for (const auto& b : rows) {
    bool keep = true;
    for (const auto& f : q.filters) {
      const auto a = value(f.lhs, b);
      const auto c = value(f.rhs, b);
      const auto na = number(a);
      const auto nc = number(c);
      bool ok = false;
      if (f.op == rdf::CompareOp::Equal || f.op == rdf::CompareOp::NotEqual) {
        const bool eq = (na && nc) ? *na == *nc : a == c;
        ok = (f.op == rdf::CompareOp::Equal) == eq;
      } else if (na && nc) {
        switch (f.op) {
          case rdf::CompareOp::Less: ok = *na < *nc; break;
          case rdf::CompareOp::LessEqual: ok = *na <= *nc; break;
          case rdf::CompareOp::Greater: ok = *na > *nc; break;
          case rdf::CompareOp::GreaterEqual: ok = *na >= *nc; break;
          default: break;
        }
      }
      keep = keep && ok;
    }
    if (!keep) continue;
    std::vector<rdf::Term> row;
    for (const auto& n : names) row.push_back(b.at(n));
    out.push_back(std::move(row));
  }
  std::sort(out.begin(), out.end());
  if (q.count) return {{rdf::Term{rdf::integer_literal(static_cast<long long>(out.size()))}}};
  return out;
}

/// Random conjunctive query with up to `max_patterns` patterns; constants are
/// drawn from the graph so that some queries have answers.
inline rdf::Query random_query(Rng& rng, const rdf::Graph& g, std::size_t max_patterns) {
  std::vector<rdf::Triple> triples(g.begin(), g.end());
  const std::vector<std::string> vars = {"a", "b", "c", "d"};
  rdf::Query q;
  const auto n = uniform(rng, 1, max_patterns);
  for (std::size_t i = 0; i < n; ++i) {
    rdf::TriplePattern p{rdf::Variable{pick(rng, vars)}, rdf::Variable{pick(rng, vars)},
                         rdf::Variable{pick(rng, vars)}};
    if (!triples.empty()) {
      const auto& t = pick(rng, triples);
      if (coin(rng, 30)) p.subject = rdf::Term{t.subject};
      if (coin(rng, 60)) p.predicate = rdf::Term{t.predicate};
      if (coin(rng, 25)) p.object = t.object;
    }
    q.where.push_back(std::move(p));
  }
  const auto bound = rdf::projection(q);
  if (!bound.empty() && coin(rng, 30)) {
    const auto op = static_cast<rdf::CompareOp>(rng() % 6);
    q.filters.push_back(rdf::Filter{rdf::Variable{pick(rng, bound)}, op,
                                    rdf::Term{rdf::integer_literal(static_cast<long long>(uniform(rng, 0, 200)) - 100)}});
  }
  if (!bound.empty() && coin(rng, 50)) {
    for (const auto& v : bound) {
      if (coin(rng)) q.select.push_back(rdf::Variable{v});
    }
  }
  q.count = coin(rng, 10);
  return q;
}

// --- reference five-tank export -----------------------------------------------

struct ReferenceRun {
  fivetank::PlantConfig config;
  std::vector<EventRecord> training;  // normal run, default seed
  std::vector<EventRecord> faulty;    // same seed with the reference clogging
  TimedAutomaton automaton;
  DetectionResult detection;
  std::vector<Syndrome> syndromes;
  rdf::Graph graph;  // vocabulary + plant + automaton + anomalies
};

inline ReferenceRun reference_run() {
  ReferenceRun r;
  r.config = fivetank::default_config();
  const auto ordering = r.config.ordering();
  const auto initial = r.config.initial_vector();
  r.training = coalesce_samples(fivetank::simulate(r.config).samples, ordering, initial);
  r.faulty = coalesce_samples(fivetank::simulate(r.config, {fivetank::reference_clogging()}).samples, ordering,
                              initial);
  r.automaton = learn_automaton(ordering, initial, r.training);
  r.detection = run_detector(r.automaton, r.automaton.initial(), r.faulty);
  r.syndromes = group_syndromes(r.detection.reports, 300000);
  const auto facts = kg::five_tank_facts();
  const kg::Naming naming("FiveTank", "MixingModule");
  r.graph = kg::vocabulary_graph();
  r.graph.merge(kg::map_plant(facts, "FiveTank"));
  r.graph.merge(kg::map_automaton(r.automaton, naming, facts));
  r.graph.merge(kg::map_anomalies(r.detection.reports, r.syndromes, r.automaton, naming, facts));
  return r;
}

/// Built once per test binary.
inline const ReferenceRun& reference() {
  static const ReferenceRun r = reference_run();
  return r;
}

// --- files ------------------------------------------------------------------

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::uint64_t counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("takg-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const noexcept { return path_; }

 private:
  std::filesystem::path path_;
};

}  // namespace takg::testing
