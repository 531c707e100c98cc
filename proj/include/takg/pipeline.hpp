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

// File-level commands behind the takg tool. Every command reads and writes
// the module file formats only, so each stage can be rerun on its own.
//
// Requires linking OpenSSL::Crypto (manifest hashes).

#pragma once

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "takg/anoda.hpp"
#include "takg/anomaly_io.hpp"
#include "takg/automaton_io.hpp"
#include "takg/event_io.hpp"
#include "takg/fivetank.hpp"
#include "takg/kg/competency.hpp"
#include "takg/kg/mapper.hpp"
#include "takg/kg/plant_facts.hpp"
#include "takg/kg/vocabulary.hpp"
#include "takg/otala.hpp"
#include "takg/rdf/query.hpp"
#include "takg/rdf/turtle.hpp"

namespace takg::pipeline {

namespace fs = std::filesystem;

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr Millis kDefaultSyndromeWindowMs = 300000;

/// Failure to read an input (`writing` false) or create an output.
class IoError : public Error {
 public:
  IoError(const fs::path& path, bool writing, const std::string& reason)
      : Error(ErrorCode::Io, path.string() + ": " + reason), writing_(writing) {}

  bool writing() const noexcept { return writing_; }

 private:
  bool writing_;
};

inline std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, false, "cannot open for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(path.parent_path(), ec);
    if (ec) throw IoError(path.parent_path(), true, ec.message());
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, true, "cannot open for writing");
  out << content;
  out.flush();
  if (!out) throw IoError(path, true, "write failed");
}

/// Runs `f`, prefixing any library error with the file it concerns.
template <typename F>
auto with_file(const fs::path& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

inline std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("SHA-256 failed");
  }
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

// --- simulate ----------------------------------------------------------------

struct SimulateOptions {
  std::optional<fs::path> config;  // default_config() when absent
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> cycles;
  std::vector<fivetank::FaultSpec> faults;
  fs::path out_dir;
};

struct SimulateResult {
  fs::path samples;
  fs::path truth;
  fs::path config;
};

inline fivetank::PlantConfig load_config(const std::optional<fs::path>& path) {
  if (!path) return fivetank::default_config();
  const std::string text = read_file(*path);
  return with_file(*path, [&] {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::InvalidConfig, e.what());
    }
    return fivetank::config_from_json(j);
  });
}

/// Writes samples.jsonl, truth.json and the effective config.json.
inline SimulateResult cmd_simulate(const SimulateOptions& o) {
  auto config = load_config(o.config);
  if (o.seed) config.seed = *o.seed;
  if (o.cycles) config.cycles = *o.cycles;
  const auto sim = fivetank::simulate(config, o.faults);

  SimulateResult r{o.out_dir / "samples.jsonl", o.out_dir / "truth.json", o.out_dir / "config.json"};
  std::ostringstream samples;
  write_samples_jsonl(samples, sim.samples);
  write_file(r.samples, samples.str());
  write_file(r.truth, fivetank::truth_to_json(config, sim.truth).dump(2) + "\n");
  write_file(r.config, fivetank::config_to_json(config).dump(2) + "\n");
  return r;
}

// --- learn -------------------------------------------------------------------

struct LearnOptions {
  fs::path samples;
  /// Signal order; empty takes the order of first appearance in the log.
  std::vector<std::string> signals;
  /// Initial vector; empty means all zero.
  std::vector<SignalValue> initial;
  Millis cycle_ms = kDefaultCycleMs;
  std::optional<std::uint64_t> window;
  fs::path out;
  std::optional<fs::path> events_out;
};

struct LearnResult {
  TimedAutomaton automaton;
  LearnerMetadata metadata;
};

inline std::vector<RawSample> load_samples(const fs::path& path) {
  const std::string text = read_file(path);
  return with_file(path, [&] {
    std::istringstream in(text);
    return read_samples_jsonl(in);
  });
}

inline SignalOrdering ordering_for(const std::vector<std::string>& names,
                                   const std::vector<RawSample>& samples) {
  if (!names.empty()) return SignalOrdering::from_names(names);
  std::vector<std::string> seen;
  for (const auto& s : samples) {
    if (std::find(seen.begin(), seen.end(), s.signal.name) == seen.end()) seen.push_back(s.signal.name);
  }
  return SignalOrdering::from_names(seen);
}

inline StateVector initial_for(const std::vector<SignalValue>& values, const SignalOrdering& ordering) {
  if (values.empty()) return StateVector::zeros(ordering.size());
  if (values.size() != ordering.size()) {
    throw Error(ErrorCode::InvalidConfig, "initial vector has " + std::to_string(values.size()) +
                                              " values for " + std::to_string(ordering.size()) + " signals");
  }
  return StateVector(values);
}

inline LearnResult cmd_learn(const LearnOptions& o) {
  const auto samples = load_samples(o.samples);
  const auto ordering = ordering_for(o.signals, samples);
  const auto initial = initial_for(o.initial, ordering);
  const auto log = with_file(o.samples, [&] { return coalesce_samples(samples, ordering, initial, o.cycle_ms); });

  LearnerSession session(ordering, initial, o.window);
  with_file(o.samples, [&] { session.ingest(log); });
  LearnResult r{session.finalize(), learner_metadata(session, o.cycle_ms)};

  std::ostringstream out;
  write_automaton_json(out, r.automaton, r.metadata);
  write_file(o.out, out.str());
  if (o.events_out) {
    std::ostringstream events;
    write_events_jsonl(events, log);
    write_file(*o.events_out, events.str());
  }
  return r;
}

// --- detect ------------------------------------------------------------------

struct DetectOptions {
  fs::path automaton;
  fs::path samples;
  ResyncPolicy policy = ResyncPolicy::VectorResync;
  Millis cycle_ms = kDefaultCycleMs;
  Millis syndrome_window_ms = kDefaultSyndromeWindowMs;
  fs::path out;
};

struct DetectResult {
  DetectionResult detection;
  std::vector<Syndrome> syndromes;
};

inline TimedAutomaton load_automaton(const fs::path& path) {
  const std::string text = read_file(path);
  return with_file(path, [&] {
    std::istringstream in(text);
    return read_automaton_json(in);
  });
}

/// Replays the sample log from the initial state; anomalies go to `out` as JSONL.
inline DetectResult cmd_detect(const DetectOptions& o) {
  const auto a = load_automaton(o.automaton);
  const auto samples = load_samples(o.samples);
  const auto log = with_file(o.samples, [&] {
    return coalesce_samples(samples, a.signal_ordering(), a.vector(a.initial()), o.cycle_ms);
  });
  DetectResult r;
  r.detection = with_file(o.samples, [&] { return run_detector(a, a.initial(), log, o.policy); });
  r.syndromes = group_syndromes(r.detection.reports, o.syndrome_window_ms);
  std::ostringstream out;
  write_anomalies_jsonl(out, r.syndromes);
  write_file(o.out, out.str());
  return r;
}

// --- kg export ---------------------------------------------------------------

struct ExportOptions {
  fs::path automaton;
  std::optional<fs::path> anomalies;
  /// Plant facts; the embedded five-tank facts when absent.
  std::optional<fs::path> hierarchy;
  std::optional<fs::path> devices;
  std::string plant = "FiveTank";
  std::string owner = "MixingModule";
  Millis syndrome_window_ms = kDefaultSyndromeWindowMs;
  fs::path out_dir;
};

struct ExportResult {
  std::vector<fs::path> files;  // ontology, plant, automaton, anomalies, merged export
  rdf::Graph merged;
};

inline kg::PlantFacts load_facts(const std::optional<fs::path>& hierarchy,
                                 const std::optional<fs::path>& devices) {
  if (!hierarchy && !devices) return kg::five_tank_facts();
  if (!hierarchy || !devices) {
    throw Error(ErrorCode::InvalidConfig, "hierarchy and devices files must be given together");
  }
  const std::string h = read_file(*hierarchy);
  const std::string d = read_file(*devices);
  kg::PlantFacts facts;
  facts.hierarchy = with_file(*hierarchy, [&] {
    std::istringstream in(h);
    return kg::read_hierarchy_csv(in);
  });
  facts.devices = with_file(*devices, [&] {
    std::istringstream in(d);
    return kg::read_devices_csv(in);
  });
  with_file(*devices, [&] { kg::validate(facts); });
  return facts;
}

inline ExportResult cmd_kg_export(const ExportOptions& o) {
  const auto facts = load_facts(o.hierarchy, o.devices);
  const auto a = load_automaton(o.automaton);
  const kg::Naming naming(o.plant, o.owner);

  AnomalyFile anomalies;
  if (o.anomalies) {
    const std::string text = read_file(*o.anomalies);
    anomalies = with_file(*o.anomalies, [&] {
      std::istringstream in(text);
      return read_anomalies_jsonl(in, a, o.syndrome_window_ms);
    });
  }

  const std::vector<std::pair<std::string, rdf::Graph>> parts = {
      {"ontology.ttl", kg::vocabulary_graph()},
      {"plant.ttl", kg::map_plant(facts, o.plant)},
      {"automaton.ttl", with_file(o.automaton, [&] { return kg::map_automaton(a, naming, facts); })},
      {"anomalies.ttl", kg::map_anomalies(anomalies.reports, anomalies.syndromes, a, naming, facts)},
  };
  ExportResult r;
  r.merged = kg::empty_graph();
  for (const auto& [name, g] : parts) {
    r.files.push_back(o.out_dir / name);
    write_file(r.files.back(), rdf::serialize_turtle(g));
    r.merged.merge(g);
  }
  r.files.push_back(o.out_dir / "export.ttl");
  write_file(r.files.back(), rdf::serialize_turtle(r.merged));
  return r;
}

// --- kg query ----------------------------------------------------------------

inline rdf::Graph load_turtle(const std::vector<fs::path>& files) {
  rdf::Graph g = kg::empty_graph();
  for (const auto& f : files) {
    const std::string text = read_file(f);
    g.merge(with_file(f, [&] { return rdf::parse_turtle(text); }));
  }
  return g;
}

/// `query` is a competency question id (CQ1..CQ12), a path to a JSON query
/// file, or inline JSON.
inline rdf::Query resolve_query(const std::string& query) {
  if (const auto* cq = kg::find_competency_query(query)) return cq->query();
  if (!query.empty() && query.front() == '{') return rdf::parse_query_json(query, kg::prefixes());
  const fs::path path(query);
  const std::string text = read_file(path);
  return with_file(path, [&] { return rdf::parse_query_json(text, kg::prefixes()); });
}

inline rdf::ResultSet cmd_kg_query(const std::vector<fs::path>& ttl, const std::string& query) {
  const auto q = resolve_query(query);
  return rdf::query(load_turtle(ttl), q);
}

// --- full pipeline and manifest ------------------------------------------------

struct PipelineOptions {
  std::optional<fs::path> config;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> cycles;
  std::vector<fivetank::FaultSpec> faults;
  ResyncPolicy policy = ResyncPolicy::VectorResync;
  std::optional<std::uint64_t> window;
  fs::path out_dir;
};

struct PipelineResult {
  DetectResult detection;
  ExportResult export_;
  fs::path manifest;
};

inline std::string fault_text(const fivetank::FaultSpec& f) {
  return fivetank::to_string(f.kind) + "," + std::to_string(f.phase_index) + "," +
         std::to_string(f.onset_cycle) + "," + std::to_string(f.amount_ms) + "," +
         std::to_string(f.duration_cycles);
}

/// Writes manifest.json listing every artifact with its SHA-256. Paths are
/// relative to `dir` so two runs in different directories compare equal.
inline fs::path write_manifest(const fs::path& dir, const std::vector<fs::path>& artifacts,
                               nlohmann::ordered_json header) {
  auto list = nlohmann::ordered_json::array();
  for (const auto& p : artifacts) {
    list.push_back({{"path", fs::relative(p, dir).generic_string()}, {"sha256", sha256_hex(read_file(p))}});
  }
  header["artifacts"] = std::move(list);
  const fs::path manifest = dir / "manifest.json";
  write_file(manifest, header.dump(2) + "\n");
  return manifest;
}

/// Checks that every listed artifact exists and still matches its hash.
inline void verify_manifest(const fs::path& manifest) {
  const std::string text = read_file(manifest);
  const auto j = with_file(manifest, [&] {
    try {
      return nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorCode::InvalidFormat, e.what());
    }
  });
  const fs::path dir = manifest.parent_path();
  for (const auto& a : j.at("artifacts")) {
    const fs::path p = dir / a.at("path").get<std::string>();
    if (sha256_hex(read_file(p)) != a.at("sha256").get<std::string>()) {
      throw Error(ErrorCode::InvalidFormat, p.string() + ": content does not match manifest hash");
    }
  }
}

/// simulate (normal and faulty run) -> learn on the normal run -> detect on
/// the faulty run -> export -> manifest.
inline PipelineResult cmd_pipeline(const PipelineOptions& o) {
  const fs::path train = o.out_dir / "train";
  const fs::path test = o.out_dir / "test";
  SimulateOptions sim{o.config, o.seed, o.cycles, {}, train};
  const auto normal = cmd_simulate(sim);
  sim.faults = o.faults;
  sim.out_dir = test;
  const auto faulty = cmd_simulate(sim);

  LearnOptions learn;
  learn.samples = normal.samples;
  learn.window = o.window;
  learn.out = o.out_dir / "automaton.json";
  learn.events_out = train / "events.jsonl";
  const auto config = load_config(normal.config);
  for (const auto& s : config.actuators) learn.signals.push_back(s.name);
  cmd_learn(learn);

  PipelineResult r;
  DetectOptions detect;
  detect.automaton = learn.out;
  detect.samples = faulty.samples;
  detect.policy = o.policy;
  detect.out = o.out_dir / "anomalies.jsonl";
  r.detection = cmd_detect(detect);

  ExportOptions ex;
  ex.automaton = learn.out;
  ex.anomalies = detect.out;
  ex.out_dir = o.out_dir / "kg";
  r.export_ = cmd_kg_export(ex);

  std::vector<fs::path> artifacts = {normal.config, normal.samples, normal.truth, *learn.events_out,
                                     faulty.config, faulty.samples, faulty.truth, learn.out, detect.out};
  artifacts.insert(artifacts.end(), r.export_.files.begin(), r.export_.files.end());

  nlohmann::ordered_json header;
  header["tool"] = "takg";
  header["version"] = kToolVersion;
  header["seed"] = config.seed;
  header["config_sha256"] = sha256_hex(read_file(normal.config));
  auto faults = nlohmann::ordered_json::array();
  for (const auto& f : o.faults) faults.push_back(fault_text(f));
  header["faults"] = std::move(faults);
  header["policy"] = to_string(o.policy);
  r.manifest = write_manifest(o.out_dir, artifacts, std::move(header));
  return r;
}

}  // namespace takg::pipeline
