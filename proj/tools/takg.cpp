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

// takg: simulate -> learn -> detect -> kg export -> kg query.
//
// Exit codes: 0 success (detect: no anomalies), 3 detect found anomalies,
// 64 usage, 65 bad input data, 66 missing input, 70 internal, 73 cannot
// write output.

#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "takg/pipeline.hpp"

namespace {

using namespace takg;
namespace pl = takg::pipeline;

constexpr int kExitAnomalies = 3;
constexpr int kExitUsage = 64;
constexpr int kExitData = 65;
constexpr int kExitNoInput = 66;
constexpr int kExitInternal = 70;
constexpr int kExitCantCreate = 73;

int exit_code_for(const Error& e) {
  if (const auto* io = dynamic_cast<const pl::IoError*>(&e)) {
    return io->writing() ? kExitCantCreate : kExitNoInput;
  }
  switch (e.code()) {
    case ErrorCode::InvalidFaultPhase:
    case ErrorCode::MalformedQuery:
      return kExitUsage;
    case ErrorCode::NondeterministicTransition:
    case ErrorCode::UnreachableState:
    case ErrorCode::DetectorHalted:
      return kExitInternal;
    default:
      return kExitData;
  }
}

std::vector<fivetank::FaultSpec> parse_faults(const std::vector<std::string>& texts, bool reference) {
  std::vector<fivetank::FaultSpec> faults;
  if (reference) faults.push_back(fivetank::reference_clogging());
  for (const auto& t : texts) faults.push_back(fivetank::parse_fault(t));
  return faults;
}

const std::map<std::string, ResyncPolicy> kPolicies = {{"halt", ResyncPolicy::Halt},
                                                       {"resync", ResyncPolicy::VectorResync}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Timed automata learning, anomaly detection and knowledge graph export"};
  app.set_version_flag("--version", pl::kToolVersion);
  app.require_subcommand(1);

  // simulate
  pl::SimulateOptions sim;
  std::string sim_config;
  std::uint64_t sim_seed = 0;
  std::uint32_t sim_cycles = 0;
  std::vector<std::string> sim_faults;
  bool sim_reference = false;
  auto* simulate = app.add_subcommand("simulate", "Run the five-tank surrogate and write samples.jsonl, truth.json");
  simulate->add_option("--config", sim_config, "Plant config JSON (default: built-in five-tank)")->check(CLI::ExistingFile);
  auto* sim_seed_opt = simulate->add_option("--seed", sim_seed, "Override the config seed");
  auto* sim_cycles_opt = simulate->add_option("--cycles", sim_cycles, "Override the number of cycles");
  simulate->add_option("--fault", sim_faults, "kind,phase,onset_cycle,amount_ms[,cycles]");
  simulate->add_flag("--reference-clogging", sim_reference, "Inject the reference clogging fault");
  simulate->add_option("--out", sim.out_dir, "Output directory")->required();

  // learn
  pl::LearnOptions learn;
  std::string learn_signals;
  std::string learn_initial;
  std::uint64_t learn_window = 0;
  std::string learn_events;
  auto* learn_cmd = app.add_subcommand("learn", "Learn a timed automaton from a sample log");
  learn_cmd->add_option("samples", learn.samples, "Sample log (JSONL)")->required();
  learn_cmd->add_option("--signals", learn_signals, "Comma-separated signal order (default: first appearance)");
  learn_cmd->add_option("--initial", learn_initial, "Comma-separated initial values (default: all zero)");
  learn_cmd->add_option("--cycle-ms", learn.cycle_ms, "Coalescing cycle in ms")->check(CLI::PositiveNumber);
  auto* learn_window_opt = learn_cmd->add_option("--window", learn_window, "Fixed convergence window (default: automatic)")
                               ->check(CLI::PositiveNumber);
  learn_cmd->add_option("--events", learn_events, "Also write the coalesced event log here");
  learn_cmd->add_option("--out", learn.out, "Automaton JSON")->required();

  // detect
  pl::DetectOptions detect;
  std::string detect_policy = "resync";
  auto* detect_cmd = app.add_subcommand("detect", "Replay a sample log against a learned automaton");
  detect_cmd->add_option("automaton", detect.automaton, "Automaton JSON")->required();
  detect_cmd->add_option("samples", detect.samples, "Sample log (JSONL)")->required();
  detect_cmd->add_option("--policy", detect_policy, "Reaction to unknown events")
      ->check(CLI::IsMember({"halt", "resync"}));
  detect_cmd->add_option("--cycle-ms", detect.cycle_ms, "Coalescing cycle in ms")->check(CLI::PositiveNumber);
  detect_cmd->add_option("--syndrome-window-ms", detect.syndrome_window_ms, "Maximum gap inside a syndrome")
      ->check(CLI::PositiveNumber);
  detect_cmd->add_option("--out", detect.out, "Anomaly JSONL")->required();

  // kg export / kg query
  auto* kg_cmd = app.add_subcommand("kg", "Knowledge graph export and queries");
  kg_cmd->require_subcommand(1);
  pl::ExportOptions ex;
  std::string ex_anomalies;
  std::string ex_hierarchy;
  std::string ex_devices;
  auto* export_cmd = kg_cmd->add_subcommand("export", "Write ontology, plant, automaton and anomaly graphs");
  export_cmd->add_option("automaton", ex.automaton, "Automaton JSON")->required();
  export_cmd->add_option("--anomalies", ex_anomalies, "Anomaly JSONL");
  export_cmd->add_option("--hierarchy", ex_hierarchy, "hierarchy.csv (default: built-in five-tank)");
  export_cmd->add_option("--devices", ex_devices, "devices.csv (default: built-in five-tank)");
  export_cmd->add_option("--plant", ex.plant, "Plant name used in instance IRIs");
  export_cmd->add_option("--owner", ex.owner, "Entity owning the state machine");
  export_cmd->add_option("--syndrome-window-ms", ex.syndrome_window_ms, "Recorded syndrome window");
  export_cmd->add_option("--out", ex.out_dir, "Output directory")->required();

  std::vector<std::string> query_ttl;
  std::string query_text;
  bool list_cqs = false;
  auto* query_cmd = kg_cmd->add_subcommand("query", "Run a query; prints TSV with a header row");
  query_cmd->add_option("query", query_text, "CQ1..CQ12, a JSON query file, or inline JSON");
  query_cmd->add_option("--ttl", query_ttl, "Turtle files to load")->check(CLI::ExistingFile);
  query_cmd->add_flag("--list", list_cqs, "List the embedded competency questions");

  // pipeline
  pl::PipelineOptions run;
  std::string run_config;
  std::uint64_t run_seed = 0;
  std::uint32_t run_cycles = 0;
  std::vector<std::string> run_faults;
  bool run_reference = false;
  std::string run_policy = "resync";
  std::uint64_t run_window = 0;
  auto* pipeline_cmd = app.add_subcommand("pipeline", "Run every stage and write manifest.json");
  pipeline_cmd->add_option("--config", run_config, "Plant config JSON")->check(CLI::ExistingFile);
  auto* run_seed_opt = pipeline_cmd->add_option("--seed", run_seed, "Override the config seed");
  auto* run_cycles_opt = pipeline_cmd->add_option("--cycles", run_cycles, "Override the number of cycles");
  pipeline_cmd->add_option("--fault", run_faults, "Fault for the test run");
  pipeline_cmd->add_flag("--reference-clogging", run_reference, "Inject the reference clogging fault");
  pipeline_cmd->add_option("--policy", run_policy, "Reaction to unknown events")
      ->check(CLI::IsMember({"halt", "resync"}));
  auto* run_window_opt = pipeline_cmd->add_option("--window", run_window, "Fixed convergence window")
                             ->check(CLI::PositiveNumber);
  pipeline_cmd->add_option("--out", run.out_dir, "Output directory")->required();

  std::string verify_path;
  auto* verify_cmd = app.add_subcommand("verify", "Check artifacts against a manifest");
  verify_cmd->add_option("manifest", verify_path, "manifest.json")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (simulate->parsed()) {
      if (!sim_config.empty()) sim.config = sim_config;
      if (*sim_seed_opt) sim.seed = sim_seed;
      if (*sim_cycles_opt) sim.cycles = sim_cycles;
      sim.faults = parse_faults(sim_faults, sim_reference);
      const auto r = pl::cmd_simulate(sim);
      std::cerr << "wrote " << r.samples.string() << ", " << r.truth.string() << "\n";
      return 0;
    }
    if (learn_cmd->parsed()) {
      if (!learn_signals.empty()) learn.signals = CLI::detail::split(learn_signals, ',');
      if (!learn_initial.empty()) {
        for (const auto& v : CLI::detail::split(learn_initial, ',')) {
          try {
            learn.initial.push_back(std::stoi(v));
          } catch (const std::exception&) {
            std::cerr << "--initial: '" << v << "' is not an integer\n";
            return kExitUsage;
          }
        }
      }
      if (*learn_window_opt) learn.window = learn_window;
      if (!learn_events.empty()) learn.events_out = learn_events;
      const auto r = pl::cmd_learn(learn);
      std::cerr << r.automaton.state_count() << " states, " << r.automaton.transition_count()
                << " transitions from " << r.metadata.events_ingested << " events; "
                << (r.metadata.converged ? "converged" : "not converged") << " (window "
                << r.metadata.convergence_window << ", " << r.metadata.events_since_last_change
                << " events since last change)\n";
      return 0;
    }
    if (detect_cmd->parsed()) {
      detect.policy = kPolicies.at(detect_policy);
      const auto r = pl::cmd_detect(detect);
      std::cerr << r.detection.reports.size() << " anomalies in " << r.syndromes.size()
                << " syndromes; detector " << to_string(r.detection.status) << "\n";
      return r.detection.reports.empty() ? 0 : kExitAnomalies;
    }
    if (export_cmd->parsed()) {
      if (!ex_anomalies.empty()) ex.anomalies = ex_anomalies;
      if (!ex_hierarchy.empty()) ex.hierarchy = ex_hierarchy;
      if (!ex_devices.empty()) ex.devices = ex_devices;
      const auto r = pl::cmd_kg_export(ex);
      std::cerr << r.merged.size() << " triples written to " << ex.out_dir.string() << "\n";
      return 0;
    }
    if (query_cmd->parsed()) {
      if (list_cqs) {
        for (const auto& cq : kg::competency_queries()) {
          std::cout << cq.id << '\t' << cq.requirement << '\t' << cq.question << '\n';
        }
        return 0;
      }
      if (query_text.empty() || query_ttl.empty()) {
        std::cerr << "kg query: a query and at least one --ttl file are required\n";
        return kExitUsage;
      }
      std::vector<pl::fs::path> files(query_ttl.begin(), query_ttl.end());
      std::cout << rdf::to_tsv(pl::cmd_kg_query(files, query_text));
      return 0;
    }
    if (pipeline_cmd->parsed()) {
      if (!run_config.empty()) run.config = run_config;
      if (*run_seed_opt) run.seed = run_seed;
      if (*run_cycles_opt) run.cycles = run_cycles;
      if (*run_window_opt) run.window = run_window;
      run.faults = parse_faults(run_faults, run_reference);
      run.policy = kPolicies.at(run_policy);
      const auto r = pl::cmd_pipeline(run);
      std::cerr << r.detection.detection.reports.size() << " anomalies; manifest " << r.manifest.string()
                << "\n";
      return 0;
    }
    if (verify_cmd->parsed()) {
      pl::verify_manifest(verify_path);
      std::cerr << "all artifacts match\n";
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "takg: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "takg: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
