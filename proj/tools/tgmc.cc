/*
 * Copyright (c) 2026, The tgmc Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
*/

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "tgmc/checker.hh"
#include "tgmc/dsl.hh"
#include "tgmc/harness.hh"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolated = 1;
constexpr int kExitError = 2;
constexpr int kExitResourceCap = 3;

std::string ReadFileOrThrow(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw tgmc::ModelError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteFileOrThrow(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw tgmc::ModelError("cannot write '" + path + "'");
  out << content;
}

struct CheckArgs {
  std::string model;
  std::string params;
  std::string spec;
  bool no_fairness = false;
  bool no_symmetry = false;
  bool strict_rc = false;
  bool verify_trace = false;
  std::string trace;
  std::string format = "text";
  std::size_t max_states = 50'000'000;
};

int RunCheck(const CheckArgs& a) {
  const tgmc::ModelDef model = tgmc::LoadModel(a.model);
  const tgmc::ParamEnv env = tgmc::ParseParamsBinding(a.params, model);
  tgmc::CheckOptions opts;
  opts.fairness = !a.no_fairness;
  opts.symmetry = !a.no_symmetry;
  opts.strict_rc = a.strict_rc;
  opts.max_states = a.max_states;
  const tgmc::Verdict v = tgmc::CheckSpec(model, env, a.spec, opts);
  for (const auto& w : v.warnings) std::cerr << "warning: " << w << "\n";

  std::string trace_text;
  if (v.counterexample) {
    tgmc::TraceHeader h{a.model, env.ToString(model.decls.params), a.spec,
                        opts.fairness, opts.symmetry};
    trace_text = tgmc::RenderTrace(*v.counterexample, model, h);
    if (!a.trace.empty()) WriteFileOrThrow(a.trace, trace_text);
    if (a.verify_trace) {
      tgmc::ReplayReport rep = tgmc::VerifyTrace(trace_text, model);
      if (!rep.ok) {
        std::cerr << "error: rendered trace does not verify: " << rep.error << "\n";
        return kExitError;
      }
      std::cerr << "trace verified: " << v.counterexample->size()
                << " states replay against the model\n";
    }
  }

  const tgmc::SpecDef* spec = model.FindSpec(a.spec);
  if (a.format == "json") {
    tgmc::RunRecord rec;
    rec.spec.model = a.model;
    rec.spec.params = env.ToString(model.decls.params);
    rec.spec.spec = a.spec;
    rec.spec.expected = tgmc::Expected::kSkip;
    rec.executed = true;
    rec.verdict = v.outcome;
    rec.stats = v.stats;
    rec.counterexample = v.counterexample;
    std::cout << tgmc::RecordsToJson({rec}, &model);
  } else {
    std::cout << "model " << model.name << "  params "
              << env.ToString(model.decls.params) << "  spec " << a.spec << "\n";
    std::cout << "checked: " << tgmc::PrintFormula(spec->formula, model);
    if (v.fairness_applied) std::cout << "  ||  " << *spec->unless;
    std::cout << "\n";
    std::cout << "verdict: " << tgmc::OutcomeName(v.outcome) << "\n";
    std::cout << "states " << v.stats.kripke_states << "  product "
              << v.stats.product_states << "  transitions " << v.stats.transitions
              << "  depth " << v.stats.max_depth << "  time " << std::fixed
              << std::setprecision(1) << v.stats.elapsed_ms << " ms\n";
    if (v.counterexample && a.trace.empty()) std::cout << trace_text;
    if (v.counterexample && !a.trace.empty()) {
      std::cout << "counterexample written to " << a.trace << "\n";
    }
  }
  switch (v.outcome) {
    case tgmc::Outcome::kHolds:
      return kExitOk;
    case tgmc::Outcome::kViolated:
      return kExitViolated;
    case tgmc::Outcome::kInconclusive:
      std::cerr << "resource cap of " << a.max_states << " product states reached\n";
      return kExitResourceCap;
  }
  return kExitError;
}

struct BenchArgs {
  std::string manifest;
  unsigned jobs = 1;
  std::string out;
  std::string json;
  bool no_timing = false;
  bool no_symmetry = false;
  bool quiet = false;
  std::size_t max_states = 50'000'000;
};

int RunBench(const BenchArgs& a) {
  const auto cases = tgmc::LoadManifest(a.manifest);
  tgmc::CheckOptions opts;
  opts.symmetry = !a.no_symmetry;
  opts.max_states = a.max_states;
  const auto records = tgmc::RunManifest(cases, opts, a.jobs);
  const std::string csv = tgmc::RecordsToCsv(records, !a.no_timing);
  if (!a.out.empty()) {
    WriteFileOrThrow(a.out, csv);
  } else if (!a.quiet) {
    std::cout << csv;
  }
  if (!a.json.empty()) WriteFileOrThrow(a.json, tgmc::RecordsToJson(records));
  for (const auto& r : records) {
    if (r.Failing()) {
      std::cerr << "line " << r.spec.line << ": " << r.spec.model << " "
                << r.spec.params << " " << r.spec.spec << ": expected "
                << tgmc::ExpectedName(r.spec.expected) << ", got "
                << (r.error.empty() ? tgmc::OutcomeName(r.verdict) : r.error)
                << "\n";
    }
  }
  const tgmc::Summary s = tgmc::Summarize(records);
  std::cerr << tgmc::SummaryLine(s) << "\n";
  return s.ok() ? kExitOk : kExitViolated;
}

int RunPaths(const std::string& ref) {
  const tgmc::ModelDef model = tgmc::LoadModel(ref);
  const auto paths = tgmc::EnumeratePaths(model.cfa);
  std::cout << model.name << ": " << model.cfa.locations.size() << " locations, "
            << model.cfa.edges.size() << " edges, " << paths.size() << " paths\n";
  for (std::size_t i = 0; i < paths.size(); ++i) {
    std::cout << "  " << i << ": ";
    for (std::size_t k = 0; k < paths[i].size(); ++k) {
      const auto& e = model.cfa.edges[paths[i][k]];
      if (k == 0) std::cout << model.cfa.locations[e.from];
      std::cout << " -> " << model.cfa.locations[e.to];
    }
    std::cout << "\n";
  }
  return kExitOk;
}

int RunVerifyTrace(const std::string& ref, const std::string& path) {
  const tgmc::ModelDef model = tgmc::LoadModel(ref);
  const tgmc::ReplayReport rep = tgmc::VerifyTrace(ReadFileOrThrow(path), model);
  if (!rep.ok) {
    std::cout << "trace rejected: " << rep.error << "\n";
    return kExitViolated;
  }
  std::cout << "trace verified\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tgmc: explicit-state checker for threshold-guarded algorithms"};
  app.require_subcommand(1);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "check one specification of one instance");
  c->add_option("--model", check.model, "model file or builtin:NAME")->required();
  c->add_option("--params", check.params, "parameter binding, e.g. n=7,t=2,f=2")
      ->required();
  c->add_option("--spec", check.spec, "specification name")->required();
  c->add_flag("--no-fairness", check.no_fairness, "ignore `unless` clauses");
  c->add_flag("--no-symmetry", check.no_symmetry, "disable symmetry reduction");
  c->add_flag("--strict-rc", check.strict_rc,
              "reject parameters violating the resilience condition");
  c->add_option("--trace", check.trace, "write the counterexample to FILE");
  c->add_flag("--verify-trace", check.verify_trace,
              "re-parse and replay the rendered counterexample");
  c->add_option("--format", check.format, "text or json")
      ->check(CLI::IsMember({"text", "json"}));
  c->add_option("--max-states", check.max_states, "product state cap");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "run a manifest of cases");
  b->add_option("--manifest", bench.manifest, "CSV manifest")->required();
  b->add_option("--jobs", bench.jobs, "worker threads");
  b->add_option("--out", bench.out, "write CSV results to FILE");
  b->add_option("--json", bench.json, "write JSON results to FILE");
  b->add_flag("--no-timing", bench.no_timing, "omit the elapsed_ms column");
  b->add_flag("--no-symmetry", bench.no_symmetry, "disable symmetry reduction");
  b->add_flag("--quiet", bench.quiet, "do not print CSV to stdout");
  b->add_option("--max-states", bench.max_states, "product state cap per case");

  std::string paths_model;
  auto* p = app.add_subcommand("paths", "list the CFA's initial-to-final paths");
  p->add_option("--model", paths_model, "model file or builtin:NAME")->required();

  std::string vt_model, vt_trace;
  auto* vt = app.add_subcommand("verify-trace", "replay a rendered counterexample");
  vt->add_option("--model", vt_model, "model file or builtin:NAME")->required();
  vt->add_option("--trace", vt_trace, "trace file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitError;
  }

  try {
    if (*c) return RunCheck(check);
    if (*b) return RunBench(bench);
    if (*p) return RunPaths(paths_model);
    if (*vt) return RunVerifyTrace(vt_model, vt_trace);
  } catch (const tgmc::ManifestError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const tgmc::ModelError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
