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

#include "tgmc/harness.hh"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "tgmc/dsl.hh"

namespace tgmc {

namespace {

struct Builtin {
  const char* name;
  const char* source;
};

const Builtin kBuiltins[] = {
#include "tgmc/builtin_models.inc"
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ModelError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ModelDef ParseOrThrow(const std::string& text, const std::string& origin) {
  ParseResult r = ParseModel(text);
  if (!r.ok()) {
    std::string msg = "errors in " + origin + ":";
    for (const auto& d : r.diagnostics) msg += "\n  " + d.ToString();
    throw ModelError(msg);
  }
  return std::move(*r.model);
}

std::vector<std::string> SplitCsvLine(std::string_view line, std::size_t lineno) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cells.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back();
    } else if (c != '\r') {
      cells.back() += c;
    }
  }
  if (quoted) throw ManifestError(lineno, "unterminated quote");
  for (auto& cell : cells) {
    auto b = cell.find_first_not_of(" \t");
    auto e = cell.find_last_not_of(" \t");
    cell = b == std::string::npos ? "" : cell.substr(b, e - b + 1);
  }
  return cells;
}

std::string CsvCell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

bool IsFileRef(const std::string& ref) {
  return ref.find('/') != std::string::npos ||
         (ref.size() > 3 && ref.compare(ref.size() - 3, 3, ".tg") == 0);
}

}  // namespace

std::vector<std::string> BuiltinNames() {
  std::vector<std::string> names;
  for (const auto& b : kBuiltins) names.push_back(b.name);
  return names;
}

std::string BuiltinSource(const std::string& name) {
  for (const auto& b : kBuiltins) {
    if (name == b.name) return b.source;
  }
  throw ModelError("unknown builtin model '" + name + "'");
}

ModelDef LoadBuiltin(const std::string& name) {
  return ParseOrThrow(BuiltinSource(name), "builtin:" + name);
}

ModelDef LoadModel(const std::string& ref) {
  const std::string prefix = "builtin:";
  if (ref.rfind(prefix, 0) == 0) return LoadBuiltin(ref.substr(prefix.size()));
  if (IsFileRef(ref)) return ParseOrThrow(ReadFile(ref), ref);
  return LoadBuiltin(ref);
}

const char* ExpectedName(Expected e) {
  switch (e) {
    case Expected::kHolds:
      return "holds";
    case Expected::kViolated:
      return "violated";
    case Expected::kSkip:
      return "skip";
  }
  return "?";
}

const char* TierName(Tier t) {
  switch (t) {
    case Tier::kRequired:
      return "required";
    case Tier::kExtended:
      return "extended";
    case Tier::kUnmodeled:
      return "unmodeled";
    case Tier::kSkip:
      return "skip";
  }
  return "?";
}

std::vector<CaseSpec> ParseManifest(std::string_view text) {
  std::vector<CaseSpec> out;
  std::size_t lineno = 0;
  bool header_seen = false;
  std::string label;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++lineno;
    std::string trimmed(line);
    trimmed.erase(0, trimmed.find_first_not_of(" \t\r"));
    trimmed.erase(trimmed.find_last_not_of(" \t\r") + 1);
    if (trimmed.empty()) continue;
    if (trimmed[0] == '#') {
      label = trimmed.substr(1);
      label.erase(0, label.find_first_not_of(' '));
      continue;
    }
    auto cells = SplitCsvLine(trimmed, lineno);
    if (!header_seen) {
      const std::vector<std::string> want = {"model", "params", "spec",
                                             "expected", "tier"};
      if (cells != want) {
        throw ManifestError(lineno,
                            "expected header model,params,spec,expected,tier");
      }
      header_seen = true;
      continue;
    }
    if (cells.size() != 5) {
      throw ManifestError(lineno, "expected 5 columns, found " +
                                      std::to_string(cells.size()));
    }
    CaseSpec c;
    c.model = cells[0];
    c.params = cells[1];
    c.spec = cells[2];
    c.line = lineno;
    c.label = std::move(label);
    label.clear();
    if (c.model.empty()) throw ManifestError(lineno, "empty model");
    if (c.spec.empty()) throw ManifestError(lineno, "empty spec");
    static const std::map<std::string, Expected> kExpected = {
        {"holds", Expected::kHolds},
        {"violated", Expected::kViolated},
        {"skip", Expected::kSkip}};
    static const std::map<std::string, Tier> kTier = {
        {"required", Tier::kRequired},
        {"extended", Tier::kExtended},
        {"unmodeled", Tier::kUnmodeled},
        {"skip", Tier::kSkip}};
    auto e = kExpected.find(cells[3]);
    if (e == kExpected.end()) {
      throw ManifestError(lineno, "unknown expected verdict '" + cells[3] + "'");
    }
    auto t = kTier.find(cells[4]);
    if (t == kTier.end()) {
      throw ManifestError(lineno, "unknown tier '" + cells[4] + "'");
    }
    c.expected = e->second;
    c.tier = t->second;
    if (c.expected == Expected::kSkip) c.tier = Tier::kSkip;
    out.push_back(std::move(c));
  }
  return out;
}

std::vector<CaseSpec> LoadManifest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ManifestError(0, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ParseManifest(ss.str());
}

bool RunRecord::Failing() const {
  if (spec.tier == Tier::kSkip || spec.tier == Tier::kUnmodeled) return false;
  if (!error.empty()) return true;
  if (verdict == Outcome::kInconclusive) return spec.tier == Tier::kRequired;
  return !match;
}

RunRecord RunCase(const CaseSpec& c, const ModelDef& model,
                  const CheckOptions& opts) {
  RunRecord rec;
  rec.spec = c;
  if (c.tier == Tier::kSkip) return rec;
  try {
    const ParamEnv env = ParseParamsBinding(c.params, model);
    Verdict v = CheckSpec(model, env, c.spec, opts);
    rec.executed = true;
    rec.verdict = v.outcome;
    rec.stats = v.stats;
    rec.counterexample = std::move(v.counterexample);
    rec.match = (v.outcome == Outcome::kHolds && c.expected == Expected::kHolds) ||
                (v.outcome == Outcome::kViolated &&
                 c.expected == Expected::kViolated);
  } catch (const std::exception& e) {
    rec.error = e.what();
  }
  return rec;
}

std::vector<RunRecord> RunManifest(const std::vector<CaseSpec>& cases,
                                   const CheckOptions& opts, unsigned jobs) {
  std::map<std::string, ModelDef> models;
  std::map<std::string, std::string> load_errors;
  for (const CaseSpec& c : cases) {
    if (c.tier == Tier::kSkip || models.count(c.model) ||
        load_errors.count(c.model)) {
      continue;
    }
    try {
      models.emplace(c.model, LoadModel(c.model));
    } catch (const std::exception& e) {
      load_errors.emplace(c.model, e.what());
    }
  }

  std::vector<RunRecord> records(cases.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < cases.size(); i = next++) {
      const CaseSpec& c = cases[i];
      auto err = load_errors.find(c.model);
      if (c.tier != Tier::kSkip && err != load_errors.end()) {
        records[i].spec = c;
        records[i].error = err->second;
        continue;
      }
      if (c.tier == Tier::kSkip) {
        records[i].spec = c;
        continue;
      }
      records[i] = RunCase(c, models.at(c.model), opts);
    }
  };
  jobs = std::max(1u, jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return records;
}

Summary Summarize(const std::vector<RunRecord>& records) {
  Summary s;
  s.total = records.size();
  for (const RunRecord& r : records) {
    if (r.spec.tier == Tier::kSkip) {
      ++s.skipped;
      continue;
    }
    if (r.executed) ++s.executed;
    if (r.match) ++s.matched;
    if (r.executed && r.verdict == Outcome::kInconclusive) ++s.inconclusive;
    if (r.spec.tier == Tier::kUnmodeled && !r.match) ++s.unmodeled_mismatch;
    if (r.Failing()) ++s.failing;
  }
  return s;
}

std::string SummaryLine(const Summary& s) {
  std::ostringstream os;
  os << s.total << " cases: " << s.executed << " executed, " << s.matched
     << " matched, " << s.failing << " failing, " << s.inconclusive
     << " inconclusive, " << s.skipped << " skipped";
  if (s.unmodeled_mismatch) {
    os << " (" << s.unmodeled_mismatch << " unmodeled rows differ)";
  }
  return os.str();
}

std::string RecordsToCsv(const std::vector<RunRecord>& records, bool timing) {
  std::ostringstream os;
  os << "model,params,spec,expected,tier,verdict,match,states_stored,"
        "product_states,transitions,lasso_length";
  if (timing) os << ",elapsed_ms";
  os << "\n";
  for (const RunRecord& r : records) {
    const std::string verdict = r.spec.tier == Tier::kSkip ? "skip"
                                : !r.error.empty()         ? "error"
                                                           : OutcomeName(r.verdict);
    os << CsvCell(r.spec.model) << "," << CsvCell(r.spec.params) << ","
       << CsvCell(r.spec.spec) << "," << ExpectedName(r.spec.expected) << ","
       << TierName(r.spec.tier) << "," << verdict << ","
       << (r.match ? "yes" : "no") << "," << r.stats.kripke_states << ","
       << r.stats.product_states << "," << r.stats.transitions << ","
       << (r.counterexample ? r.counterexample->size() : 0);
    if (timing) {
      std::ostringstream ms;
      ms.setf(std::ios::fixed);
      ms.precision(1);
      ms << r.stats.elapsed_ms;
      os << "," << ms.str();
    }
    os << "\n";
  }
  return os.str();
}

namespace {

nlohmann::json StateJson(const GlobalState& g, const Declarations& d,
                         bool in_cycle) {
  nlohmann::json j;
  j["in_cycle"] = in_cycle;
  nlohmann::json shareds = nlohmann::json::object();
  for (std::size_t k = 0; k < g.shareds.size(); ++k) {
    shareds[d.shareds[k]] = g.shareds[k];
  }
  j["shareds"] = shareds;
  nlohmann::json procs = nlohmann::json::array();
  for (const ProcState& p : g.procs) {
    nlohmann::json pj;
    pj["sv"] = d.statuses.at(p.status);
    for (std::size_t k = 0; k < p.locals.size(); ++k) pj[d.locals[k]] = p.locals[k];
    procs.push_back(pj);
  }
  j["procs"] = procs;
  return j;
}

}  // namespace

std::string RecordsToJson(const std::vector<RunRecord>& records,
                          const ModelDef* model_for_traces) {
  nlohmann::json arr = nlohmann::json::array();
  for (const RunRecord& r : records) {
    nlohmann::json j;
    j["model"] = r.spec.model;
    j["params"] = r.spec.params;
    j["spec"] = r.spec.spec;
    j["expected"] = ExpectedName(r.spec.expected);
    j["tier"] = TierName(r.spec.tier);
    j["verdict"] = r.spec.tier == Tier::kSkip ? "skip"
                   : !r.error.empty()         ? "error"
                                              : OutcomeName(r.verdict);
    j["match"] = r.match;
    j["states_stored"] = r.stats.kripke_states;
    j["product_states"] = r.stats.product_states;
    j["transitions"] = r.stats.transitions;
    j["elapsed_ms"] = r.stats.elapsed_ms;
    if (!r.error.empty()) j["error"] = r.error;
    if (r.counterexample && model_for_traces) {
      nlohmann::json states = nlohmann::json::array();
      for (const auto& g : r.counterexample->prefix) {
        states.push_back(StateJson(g, model_for_traces->decls, false));
      }
      for (const auto& g : r.counterexample->cycle) {
        states.push_back(StateJson(g, model_for_traces->decls, true));
      }
      j["trace"] = states;
    }
    arr.push_back(j);
  }
  return arr.dump(2) + "\n";
}

std::string RenderTrace(const Lasso& lasso, const ModelDef& model,
                        const TraceHeader& header) {
  std::ostringstream os;
  os << "# tgmc counterexample\n";
  os << "model " << header.model << "\n";
  os << "params " << header.params << "\n";
  os << "spec " << header.spec << "\n";
  os << "fairness " << (header.fairness ? "on" : "off") << "\n";
  os << "symmetry " << (header.symmetry ? "on" : "off") << "\n";
  auto section = [&](const char* name, const std::vector<GlobalState>& states,
                     const std::vector<std::uint64_t>& labels, std::size_t base) {
    os << name << "\n";
    for (std::size_t i = 0; i < states.size(); ++i) {
      os << "  " << (base + i) << ": " << FormatGlobalState(states[i], model.decls)
         << "  ::";
      bool first = true;
      for (std::size_t a = 0; a < model.atoms.size(); ++a) {
        if (!(labels[i] >> a & 1)) continue;
        os << (first ? " " : "; ") << model.AtomName(a);
        first = false;
      }
      os << "\n";
    }
  };
  section("prefix", lasso.prefix, lasso.prefix_labels, 0);
  section("cycle", lasso.cycle, lasso.cycle_labels, lasso.prefix.size());
  os << "end\n";
  return os.str();
}

namespace {

std::vector<std::string> Words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::uint64_t ParseValue(const std::string& s) {
  try {
    std::size_t used = 0;
    unsigned long long v = std::stoull(s, &used);
    if (used != s.size()) throw ModelError("");
    return v;
  } catch (const std::exception&) {
    throw ModelError("bad number '" + s + "' in trace");
  }
}

GlobalState ParseStateLine(const std::string& body, const ModelDef& model,
                           const ParamEnv& env) {
  const Declarations& d = model.decls;
  std::string state = body.substr(0, body.find("::"));
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (true) {
    std::size_t bar = state.find('|', pos);
    parts.push_back(state.substr(pos, bar == std::string::npos ? bar : bar - pos));
    if (bar == std::string::npos) break;
    pos = bar + 1;
  }
  GlobalState g;
  g.params = env;
  g.shareds.assign(d.shareds.size(), 0);
  auto assign = [&](const std::string& kv, bool shared, std::vector<std::uint64_t>& dst) {
    auto eq = kv.find('=');
    if (eq == std::string::npos) throw ModelError("bad assignment '" + kv + "' in trace");
    const auto& names = shared ? d.shareds : d.locals;
    auto it = std::find(names.begin(), names.end(), kv.substr(0, eq));
    if (it == names.end()) {
      throw ModelError("unknown variable '" + kv.substr(0, eq) + "' in trace");
    }
    dst[it - names.begin()] = ParseValue(kv.substr(eq + 1));
  };
  for (const std::string& kv : Words(parts[0])) assign(kv, true, g.shareds);
  for (std::size_t i = 1; i < parts.size(); ++i) {
    auto w = Words(parts[i]);
    if (w.empty()) throw ModelError("empty process entry in trace");
    auto s = d.StatusIndex(w[0]);
    if (!s) throw ModelError("unknown status '" + w[0] + "' in trace");
    ProcState p{*s, std::vector<std::uint64_t>(d.locals.size(), 0)};
    for (std::size_t k = 1; k < w.size(); ++k) assign(w[k], false, p.locals);
    g.procs.push_back(std::move(p));
  }
  return g;
}

}  // namespace

ParsedTrace ParseTrace(std::string_view text, const ModelDef& model) {
  ParsedTrace t;
  std::istringstream in{std::string(text)};
  std::string line;
  enum { kHeader, kPrefix, kCycle, kDone } mode = kHeader;
  std::optional<ParamEnv> env;
  bool saw_params = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto w = Words(line);
    if (w.empty() || w[0][0] == '#') continue;
    if (mode == kDone) throw ModelError("content after 'end' in trace");
    if (w[0] == "prefix" && w.size() == 1) {
      if (mode != kHeader) throw ModelError("misplaced 'prefix' in trace");
      if (!saw_params) throw ModelError("trace has no 'params' line");
      env = ParseParamsBinding(t.header.params, model);
      mode = kPrefix;
      continue;
    }
    if (w[0] == "cycle" && w.size() == 1) {
      if (mode != kPrefix) throw ModelError("misplaced 'cycle' in trace");
      mode = kCycle;
      continue;
    }
    if (w[0] == "end" && w.size() == 1) {
      if (mode != kCycle) throw ModelError("misplaced 'end' in trace");
      mode = kDone;
      continue;
    }
    if (mode == kHeader) {
      std::string rest = w.size() > 1 ? line.substr(line.find(w[1])) : "";
      if (w[0] == "model") {
        t.header.model = rest;
      } else if (w[0] == "params") {
        t.header.params = rest;
        saw_params = true;
      } else if (w[0] == "spec") {
        t.header.spec = rest;
      } else if (w[0] == "fairness" || w[0] == "symmetry") {
        if (rest != "on" && rest != "off") {
          throw ModelError("expected on/off after '" + w[0] + "'");
        }
        (w[0] == "fairness" ? t.header.fairness : t.header.symmetry) = rest == "on";
      } else {
        throw ModelError("unknown trace header '" + w[0] + "'");
      }
      continue;
    }
    auto colon = line.find(':');
    if (colon == std::string::npos) throw ModelError("bad state line in trace");
    GlobalState g = ParseStateLine(line.substr(colon + 1), model, *env);
    (mode == kPrefix ? t.prefix : t.cycle).push_back(std::move(g));
  }
  if (mode != kDone) throw ModelError("trace is truncated (no 'end')");
  if (t.cycle.empty()) throw ModelError("trace has an empty cycle");
  return t;
}

ReplayReport VerifyTrace(std::string_view text, const ModelDef& model) {
  ParsedTrace t = ParseTrace(text, model);
  const SpecDef* spec = model.FindSpec(t.header.spec);
  if (!spec) throw ModelError("unknown spec '" + t.header.spec + "' in trace");
  Instance inst(model, ParseParamsBinding(t.header.params, model),
                t.header.symmetry);
  Lasso lasso;
  lasso.prefix = t.prefix;
  lasso.cycle = t.cycle;
  for (const auto& g : lasso.prefix) lasso.prefix_labels.push_back(LabelState(model, g));
  for (const auto& g : lasso.cycle) lasso.cycle_labels.push_back(LabelState(model, g));
  std::optional<ltl::Formula> unfair;
  const bool fair = t.header.fairness && spec->unless;
  if (fair) unfair = model.FindUnfairness(*spec->unless)->formula;
  return ReplayLasso(inst, lasso, CounterexampleFormula(model, *spec, fair),
                     unfair);
}

}  // namespace tgmc
