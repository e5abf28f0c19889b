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

#ifndef TGMC_HARNESS_HH_
#define TGMC_HARNESS_HH_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tgmc/checker.hh"
#include "tgmc/model.hh"

namespace tgmc {

std::vector<std::string> BuiltinNames();
/// Source text of an embedded model; throws ModelError for unknown names.
std::string BuiltinSource(const std::string& name);
ModelDef LoadBuiltin(const std::string& name);
/// "builtin:NAME", a bare builtin name, or a path to a model file.
ModelDef LoadModel(const std::string& ref);

enum class Expected { kHolds, kViolated, kSkip };
enum class Tier { kRequired, kExtended, kUnmodeled, kSkip };

const char* ExpectedName(Expected e);
const char* TierName(Tier t);

struct CaseSpec {
  std::string model;
  std::string params;
  std::string spec;
  Expected expected = Expected::kSkip;
  Tier tier = Tier::kRequired;
  std::size_t line = 0;  // 1-based line in the manifest
  std::string label;     // preceding comment, if any
};

class ManifestError : public std::runtime_error {
 public:
  ManifestError(std::size_t line, const std::string& msg)
      : std::runtime_error("manifest line " + std::to_string(line) + ": " + msg),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// CSV with header model,params,spec,expected,tier; '#' lines are comments.
std::vector<CaseSpec> ParseManifest(std::string_view text);
std::vector<CaseSpec> LoadManifest(const std::string& path);

struct RunRecord {
  CaseSpec spec;
  bool executed = false;
  Outcome verdict = Outcome::kInconclusive;
  CheckStats stats;
  bool match = false;
  std::string error;
  std::optional<Lasso> counterexample;

  /// Whether this record makes a manifest run fail.
  bool Failing() const;
};

/// Runs one case; fairness is applied exactly when the spec has `unless`
/// (and opts.fairness is set). Errors are captured in the record.
RunRecord RunCase(const CaseSpec& c, const ModelDef& model,
                  const CheckOptions& opts);

/// All non-skip cases on a pool of jobs threads, results in manifest order.
std::vector<RunRecord> RunManifest(const std::vector<CaseSpec>& cases,
                                   const CheckOptions& opts, unsigned jobs);

struct Summary {
  std::size_t total = 0;
  std::size_t executed = 0;
  std::size_t matched = 0;
  std::size_t failing = 0;
  std::size_t skipped = 0;
  std::size_t inconclusive = 0;
  std::size_t unmodeled_mismatch = 0;

  bool ok() const { return failing == 0; }
};

Summary Summarize(const std::vector<RunRecord>& records);
std::string SummaryLine(const Summary& s);

std::string RecordsToCsv(const std::vector<RunRecord>& records, bool timing);
std::string RecordsToJson(const std::vector<RunRecord>& records,
                          const ModelDef* model_for_traces = nullptr);

struct TraceHeader {
  std::string model;
  std::string params;
  std::string spec;
  bool fairness = true;
  bool symmetry = true;
};

/**
 * Text rendering of a counterexample, one state per line:
 *   shared=value ... | STATUS local=value ... | ...  :: ap; ap
 * within "prefix" and "cycle" sections. ParseTrace reads it back.
 */
std::string RenderTrace(const Lasso& lasso, const ModelDef& model,
                        const TraceHeader& header);

struct ParsedTrace {
  TraceHeader header;
  std::vector<GlobalState> prefix;
  std::vector<GlobalState> cycle;
};

/// Throws ModelError on malformed input.
ParsedTrace ParseTrace(std::string_view text, const ModelDef& model);

/// Re-parses a rendered trace and replays it against the model.
ReplayReport VerifyTrace(std::string_view text, const ModelDef& model);

}  // namespace tgmc

#endif /* TGMC_HARNESS_HH_ */
