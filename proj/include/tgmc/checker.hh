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

#ifndef TGMC_CHECKER_HH_
#define TGMC_CHECKER_HH_

#include <optional>
#include <string>
#include <vector>

#include "tgmc/buchi.hh"
#include "tgmc/kripke.hh"
#include "tgmc/ltl.hh"
#include "tgmc/model.hh"

namespace tgmc {

struct CheckOptions {
  /// Check phi || u for specs declared with `unless u`.
  bool fairness = true;
  bool symmetry = true;
  /// Treat a violated resilience condition as an error instead of a warning.
  bool strict_rc = false;
  std::size_t max_states = 50'000'000;  // product nodes
};

enum class Outcome { kHolds, kViolated, kInconclusive };

const char* OutcomeName(Outcome o);

/// Ultimately periodic run: prefix, then cycle repeated forever.
struct Lasso {
  std::vector<GlobalState> prefix;
  std::vector<GlobalState> cycle;
  std::vector<std::uint64_t> prefix_labels;
  std::vector<std::uint64_t> cycle_labels;

  ltl::LassoWord Word() const;
  std::size_t size() const { return prefix.size() + cycle.size(); }
};

struct CheckStats {
  std::size_t kripke_states = 0;
  std::size_t product_states = 0;
  std::size_t transitions = 0;
  std::size_t max_depth = 0;
  double elapsed_ms = 0;
};

struct Verdict {
  Outcome outcome = Outcome::kInconclusive;
  std::optional<Lasso> counterexample;  // present iff violated
  CheckStats stats;
  bool fairness_applied = false;
  std::vector<std::string> warnings;

  bool holds() const { return outcome == Outcome::kHolds; }
};

/// The formula whose models are counterexamples, in negation normal form:
/// not(phi || u) when fairness applies, not(phi) otherwise.
ltl::Formula CounterexampleFormula(const ModelDef& model, const SpecDef& spec,
                                   bool fairness);

/// Throws ModelError for an unknown spec, unbound parameters, a strictly
/// checked resilience violation, or a deadlocked state; a lasso that fails
/// replay is reported as std::logic_error.
Verdict CheckSpec(const ModelDef& model, const ParamEnv& env,
                  const std::string& spec_name, const CheckOptions& opts = {});

struct ReplayReport {
  bool ok = true;
  std::string error;
};

/**
 * Independent validation of a counterexample: initial state, every
 * transition against the value-level successor relation, labels, and the
 * truth of the formula (and of not(u), if given) on the lasso word.
 */
ReplayReport ReplayLasso(const Instance& inst, const Lasso& lasso,
                         const ltl::Formula& counterexample_formula,
                         const std::optional<ltl::Formula>& unfairness);

}  // namespace tgmc

#endif /* TGMC_CHECKER_HH_ */
