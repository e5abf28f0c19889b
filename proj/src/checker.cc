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

#include "tgmc/checker.hh"

#include <algorithm>
#include <chrono>
#include <stdexcept>

#include "tgmc/nested_dfs.hh"

namespace tgmc {

namespace {

class ProductGraph {
 public:
  ProductGraph(Instance& inst, const ltl::BuchiAutomaton& aut)
      : inst_(inst), aut_(aut), b_(aut.num_states()) {}

  void Initial(std::vector<std::uint64_t>& out) {
    for (Instance::StateId s : inst_.InitialStates()) {
      const std::uint64_t l = inst_.Labels(s);
      for (std::uint32_t q : aut_.succ[0]) {
        if (aut_.label[q].Satisfied(l)) out.push_back(Encode(s, q));
      }
    }
  }

  void Successors(std::uint64_t node, std::vector<std::uint64_t>& out) {
    const auto s = static_cast<Instance::StateId>(node / b_);
    const auto& qs = aut_.succ[node % b_];
    for (Instance::StateId t : inst_.Successors(s)) {
      const std::uint64_t l = inst_.Labels(t);
      for (std::uint32_t q : qs) {
        if (aut_.label[q].Satisfied(l)) out.push_back(Encode(t, q));
      }
    }
  }

  bool Accepting(std::uint64_t node) const { return aut_.accepting[node % b_]; }

  Instance::StateId KripkeState(std::uint64_t node) const {
    return static_cast<Instance::StateId>(node / b_);
  }

 private:
  std::uint64_t Encode(Instance::StateId s, std::uint32_t q) const {
    return std::uint64_t{s} * b_ + q;
  }

  Instance& inst_;
  const ltl::BuchiAutomaton& aut_;
  std::uint64_t b_;
};

}  // namespace

const char* OutcomeName(Outcome o) {
  switch (o) {
    case Outcome::kHolds:
      return "holds";
    case Outcome::kViolated:
      return "violated";
    case Outcome::kInconclusive:
      return "inconclusive";
  }
  return "?";
}

ltl::LassoWord Lasso::Word() const {
  ltl::LassoWord w;
  w.letters = prefix_labels;
  w.letters.insert(w.letters.end(), cycle_labels.begin(), cycle_labels.end());
  w.loop_start = prefix_labels.size();
  return w;
}

ltl::Formula CounterexampleFormula(const ModelDef& model, const SpecDef& spec,
                                   bool fairness) {
  if (fairness && spec.unless) {
    const UnfairnessDef* u = model.FindUnfairness(*spec.unless);
    if (!u) throw ModelError("unknown unfairness '" + *spec.unless + "'");
    return ltl::NegateToNnf(ltl::Formula::Or(spec.formula, u->formula));
  }
  return ltl::NegateToNnf(spec.formula);
}

Verdict CheckSpec(const ModelDef& model, const ParamEnv& env,
                  const std::string& spec_name, const CheckOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const SpecDef* spec = model.FindSpec(spec_name);
  if (!spec) throw ModelError("unknown spec '" + spec_name + "'");

  Verdict v;
  Instance inst(model, env, opts.symmetry);
  if (!model.resilience.Holds(env)) {
    const std::string msg = "resilience condition " +
                            model.resilience.ToString() + " does not hold for " +
                            env.ToString(model.decls.params);
    if (opts.strict_rc) throw ModelError(msg);
    v.warnings.push_back(msg);
  }

  v.fairness_applied = opts.fairness && spec->unless.has_value();
  const ltl::Formula bad = CounterexampleFormula(model, *spec, opts.fairness);
  const ltl::BuchiAutomaton aut = ltl::BuildBuchi(bad);
  ProductGraph graph(inst, aut);
  NestedDfsResult r = NestedDfs(graph, opts.max_states);

  v.stats.kripke_states = inst.num_stored();
  v.stats.product_states = r.stats.states;
  v.stats.transitions = r.stats.transitions;
  v.stats.max_depth = r.stats.max_depth;
  if (r.aborted) {
    v.outcome = Outcome::kInconclusive;
  } else if (!r.found) {
    v.outcome = Outcome::kHolds;
  } else {
    v.outcome = Outcome::kViolated;
    ShortenLasso(graph, r);
    Lasso lasso;
    for (std::uint64_t n : r.prefix) {
      lasso.prefix.push_back(inst.State(graph.KripkeState(n)));
      lasso.prefix_labels.push_back(inst.Labels(graph.KripkeState(n)));
    }
    for (std::uint64_t n : r.cycle) {
      lasso.cycle.push_back(inst.State(graph.KripkeState(n)));
      lasso.cycle_labels.push_back(inst.Labels(graph.KripkeState(n)));
    }
    std::optional<ltl::Formula> unfair;
    if (v.fairness_applied) {
      unfair = model.FindUnfairness(*spec->unless)->formula;
    }
    ReplayReport rep = ReplayLasso(inst, lasso, bad, unfair);
    if (!rep.ok) {
      throw std::logic_error("counterexample failed replay: " + rep.error);
    }
    v.counterexample = std::move(lasso);
  }
  v.stats.elapsed_ms = std::chrono::duration<double, std::milli>(
                           std::chrono::steady_clock::now() - start)
                           .count();
  return v;
}

ReplayReport ReplayLasso(const Instance& inst, const Lasso& lasso,
                         const ltl::Formula& counterexample_formula,
                         const std::optional<ltl::Formula>& unfairness) {
  auto fail = [](std::string msg) { return ReplayReport{false, std::move(msg)}; };
  if (lasso.cycle.empty()) return fail("empty cycle");
  if (lasso.prefix.size() != lasso.prefix_labels.size() ||
      lasso.cycle.size() != lasso.cycle_labels.size()) {
    return fail("label count does not match state count");
  }
  std::vector<GlobalState> run = lasso.prefix;
  run.insert(run.end(), lasso.cycle.begin(), lasso.cycle.end());
  std::vector<std::uint64_t> labels = lasso.prefix_labels;
  labels.insert(labels.end(), lasso.cycle_labels.begin(),
                lasso.cycle_labels.end());
  const Declarations& d = inst.model().decls;

  const auto init = inst.InitialGlobalStates();
  if (std::find(init.begin(), init.end(), run[0]) == init.end()) {
    return fail("first state is not initial: " + FormatGlobalState(run[0], d));
  }
  for (std::size_t i = 0; i < run.size(); ++i) {
    if (LabelState(inst.model(), run[i]) != labels[i]) {
      return fail("wrong labels at position " + std::to_string(i));
    }
    const GlobalState& next =
        i + 1 < run.size() ? run[i + 1] : run[lasso.prefix.size()];
    const auto succ = inst.GlobalSuccessors(run[i]);
    if (!std::binary_search(succ.begin(), succ.end(), next)) {
      return fail("no transition from position " + std::to_string(i) + ": " +
                  FormatGlobalState(run[i], d) + "  ->  " +
                  FormatGlobalState(next, d));
    }
  }
  const ltl::LassoWord word = lasso.Word();
  if (!ltl::Evaluate(counterexample_formula, word)) {
    return fail("formula is false on the lasso word");
  }
  if (unfairness && ltl::Evaluate(*unfairness, word)) {
    return fail("lasso is an unfair run");
  }
  return {};
}

}  // namespace tgmc
