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

#include <gtest/gtest.h>

#include "test_util.hh"
#include "tgmc/checker.hh"
#include "tgmc/harness.hh"

namespace tgmc {
namespace {

using testing::MustParse;
using testing::Params;

Verdict Check(const ModelDef& m, const std::string& params, const std::string& spec,
              CheckOptions opts = {}) {
  return CheckSpec(m, Params(m, params), spec, opts);
}

TEST(CheckerTest, HeadlineRows) {
  ModelDef byz = LoadBuiltin("byz"), omit = LoadBuiltin("omit");
  ModelDef symm = LoadBuiltin("symm"), clean = LoadBuiltin("clean");
  EXPECT_EQ(Check(byz, "n=7,t=2,f=2", "unforg").outcome, Outcome::kHolds);
  EXPECT_EQ(Check(byz, "n=7,t=3,f=2", "relay").outcome, Outcome::kViolated);
  EXPECT_EQ(Check(omit, "n=5,t=2,f=3", "corr").outcome, Outcome::kViolated);
  EXPECT_EQ(Check(symm, "n=5,t=3,fp=3,fs=1", "corr").outcome, Outcome::kViolated);
  EXPECT_EQ(Check(symm, "n=5,t=3,fp=3,fs=1", "relay").outcome, Outcome::kHolds);
  for (const char* spec : {"unforg", "corr", "relay"}) {
    EXPECT_TRUE(Check(clean, "n=3,t=2", spec).holds()) << spec;
  }
}

TEST(CheckerTest, ViolationCarriesReplayableLasso) {
  ModelDef m = LoadBuiltin("byz");
  Verdict v = Check(m, "n=7,t=3,f=2", "relay");
  ASSERT_EQ(v.outcome, Outcome::kViolated);
  ASSERT_TRUE(v.counterexample.has_value());
  const Lasso& l = *v.counterexample;
  EXPECT_FALSE(l.cycle.empty());
  EXPECT_EQ(l.prefix.size(), l.prefix_labels.size());
  EXPECT_EQ(l.cycle.size(), l.cycle_labels.size());
  EXPECT_TRUE(v.fairness_applied);
  Instance inst(m, Params(m, "n=7,t=3,f=2"));
  const auto formula = CounterexampleFormula(m, *m.FindSpec("relay"), true);
  EXPECT_TRUE(ltl::Evaluate(formula, l.Word()));
  EXPECT_TRUE(ReplayLasso(inst, l, formula, m.FindUnfairness("inequity")->formula).ok);
  EXPECT_GT(v.stats.kripke_states, 0u);
  EXPECT_GE(v.stats.product_states, v.stats.kripke_states / 4);
}

TEST(CheckerTest, HoldsHasNoCounterexample) {
  ModelDef m = LoadBuiltin("byz");
  Verdict v = Check(m, "n=4,t=1,f=1", "corr");
  EXPECT_TRUE(v.holds());
  EXPECT_FALSE(v.counterexample.has_value());
  EXPECT_TRUE(v.warnings.empty());
}

TEST(CheckerTest, CounterexampleFormula) {
  ModelDef m = LoadBuiltin("byz");
  const SpecDef& unforg = *m.FindSpec("unforg");
  const SpecDef& corr = *m.FindSpec("corr");
  const ltl::Formula u = m.FindUnfairness("inequity")->formula;
  EXPECT_EQ(CounterexampleFormula(m, unforg, true), ltl::NegateToNnf(unforg.formula));
  EXPECT_EQ(CounterexampleFormula(m, corr, false), ltl::NegateToNnf(corr.formula));
  EXPECT_EQ(CounterexampleFormula(m, corr, true),
            ltl::NegateToNnf(ltl::Formula::Or(corr.formula, u)));
}

// Unforgeability is anchored at the initial state: a violation starts from a
// state with no V1 process and later reaches AC.
TEST(CheckerTest, UnforgeabilityViolationShape) {
  ModelDef m = LoadBuiltin("clean");
  Verdict v = Check(m, "n=3,t=3", "unforg");
  ASSERT_EQ(v.outcome, Outcome::kViolated);
  EXPECT_FALSE(v.warnings.empty());  // resilience does not hold
  const Lasso& l = *v.counterexample;
  const std::size_t v1 = *m.decls.StatusIndex("V1");
  const std::size_t ac = *m.decls.StatusIndex("AC");
  const GlobalState& first = l.prefix.empty() ? l.cycle.front() : l.prefix.front();
  for (const ProcState& p : first.procs) EXPECT_NE(p.status, v1);
  bool reached = false;
  for (const auto* part : {&l.prefix, &l.cycle}) {
    for (const GlobalState& g : *part) {
      for (const ProcState& p : g.procs) reached = reached || p.status == ac;
    }
  }
  EXPECT_TRUE(reached);
  CheckOptions strict;
  strict.strict_rc = true;
  EXPECT_THROW(Check(m, "n=3,t=3", "unforg", strict), ModelError);
}

// all(sv == V1) only ever holds initially, so the G-wrapped correctness
// property agrees with its initial-state form on every instance.
TEST(CheckerTest, CorrectnessIsInitAnchored) {
  const std::pair<const char*, std::vector<const char*>> cases[] = {
      {"byz", {"n=4,t=1,f=1", "n=4,t=1,f=2", "n=5,t=2,f=1"}},
      {"omit", {"n=3,t=1,f=1", "n=5,t=2,f=3"}},
      {"symm", {"n=3,t=1,fp=1,fs=0", "n=5,t=3,fp=3,fs=1"}},
      {"clean", {"n=3,t=2", "n=3,t=3"}},
  };
  for (const auto& [name, params] : cases) {
    std::string text = BuiltinSource(name);
    ModelDef base = LoadBuiltin(name);
    text += "spec corr0 unless " + base.specs[1].unless.value() +
            ": all(sv == V1) -> F some(sv == AC);\n";
    ModelDef m = MustParse(text);
    for (const char* p : params) {
      for (bool fair : {true, false}) {
        CheckOptions o;
        o.fairness = fair;
        EXPECT_EQ(Check(m, p, "corr").outcome, Check(m, p, "corr0").outcome)
            << name << " " << p << " fairness " << fair;
      }
    }
  }
}

TEST(CheckerTest, FairnessIsNecessary) {
  ModelDef m = LoadBuiltin("byz");
  CheckOptions unfair;
  unfair.fairness = false;
  const ltl::Formula u = m.FindUnfairness("inequity")->formula;
  for (const char* spec : {"corr", "relay"}) {
    EXPECT_TRUE(Check(m, "n=7,t=2,f=2", spec).holds()) << spec;
    Verdict v = Check(m, "n=7,t=2,f=2", spec, unfair);
    ASSERT_EQ(v.outcome, Outcome::kViolated) << spec;
    EXPECT_FALSE(v.fairness_applied);
    // the counterexample is itself an unfair run
    EXPECT_TRUE(ltl::Evaluate(u, v.counterexample->Word())) << spec;
  }
}

TEST(CheckerTest, Deterministic) {
  ModelDef m = LoadBuiltin("omit");
  Verdict a = Check(m, "n=5,t=2,f=3", "relay");
  Verdict b = Check(m, "n=5,t=2,f=3", "relay");
  ASSERT_EQ(a.outcome, Outcome::kViolated);
  EXPECT_EQ(a.counterexample->prefix, b.counterexample->prefix);
  EXPECT_EQ(a.counterexample->cycle, b.counterexample->cycle);
  EXPECT_EQ(a.stats.product_states, b.stats.product_states);
  EXPECT_EQ(a.stats.transitions, b.stats.transitions);
}

TEST(CheckerTest, TamperedLassoIsRejected) {
  ModelDef m = LoadBuiltin("byz");
  const ParamEnv env = Params(m, "n=7,t=3,f=2");
  Verdict v = CheckSpec(m, env, "relay");
  ASSERT_TRUE(v.counterexample.has_value());
  Instance inst(m, env);
  const auto formula = CounterexampleFormula(m, *m.FindSpec("relay"), true);
  const auto u = m.FindUnfairness("inequity")->formula;
  const Lasso good = *v.counterexample;
  ASSERT_TRUE(ReplayLasso(inst, good, formula, u).ok);

  Lasso bad_state = good;
  bad_state.cycle.back().shareds[0] += 1;
  EXPECT_FALSE(ReplayLasso(inst, bad_state, formula, u).ok);

  Lasso bad_label = good;
  bad_label.cycle_labels[0] ^= 1;
  EXPECT_FALSE(ReplayLasso(inst, bad_label, formula, u).ok);

  ASSERT_FALSE(good.prefix.empty());
  Lasso no_init = good;
  no_init.prefix[0].procs[0].locals[0] += 1;
  EXPECT_FALSE(ReplayLasso(inst, no_init, formula, u).ok);
  EXPECT_NE(ReplayLasso(inst, no_init, formula, u).error.find("initial"), std::string::npos)
      << ReplayLasso(inst, no_init, formula, u).error;
  // a fair run is no counterexample under fairness, and vice versa
  EXPECT_FALSE(ReplayLasso(inst, good, ltl::NegateToNnf(formula), std::nullopt).ok);
  Verdict unfair = CheckSpec(m, Params(m, "n=7,t=2,f=2"), "corr", {false, true, false});
  Instance inst2(m, Params(m, "n=7,t=2,f=2"));
  EXPECT_FALSE(ReplayLasso(inst2, *unfair.counterexample,
                           CounterexampleFormula(m, *m.FindSpec("corr"), false), u)
                   .ok);
}

TEST(CheckerTest, CapGivesInconclusive) {
  ModelDef m = LoadBuiltin("byz");
  CheckOptions o;
  o.max_states = 10;
  Verdict v = Check(m, "n=7,t=2,f=2", "corr", o);
  EXPECT_EQ(v.outcome, Outcome::kInconclusive);
  EXPECT_FALSE(v.counterexample.has_value());
  EXPECT_STREQ(OutcomeName(v.outcome), "inconclusive");
}

TEST(CheckerTest, SymmetryDoesNotChangeVerdicts) {
  const std::pair<const char*, const char*> cases[] = {
      {"byz", "n=4,t=1,f=1"},        {"byz", "n=4,t=1,f=2"},
      {"omit", "n=5,t=2,f=3"},       {"symm", "n=5,t=3,fp=3,fs=1"},
      {"symm", "n=3,t=1,fp=1,fs=0"}, {"clean", "n=3,t=3"},
  };
  CheckOptions raw;
  raw.symmetry = false;
  for (const auto& [name, params] : cases) {
    ModelDef m = LoadBuiltin(name);
    for (const auto& spec : m.specs) {
      Verdict a = Check(m, params, spec.name);
      Verdict b = Check(m, params, spec.name, raw);
      EXPECT_EQ(a.outcome, b.outcome) << name << " " << params << " " << spec.name;
      EXPECT_LE(a.stats.kripke_states, b.stats.kripke_states);
    }
  }
}

TEST(CheckerTest, Errors) {
  ModelDef m = LoadBuiltin("byz");
  EXPECT_THROW(Check(m, "n=4,t=1,f=1", "nope"), ModelError);
  ParamEnv partial;
  partial.Bind("n", 4);
  EXPECT_THROW(CheckSpec(m, partial, "corr"), ModelError);
}

}  // namespace
}  // namespace tgmc
