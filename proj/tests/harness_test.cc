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
#include <sstream>

#include <gtest/gtest.h>

#include "json.hpp"
#include "test_util.hh"
#include "tgmc/harness.hh"

namespace tgmc {
namespace {

using testing::Params;

constexpr const char* kHeader = "model,params,spec,expected,tier\n";

std::string ReadFile(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::size_t ErrorLine(const std::string& text) {
  try {
    ParseManifest(text);
  } catch (const ManifestError& e) {
    return e.line();
  }
  return 0;
}

TEST(ModelLoadingTest, Builtins) {
  auto names = BuiltinNames();
  EXPECT_EQ(names.size(), 4u);
  for (const auto& n : names) {
    EXPECT_EQ(LoadModel(n), LoadBuiltin(n));
    EXPECT_EQ(LoadModel("builtin:" + n), LoadBuiltin(n));
    EXPECT_EQ(LoadModel(std::string(TGMC_SOURCE_DIR) + "/models/" + n + ".tg"),
              LoadBuiltin(n));
    EXPECT_EQ(BuiltinSource(n), ReadFile(std::string(TGMC_SOURCE_DIR) + "/models/" + n + ".tg"));
  }
  EXPECT_THROW(LoadBuiltin("nope"), ModelError);
  EXPECT_THROW(LoadModel("builtin:nope"), ModelError);
  EXPECT_THROW(LoadModel("/nonexistent/x.tg"), ModelError);
}

TEST(ManifestTest, ParsesRowsAndLabels) {
  auto cases = ParseManifest(std::string(kHeader) +
                             "# B1\n"
                             "byz,\"n=7,t=2,f=2\",unforg,holds,required\n"
                             "\n"
                             "omit,\"n=5,t=2,f=3\",corr,violated,extended\n"
                             "clean,\"n=3,t=3\",corr,skip,required\n");
  ASSERT_EQ(cases.size(), 3u);
  EXPECT_EQ(cases[0].label, "B1");
  EXPECT_EQ(cases[0].params, "n=7,t=2,f=2");
  EXPECT_EQ(cases[0].line, 3u);
  EXPECT_EQ(cases[0].expected, Expected::kHolds);
  EXPECT_EQ(cases[1].label, "");
  EXPECT_EQ(cases[1].tier, Tier::kExtended);
  EXPECT_EQ(cases[1].line, 5u);
  EXPECT_EQ(cases[2].tier, Tier::kSkip);
  EXPECT_TRUE(ParseManifest(kHeader).empty());
  EXPECT_TRUE(ParseManifest("").empty());
}

TEST(ManifestTest, ErrorsCarryLineNumbers) {
  const std::string h = kHeader;
  EXPECT_EQ(ErrorLine("model,params\n"), 1u);
  EXPECT_EQ(ErrorLine(h + "# x\nbyz,\"n=4,t=1,f=1\",unforg,holds\n"), 3u);
  EXPECT_EQ(ErrorLine(h + "byz,\"n=4,t=1,f=1\",unforg,maybe,required\n"), 2u);
  EXPECT_EQ(ErrorLine(h + "byz,\"n=4,t=1,f=1\",unforg,holds,required\n"
                          "byz,\"n=4,t=1,f=1\",unforg,holds,sometimes\n"), 3u);
  EXPECT_EQ(ErrorLine(h + ",\"n=4\",unforg,holds,required\n"), 2u);
  EXPECT_EQ(ErrorLine(h + "byz,\"n=4,t=1,f=1,unforg,holds,required\n"), 2u);
}

TEST(ManifestTest, ShippedManifestsParse) {
  const std::string dir = std::string(TGMC_SOURCE_DIR) + "/tables/";
  EXPECT_EQ(LoadManifest(dir + "table1.csv").size(), 21u);
  EXPECT_EQ(LoadManifest(dir + "appendix_required.csv").size(), 153u);
  EXPECT_EQ(LoadManifest(dir + "appendix_extended.csv").size(), 15u);
  for (const auto& c : LoadManifest(dir + "appendix_other.csv")) {
    EXPECT_TRUE(c.tier == Tier::kSkip || c.tier == Tier::kUnmodeled);
  }
  EXPECT_THROW(LoadManifest(dir + "missing.csv"), std::exception);
}

CaseSpec Case(const std::string& model, const std::string& params,
              const std::string& spec, Expected e, Tier t = Tier::kRequired) {
  CaseSpec c;
  c.model = model;
  c.params = params;
  c.spec = spec;
  c.expected = e;
  c.tier = t;
  return c;
}

TEST(RunCaseTest, HeadlineRows) {
  RunRecord b1 = RunCase(Case("byz", "n=7,t=2,f=2", "unforg", Expected::kHolds),
                         LoadBuiltin("byz"), {});
  EXPECT_TRUE(b1.executed);
  EXPECT_TRUE(b1.match);
  EXPECT_FALSE(b1.Failing());
  RunRecord o6 = RunCase(Case("omit", "n=5,t=2,f=3", "relay", Expected::kViolated),
                         LoadBuiltin("omit"), {});
  EXPECT_EQ(o6.verdict, Outcome::kViolated);
  EXPECT_TRUE(o6.match);
  ASSERT_TRUE(o6.counterexample.has_value());
  EXPECT_LE(o6.counterexample->size(), 12u);
  RunRecord c2 = RunCase(Case("clean", "n=3,t=2", "corr", Expected::kHolds),
                         LoadBuiltin("clean"), {});
  EXPECT_TRUE(c2.match);
}

TEST(RunCaseTest, FailureSemantics) {
  const ModelDef byz = LoadBuiltin("byz");
  RunRecord wrong = RunCase(Case("byz", "n=7,t=2,f=2", "unforg", Expected::kViolated), byz, {});
  EXPECT_FALSE(wrong.match);
  EXPECT_TRUE(wrong.Failing());
  RunRecord unmodeled = RunCase(
      Case("byz", "n=7,t=2,f=2", "unforg", Expected::kViolated, Tier::kUnmodeled), byz, {});
  EXPECT_FALSE(unmodeled.match);
  EXPECT_FALSE(unmodeled.Failing());

  CheckOptions tiny;
  tiny.max_states = 10;
  RunRecord req = RunCase(Case("byz", "n=7,t=2,f=2", "corr", Expected::kHolds), byz, tiny);
  EXPECT_EQ(req.verdict, Outcome::kInconclusive);
  EXPECT_TRUE(req.Failing());
  RunRecord ext = RunCase(
      Case("byz", "n=7,t=2,f=2", "corr", Expected::kHolds, Tier::kExtended), byz, tiny);
  EXPECT_FALSE(ext.Failing());

  RunRecord bad = RunCase(Case("byz", "n=7,t=2", "corr", Expected::kHolds), byz, {});
  EXPECT_FALSE(bad.error.empty());
  EXPECT_TRUE(bad.Failing());
}

TEST(RunManifestTest, EmptyManifest) {
  auto records = RunManifest({}, {}, 1);
  EXPECT_TRUE(records.empty());
  Summary s = Summarize(records);
  EXPECT_EQ(s.total, 0u);
  EXPECT_TRUE(s.ok());
}

TEST(RunManifestTest, DeterministicCsvAcrossJobCounts) {
  auto cases = LoadManifest(std::string(TGMC_SOURCE_DIR) + "/tables/table1.csv");
  cases.push_back(Case("byz", "n=4,t=1,f=1", "corr", Expected::kSkip, Tier::kSkip));
  auto one = RunManifest(cases, {}, 1);
  auto two = RunManifest(cases, {}, 2);
  EXPECT_EQ(RecordsToCsv(one, false), RecordsToCsv(two, false));
  EXPECT_EQ(RecordsToCsv(one, false), RecordsToCsv(RunManifest(cases, {}, 1), false));
  Summary s = Summarize(one);
  EXPECT_EQ(s.total, 22u);
  EXPECT_EQ(s.executed, 21u);
  EXPECT_EQ(s.matched, 21u);
  EXPECT_EQ(s.skipped, 1u);
  EXPECT_TRUE(s.ok());
  EXPECT_FALSE(one.back().executed);
  EXPECT_NE(SummaryLine(s).find("21"), std::string::npos);

  const std::string csv = RecordsToCsv(one, true);
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "model,params,spec,expected,tier,verdict,match,states_stored,"
            "product_states,transitions,lasso_length,elapsed_ms");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 23);

  auto json = nlohmann::json::parse(RecordsToJson(one, nullptr));
  ASSERT_TRUE(json.is_object() || json.is_array());
}

Lasso B6Counterexample(const ModelDef& m) {
  Verdict v = CheckSpec(m, Params(m, "n=7,t=3,f=2"), "relay");
  EXPECT_TRUE(v.counterexample.has_value());
  return *v.counterexample;
}

TEST(TraceTest, RoundTripAndVerify) {
  const ModelDef m = LoadBuiltin("byz");
  const Lasso l = B6Counterexample(m);
  const TraceHeader h{"byz", "n=7,t=3,f=2", "relay", true, true};
  const std::string text = RenderTrace(l, m, h);
  ParsedTrace t = ParseTrace(text, m);
  EXPECT_EQ(t.header.model, "byz");
  EXPECT_EQ(t.header.params, "n=7,t=3,f=2");
  EXPECT_EQ(t.header.spec, "relay");
  EXPECT_TRUE(t.header.fairness);
  EXPECT_EQ(t.prefix, l.prefix);
  EXPECT_EQ(t.cycle, l.cycle);
  for (const auto& g : t.prefix) EXPECT_EQ(g.params, Params(m, "n=7,t=3,f=2"));
  ReplayReport r = VerifyTrace(text, m);
  EXPECT_TRUE(r.ok) << r.error;
  EXPECT_EQ(RenderTrace(Lasso{t.prefix, t.cycle, l.prefix_labels, l.cycle_labels}, m, h), text);
}

TEST(TraceTest, TamperedTraceIsRejected) {
  const ModelDef m = LoadBuiltin("byz");
  const Lasso l = B6Counterexample(m);
  const std::string text = RenderTrace(l, m, {"byz", "n=7,t=3,f=2", "relay", true, true});
  // bump the shared counter of the last cycle state
  std::string bad = text;
  const auto end = bad.rfind("\nend");
  const auto line = bad.rfind("\n  ", end - 1);
  const auto pos = bad.find("nsnt=", line) + 5;
  bad.insert(pos, "1");
  EXPECT_FALSE(VerifyTrace(bad, m).ok);
  std::string wrong_spec = text;
  wrong_spec.replace(wrong_spec.find("spec relay"), 10, "spec unforg");
  EXPECT_FALSE(VerifyTrace(wrong_spec, m).ok);
  EXPECT_THROW(ParseTrace("model byz\n", m), ModelError);
  EXPECT_THROW(ParseTrace(text.substr(0, text.find("cycle")), m), ModelError);
  std::string garbage = text;
  garbage.replace(garbage.find("rcvd="), 5, "rcvx=");
  EXPECT_THROW(ParseTrace(garbage, m), ModelError);
}

TEST(TraceTest, SelfLoopLasso) {
  const ModelDef m = LoadBuiltin("clean");
  Instance inst(m, Params(m, "n=2,t=1"), false);
  GlobalState g = inst.InitialGlobalStates().front();
  ASSERT_EQ(inst.GlobalSuccessors(g), std::vector<GlobalState>{g});
  Lasso l{{g}, {g}, {LabelState(m, g)}, {LabelState(m, g)}};
  const std::string text = RenderTrace(l, m, {"clean", "n=2,t=1", "corr", true, false});
  std::istringstream in(text);
  std::vector<std::string> lines;
  for (std::string s; std::getline(in, s);) lines.push_back(s);
  auto at = [&](const std::string& s) {
    return std::find(lines.begin(), lines.end(), s) - lines.begin();
  };
  EXPECT_EQ(at("cycle") - at("prefix"), 2);  // one prefix state line
  EXPECT_EQ(at("end") - at("cycle"), 2);     // one cycle state line
  EXPECT_EQ(lines[at("prefix") + 1].rfind("  0: nsnt=0 | V0 rcvd=0 | V0 rcvd=0  ::", 0), 0u);
  ParsedTrace t = ParseTrace(text, m);
  EXPECT_EQ(t.prefix.size(), 1u);
  EXPECT_EQ(t.cycle.size(), 1u);
  // corr holds on this run, so it is no counterexample
  EXPECT_FALSE(VerifyTrace(text, m).ok);
}

}  // namespace
}  // namespace tgmc
