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

#ifndef TGMC_TESTS_TEST_UTIL_HH_
#define TGMC_TESTS_TEST_UTIL_HH_

#include <string>

#include "tgmc/dsl.hh"
#include "tgmc/harness.hh"

namespace tgmc::testing {

inline ParamEnv Params(const ModelDef& m, const std::string& text) {
  return ParseParamsBinding(text, m);
}

/// Parses text, failing the test and returning an empty model on errors.
inline ModelDef MustParse(const std::string& text) {
  ParseResult r = ParseModel(text);
  std::string all;
  for (const auto& d : r.diagnostics) all += d.ToString() + "\n";
  if (!r.ok()) throw ModelError("parse failed:\n" + all);
  return *r.model;
}

}  // namespace tgmc::testing

#endif /* TGMC_TESTS_TEST_UTIL_HH_ */
