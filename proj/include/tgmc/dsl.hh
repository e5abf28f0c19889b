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

#ifndef TGMC_DSL_HH_
#define TGMC_DSL_HH_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tgmc/model.hh"

namespace tgmc {

struct Diagnostic {
  std::size_t line = 0;
  std::size_t column = 0;
  std::string message;

  std::string ToString() const;
};

struct ParseResult {
  std::optional<ModelDef> model;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return model.has_value() && diagnostics.empty(); }
};

/**
 * Parses a .tg model. Syntax errors are recovered at the next ';' so one run
 * reports as many problems as possible; a model is only returned when there
 * are no diagnostics at all.
 */
ParseResult ParseModel(std::string_view text);

/// "n=7,t=2,f=2" against model's parameters. Throws ModelError.
ParamEnv ParseParamsBinding(std::string_view text, const ModelDef& model);

/// Surface syntax that ParseModel maps back to an identical ModelDef.
std::string PrintModel(const ModelDef& model);
std::string PrintFormula(const ltl::Formula& f, const ModelDef& model);

}  // namespace tgmc

#endif /* TGMC_DSL_HH_ */
