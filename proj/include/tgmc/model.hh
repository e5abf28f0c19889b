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

#ifndef TGMC_MODEL_HH_
#define TGMC_MODEL_HH_

#include <optional>
#include <string>
#include <vector>

#include "tgmc/cfa.hh"
#include "tgmc/core.hh"
#include "tgmc/ltl.hh"

namespace tgmc {

/**
 * Quantified atomic proposition over all processes of an instance:
 *   all(sv == Z), all(sv != Z), some(sv == Z), some(sv != Z)
 *   some(x + c < y)
 * Every kind is invariant under permutation of process indices.
 */
struct AtomicProp {
  enum class Kind { kForallStatus, kExistsStatus, kExistsLess };

  Kind kind = Kind::kExistsStatus;
  std::size_t status = 0;
  bool equal = true;  // polarity of the status comparison
  VarRef x;
  LinearForm offset;
  VarRef y;

  static AtomicProp ForallStatus(std::size_t status, bool equal = true);
  static AtomicProp ExistsStatus(std::size_t status, bool equal = true);
  static AtomicProp ExistsLess(VarRef x, LinearForm offset, VarRef y);

  std::string ToString(const Declarations& decls) const;
  bool operator==(const AtomicProp& rhs) const = default;
};

struct UnfairnessDef {
  std::string name;
  ltl::Formula formula;
  bool operator==(const UnfairnessDef& rhs) const = default;
};

struct SpecDef {
  std::string name;
  ltl::Formula formula;
  std::optional<std::string> unless;  // unfairness disjunct, if any
  bool operator==(const SpecDef& rhs) const = default;
};

/// A parsed model: declarations, one CFA, propositions and specifications.
struct ModelDef {
  std::string name;
  Declarations decls;
  ResilienceCondition resilience;
  LinearForm size;
  Cfa cfa;
  std::vector<AtomicProp> atoms;
  std::vector<UnfairnessDef> unfairness;
  std::vector<SpecDef> specs;

  const SpecDef* FindSpec(const std::string& name) const;
  const UnfairnessDef* FindUnfairness(const std::string& name) const;

  /// Index of prop in atoms, appending it if new.
  std::size_t InternAtom(const AtomicProp& prop);
  std::string AtomName(std::size_t atom) const;
  ltl::AtomNamer Namer() const;

  bool operator==(const ModelDef& rhs) const = default;
};

}  // namespace tgmc

#endif /* TGMC_MODEL_HH_ */
