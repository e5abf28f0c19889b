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

#ifndef TGMC_BUCHI_HH_
#define TGMC_BUCHI_HH_

#include <cstdint>
#include <vector>

#include "tgmc/ltl.hh"

namespace tgmc {
namespace ltl {

/// Conjunction of literals over at most 64 atoms.
struct LiteralSet {
  std::uint64_t pos = 0;
  std::uint64_t neg = 0;

  bool Satisfied(std::uint64_t letter) const {
    return (letter & pos) == pos && (letter & neg) == 0;
  }
  bool Consistent() const { return (pos & neg) == 0; }
  bool operator==(const LiteralSet& rhs) const = default;
};

/**
 * State-labelled Büchi automaton. State 0 is a pseudo-initial state that
 * reads nothing; entering any other state q consumes one letter, which must
 * satisfy label[q]. A run is accepting if it visits accepting states
 * infinitely often.
 */
struct BuchiAutomaton {
  std::vector<LiteralSet> label;
  std::vector<std::vector<std::uint32_t>> succ;
  std::vector<bool> accepting;
  std::size_t num_acceptance_sets = 0;  // before degeneralization

  std::size_t num_states() const { return label.size(); }
};

/// Tableau construction for an NNF formula, then degeneralization.
BuchiAutomaton BuildBuchi(const Formula& nnf);

/// Whether aut accepts the ultimately periodic word.
bool AcceptsLasso(const BuchiAutomaton& aut, const LassoWord& word);

}  // namespace ltl
}  // namespace tgmc

#endif /* TGMC_BUCHI_HH_ */
