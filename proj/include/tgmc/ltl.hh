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

#ifndef TGMC_LTL_HH_
#define TGMC_LTL_HH_

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace tgmc {
namespace ltl {

/**
 * LTL without next. Literals refer to atomic propositions by index into a
 * proposition table owned elsewhere (the model), so the same formula type
 * serves model specifications and abstract test formulas.
 *
 * Release only appears as the dual of until after negation.
 */
struct Formula {
  enum class Kind { kLiteral, kAnd, kOr, kUntil, kRelease, kFinally, kGlobally };

  Kind kind = Kind::kLiteral;
  std::size_t atom = 0;
  bool negated = false;
  std::vector<Formula> children;

  static Formula Lit(std::size_t atom, bool negated = false);
  static Formula And(Formula a, Formula b);
  static Formula Or(Formula a, Formula b);
  static Formula Until(Formula a, Formula b);
  static Formula Release(Formula a, Formula b);
  static Formula Finally(Formula a);
  static Formula Globally(Formula a);

  bool IsLiteral() const { return kind == Kind::kLiteral; }
  bool ContainsRelease() const;
  /// Largest atom index used plus one.
  std::size_t NumAtoms() const;
  std::size_t Depth() const;

  bool operator==(const Formula& rhs) const = default;
};

/// Negation normal form of the negation of f.
Formula NegateToNnf(const Formula& f);

using AtomNamer = std::function<std::string(std::size_t)>;

/// Fully parenthesised rendering with the surface syntax operators.
std::string ToString(const Formula& f, const AtomNamer& name);
/// Renders atoms as p0, p1, ...
std::string ToString(const Formula& f);

/**
 * Ultimately periodic word: letters[0..n) where position n-1 is followed by
 * loop_start. Each letter is the bit set of atoms true at that position.
 */
struct LassoWord {
  std::vector<std::uint64_t> letters;
  std::size_t loop_start = 0;

  std::size_t Next(std::size_t pos) const {
    return pos + 1 < letters.size() ? pos + 1 : loop_start;
  }
};

/// Truth of f at position 0 of the word, by fixpoint over lasso positions.
bool Evaluate(const Formula& f, const LassoWord& word);

}  // namespace ltl
}  // namespace tgmc

#endif /* TGMC_LTL_HH_ */
