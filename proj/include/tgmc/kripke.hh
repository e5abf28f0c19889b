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

#ifndef TGMC_KRIPKE_HH_
#define TGMC_KRIPKE_HH_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tgmc/cfa.hh"
#include "tgmc/core.hh"
#include "tgmc/model.hh"

namespace tgmc {

/// Status and locals of one process inside a global state.
struct ProcState {
  std::size_t status = 0;
  std::vector<std::uint64_t> locals;

  auto operator<=>(const ProcState& rhs) const = default;
  bool operator==(const ProcState& rhs) const = default;
};

/// N processes sharing one copy of the shared variables and parameters.
struct GlobalState {
  std::vector<ProcState> procs;
  std::vector<std::uint64_t> shareds;
  ParamEnv params;

  bool operator==(const GlobalState& rhs) const = default;
  /// Orders by (shareds, procs); parameters are never compared.
  bool operator<(const GlobalState& rhs) const;

  /// valuation of process i as seen by the CFA semantics
  Valuation ProcessView(std::size_t i) const;
};

/// Sorts process entries by (status declaration order, locals).
GlobalState Canonicalize(GlobalState g);

/// Quantified evaluation over g.procs; all() of nothing is true.
bool EvalAtomicProp(const AtomicProp& p, const GlobalState& g);

/// Bit i set iff model.atoms[i] holds in g.
std::uint64_t LabelState(const ModelDef& model, const GlobalState& g);

std::string FormatGlobalState(const GlobalState& g, const Declarations& d);

/**
 * The Kripke structure of one parameterized system instance, explored on
 * demand. States are interned as packed words:
 *   [shareds...][status, locals...] x count
 * With symmetry on, process blocks are kept sorted, so each stored state
 * stands for the class of all its process permutations.
 */
class Instance {
 public:
  using Word = StepKernel::Word;
  using StateId = std::uint32_t;

  /// Throws ModelError if env is incomplete or the size is negative.
  Instance(const ModelDef& model, ParamEnv env, bool symmetry = true);

  const ModelDef& model() const { return model_; }
  const ParamEnv& env() const { return env_; }
  bool symmetry() const { return symmetry_; }
  std::size_t count() const { return count_; }
  std::size_t width() const { return width_; }

  // Value-level semantics, independent of the interned store.
  std::vector<GlobalState> InitialGlobalStates() const;
  /// Sorted, deduplicated; canonical when symmetry is on.
  std::vector<GlobalState> GlobalSuccessors(const GlobalState& g) const;

  std::vector<Word> Pack(const GlobalState& g) const;
  GlobalState Unpack(std::span<const Word> words) const;

  // Interned exploration.
  const std::vector<StateId>& InitialStates();
  /// Successor ids of s, computed once; the span is valid until the next
  /// call that may intern states.
  std::span<const StateId> Successors(StateId s);
  std::uint64_t Labels(StateId s) const { return labels_[s]; }
  std::span<const Word> Words(StateId s) const {
    return {arena_.data() + std::size_t{s} * width_, width_};
  }
  GlobalState State(StateId s) const { return Unpack(Words(s)); }
  /// Id of g if it has been stored (after canonicalization).
  std::optional<StateId> Find(const GlobalState& g) const;

  std::size_t num_stored() const { return labels_.size(); }
  std::size_t num_transitions() const { return succ_pool_.size(); }

  /// Breadth-first closure from the initial states; stops early and
  /// returns false once more than max_states are stored.
  bool ExploreAll(std::size_t max_states);

 private:
  struct CompiledAtom {
    AtomicProp::Kind kind;
    Word status = 0;
    bool equal = true;
    bool x_shared = false, y_shared = false;
    std::size_t x = 0, y = 0;
    std::int64_t offset = 0;
  };

  StateId Intern(const Word* words);
  std::size_t Lookup(const Word* words, std::uint64_t hash) const;
  void Grow();
  std::uint64_t ComputeLabels(const Word* words) const;
  void SiftBlock(Word* words, std::size_t i) const;
  int CompareBlocks(const Word* a, const Word* b) const;

  const ModelDef& model_;
  ParamEnv env_;
  bool symmetry_;
  std::size_t count_ = 0;
  std::size_t num_locals_ = 0;
  std::size_t num_shareds_ = 0;
  std::size_t block_ = 0;
  std::size_t width_ = 0;
  StepKernel kernel_;
  std::vector<CompiledAtom> atoms_;

  std::vector<Word> arena_;
  std::vector<std::uint64_t> labels_;
  std::vector<std::uint64_t> hashes_;
  std::vector<StateId> table_;  // open addressing, kEmpty marks free slots
  std::vector<StateId> initial_;
  bool initial_ready_ = false;
  std::vector<std::uint64_t> succ_begin_;
  std::vector<std::uint32_t> succ_count_;
  std::vector<StateId> succ_pool_;

  std::vector<Word> scratch_proc_, scratch_out_, scratch_glob_;
  std::vector<StateId> scratch_ids_;
};

}  // namespace tgmc

#endif /* TGMC_KRIPKE_HH_ */
