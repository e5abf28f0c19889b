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

#ifndef TGMC_CFA_HH_
#define TGMC_CFA_HH_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "tgmc/core.hh"

namespace tgmc {

/// A per-process data variable: local (one copy per process) or shared.
struct VarRef {
  enum class Scope { kLocal, kShared };
  Scope scope = Scope::kLocal;
  std::size_t index = 0;

  bool operator==(const VarRef& rhs) const = default;
};

/**
 * Names declared by a model. Everything downstream refers to statuses,
 * variables and parameters by their index in these lists, so declaration
 * order doubles as the deterministic iteration order.
 */
struct Declarations {
  std::vector<std::string> params;
  std::vector<std::string> statuses;
  std::vector<std::size_t> initial_statuses;
  std::vector<std::string> locals;
  std::vector<std::string> shareds;

  std::optional<std::size_t> StatusIndex(const std::string& name) const;
  std::optional<VarRef> Variable(const std::string& name) const;
  bool IsParam(const std::string& name) const;
  const std::string& VarName(const VarRef& ref) const;

  bool operator==(const Declarations& rhs) const = default;
};

/// Guard grammar: sv == Z, threshold <= var, conjunction, negation.
struct GuardExpr {
  enum class Kind { kStatusIs, kThreshold, kAnd, kNot };

  Kind kind = Kind::kStatusIs;
  std::size_t status = 0;    // kStatusIs
  LinearForm threshold;      // kThreshold: threshold <= var
  VarRef var;                // kThreshold
  std::vector<GuardExpr> children;

  static GuardExpr StatusIs(std::size_t status);
  static GuardExpr Threshold(LinearForm threshold, VarRef var);
  static GuardExpr And(GuardExpr a, GuardExpr b);
  static GuardExpr Not(GuardExpr a);

  bool operator==(const GuardExpr& rhs) const = default;
};

/**
 * One atom of a pick condition: lhs <= rhs + offset, where either side is a
 * variable or the placeholder eps (std::nullopt).
 */
struct PickAtom {
  std::optional<VarRef> lhs;
  std::optional<VarRef> rhs;
  LinearForm offset;

  bool operator==(const PickAtom& rhs) const = default;
};

struct PickCond {
  std::vector<PickAtom> atoms;

  /// True iff some atom reads eps <= var + offset.
  bool HasUpperBound() const;
  bool operator==(const PickCond& rhs) const = default;
};

struct GuardOp {
  GuardExpr expr;
  bool operator==(const GuardOp& rhs) const = default;
};
struct SetStatusOp {
  std::size_t status = 0;
  bool operator==(const SetStatusOp& rhs) const = default;
};
struct IncOp {
  VarRef var;
  bool operator==(const IncOp& rhs) const = default;
};
struct PickOp {
  VarRef target;
  PickCond cond;
  bool operator==(const PickOp& rhs) const = default;
};

using Op = std::variant<GuardOp, SetStatusOp, IncOp, PickOp>;

struct Edge {
  std::size_t from = 0;
  std::size_t to = 0;
  Op op;
  bool operator==(const Edge& rhs) const = default;
};

/// Edge-labelled acyclic graph; each initial-to-final path is one step.
struct Cfa {
  std::vector<std::string> locations;
  std::size_t initial = 0;
  std::size_t final = 0;
  std::vector<Edge> edges;

  std::optional<std::size_t> LocationIndex(const std::string& name) const;
  bool operator==(const Cfa& rhs) const = default;
};

/// One process state: status, locals, shareds and the fixed parameters.
struct Valuation {
  std::size_t status = 0;
  std::vector<std::uint64_t> locals;
  std::vector<std::uint64_t> shareds;
  ParamEnv params;

  std::uint64_t Get(const VarRef& ref) const {
    return ref.scope == VarRef::Scope::kLocal ? locals[ref.index]
                                              : shareds[ref.index];
  }
  std::uint64_t& At(const VarRef& ref) {
    return ref.scope == VarRef::Scope::kLocal ? locals[ref.index]
                                              : shareds[ref.index];
  }

  bool operator==(const Valuation& rhs) const = default;
  /// Orders by (status, locals, shareds); parameters are never compared.
  bool operator<(const Valuation& rhs) const;
};

struct CfaDiagnostic {
  std::string message;
  std::optional<std::size_t> edge;  // offending edge, when there is one
};

/// Empty result means the CFA is well formed against decls.
std::vector<CfaDiagnostic> ValidateCfa(const Cfa& cfa,
                                       const Declarations& decls);

/// A maximal initial-to-final path as the indices of its edges.
using CfaPath = std::vector<std::size_t>;

/// All initial-to-final paths, lexicographic in edge declaration order.
std::vector<CfaPath> EnumeratePaths(const Cfa& cfa);

/// Closed interval of naturals; lo > hi encodes the empty set.
struct Interval {
  std::uint64_t lo = 1;
  std::uint64_t hi = 0;

  bool empty() const { return lo > hi; }
  std::uint64_t size() const { return empty() ? 0 : hi - lo + 1; }
  bool operator==(const Interval& rhs) const {
    return (empty() && rhs.empty()) || (lo == rhs.lo && hi == rhs.hi);
  }
};

/// {e in N | v satisfies cond[e/eps]}. Throws ModelError if unbounded.
Interval PickRange(const PickCond& cond, const Valuation& v);

bool EvalGuard(const GuardExpr& guard, const Valuation& v);

/// Reference semantics of a single operation (frame conditions included).
std::vector<Valuation> ApplyOp(const Valuation& v, const Op& op);

/**
 * The per-process transition relation for one fixed parameter binding,
 * compiled from the CFA: linear forms are folded to constants and the
 * initial-to-final paths are enumerated once.
 *
 * Process states are packed as [status, locals..., shareds...].
 */
class StepKernel {
 public:
  using Word = std::uint32_t;

  StepKernel(const Cfa& cfa, std::size_t num_locals, std::size_t num_shareds,
             const ParamEnv& env);

  std::size_t width() const { return width_; }
  std::size_t num_paths() const { return paths_.size(); }

  /**
   * Appends the distinct successors of state to out (width() words each),
   * in lexicographic order, and returns how many were appended.
   */
  std::size_t Successors(std::span<const Word> state,
                         std::vector<Word>& out) const;

 private:
  struct CGuard {
    GuardExpr::Kind kind;
    Word status = 0;
    std::int64_t threshold = 0;
    std::size_t slot = 0;
    std::vector<std::size_t> children;
  };
  struct CAtom {
    std::optional<std::size_t> lhs;
    std::optional<std::size_t> rhs;
    std::int64_t offset = 0;
  };
  struct COp {
    enum class Kind { kGuard, kSetStatus, kInc, kPick } kind;
    std::size_t guard_root = 0;
    Word status = 0;
    std::size_t slot = 0;
    std::vector<CAtom> atoms;
  };

  std::size_t SlotOf(const VarRef& ref) const;
  std::size_t CompileGuard(const GuardExpr& g, const ParamEnv& env);
  bool Eval(std::size_t node, const Word* state) const;
  Interval Range(const COp& op, const Word* state) const;
  void Walk(const std::vector<std::size_t>& path, std::size_t pos,
            std::vector<Word>& scratch, std::vector<Word>& out) const;

  std::size_t num_locals_;
  std::size_t width_;
  std::vector<CGuard> guard_nodes_;
  std::vector<COp> ops_;                       // one per CFA edge
  std::vector<std::vector<std::size_t>> paths_;  // edge indices
};

/// Union over all paths of the relational composition of their operations.
std::vector<Valuation> StepSuccessors(const Valuation& v, const Cfa& cfa);

}  // namespace tgmc

#endif /* TGMC_CFA_HH_ */
