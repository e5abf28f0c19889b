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

#include "tgmc/cfa.hh"

#include <algorithm>
#include <limits>
#include <set>

namespace tgmc {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void CollectParams(const LinearForm& f, std::set<std::string>& out) {
  for (const auto& [name, c] : f.coefficients()) out.insert(name);
}

void CollectGuardNames(const GuardExpr& g, std::set<std::string>& params,
                       std::vector<std::size_t>& statuses,
                       std::vector<VarRef>& vars) {
  switch (g.kind) {
    case GuardExpr::Kind::kStatusIs:
      statuses.push_back(g.status);
      break;
    case GuardExpr::Kind::kThreshold:
      CollectParams(g.threshold, params);
      vars.push_back(g.var);
      break;
    default:
      for (const auto& c : g.children) {
        CollectGuardNames(c, params, statuses, vars);
      }
  }
}

bool VarDeclared(const VarRef& ref, const Declarations& decls) {
  return ref.scope == VarRef::Scope::kLocal ? ref.index < decls.locals.size()
                                            : ref.index < decls.shareds.size();
}

}  // namespace

std::optional<std::size_t> Declarations::StatusIndex(
    const std::string& name) const {
  auto it = std::find(statuses.begin(), statuses.end(), name);
  if (it == statuses.end()) return std::nullopt;
  return static_cast<std::size_t>(it - statuses.begin());
}

std::optional<VarRef> Declarations::Variable(const std::string& name) const {
  auto it = std::find(locals.begin(), locals.end(), name);
  if (it != locals.end()) {
    return VarRef{VarRef::Scope::kLocal,
                  static_cast<std::size_t>(it - locals.begin())};
  }
  it = std::find(shareds.begin(), shareds.end(), name);
  if (it != shareds.end()) {
    return VarRef{VarRef::Scope::kShared,
                  static_cast<std::size_t>(it - shareds.begin())};
  }
  return std::nullopt;
}

bool Declarations::IsParam(const std::string& name) const {
  return std::find(params.begin(), params.end(), name) != params.end();
}

const std::string& Declarations::VarName(const VarRef& ref) const {
  return ref.scope == VarRef::Scope::kLocal ? locals.at(ref.index)
                                            : shareds.at(ref.index);
}

GuardExpr GuardExpr::StatusIs(std::size_t status) {
  GuardExpr g;
  g.kind = Kind::kStatusIs;
  g.status = status;
  return g;
}

GuardExpr GuardExpr::Threshold(LinearForm threshold, VarRef var) {
  GuardExpr g;
  g.kind = Kind::kThreshold;
  g.threshold = std::move(threshold);
  g.var = var;
  return g;
}

GuardExpr GuardExpr::And(GuardExpr a, GuardExpr b) {
  GuardExpr g;
  g.kind = Kind::kAnd;
  g.children.push_back(std::move(a));
  g.children.push_back(std::move(b));
  return g;
}

GuardExpr GuardExpr::Not(GuardExpr a) {
  GuardExpr g;
  g.kind = Kind::kNot;
  g.children.push_back(std::move(a));
  return g;
}

bool PickCond::HasUpperBound() const {
  return std::any_of(atoms.begin(), atoms.end(), [](const PickAtom& a) {
    return !a.lhs.has_value() && a.rhs.has_value();
  });
}

std::optional<std::size_t> Cfa::LocationIndex(const std::string& name) const {
  auto it = std::find(locations.begin(), locations.end(), name);
  if (it == locations.end()) return std::nullopt;
  return static_cast<std::size_t>(it - locations.begin());
}

bool Valuation::operator<(const Valuation& rhs) const {
  if (status != rhs.status) return status < rhs.status;
  if (locals != rhs.locals) return locals < rhs.locals;
  return shareds < rhs.shareds;
}

std::vector<CfaDiagnostic> ValidateCfa(const Cfa& cfa,
                                       const Declarations& decls) {
  std::vector<CfaDiagnostic> diags;
  const std::size_t n = cfa.locations.size();
  if (cfa.initial >= n || cfa.final >= n) {
    diags.push_back({"initial or final location missing", std::nullopt});
    return diags;
  }
  if (cfa.initial == cfa.final) {
    diags.push_back({"initial and final location coincide", std::nullopt});
  }

  std::vector<std::vector<std::size_t>> out(n), in(n);
  for (std::size_t e = 0; e < cfa.edges.size(); ++e) {
    const Edge& edge = cfa.edges[e];
    if (edge.from >= n || edge.to >= n) {
      diags.push_back({"edge refers to an unknown location", e});
      continue;
    }
    out[edge.from].push_back(edge.to);
    in[edge.to].push_back(edge.from);
    if (edge.to == cfa.initial) {
      diags.push_back({"edge into initial location '" +
                           cfa.locations[cfa.initial] + "'",
                       e});
    }
    if (edge.from == cfa.final) {
      diags.push_back(
          {"edge out of final location '" + cfa.locations[cfa.final] + "'",
           e});
    }
  }

  // Kahn's algorithm: anything left over lies on a cycle.
  std::vector<std::size_t> indeg(n, 0);
  for (std::size_t v = 0; v < n; ++v) indeg[v] = in[v].size();
  std::vector<std::size_t> queue;
  for (std::size_t v = 0; v < n; ++v) {
    if (indeg[v] == 0) queue.push_back(v);
  }
  std::size_t seen = 0;
  while (seen < queue.size()) {
    std::size_t v = queue[seen++];
    for (std::size_t w : out[v]) {
      if (--indeg[w] == 0) queue.push_back(w);
    }
  }
  if (seen < n) {
    std::string cyc;
    for (std::size_t v = 0; v < n; ++v) {
      if (indeg[v] != 0) cyc += (cyc.empty() ? "" : ", ") + cfa.locations[v];
    }
    diags.push_back({"cycle detected through locations: " + cyc, std::nullopt});
  }

  auto reach = [n](std::size_t from,
                   const std::vector<std::vector<std::size_t>>& adj) {
    std::vector<bool> mark(n, false);
    std::vector<std::size_t> stack{from};
    mark[from] = true;
    while (!stack.empty()) {
      std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w : adj[v]) {
        if (!mark[w]) {
          mark[w] = true;
          stack.push_back(w);
        }
      }
    }
    return mark;
  };
  auto fwd = reach(cfa.initial, out);
  auto bwd = reach(cfa.final, in);
  for (std::size_t v = 0; v < n; ++v) {
    if (!fwd[v]) {
      diags.push_back({"dangling location '" + cfa.locations[v] +
                           "' is unreachable from the initial location",
                       std::nullopt});
    } else if (!bwd[v]) {
      diags.push_back({"dangling location '" + cfa.locations[v] +
                           "' cannot reach the final location",
                       std::nullopt});
    }
  }

  for (std::size_t e = 0; e < cfa.edges.size(); ++e) {
    std::set<std::string> params;
    std::vector<std::size_t> statuses;
    std::vector<VarRef> vars;
    std::visit(Overloaded{
                   [&](const GuardOp& g) {
                     CollectGuardNames(g.expr, params, statuses, vars);
                   },
                   [&](const SetStatusOp& s) { statuses.push_back(s.status); },
                   [&](const IncOp& i) { vars.push_back(i.var); },
                   [&](const PickOp& p) {
                     vars.push_back(p.target);
                     for (const auto& a : p.cond.atoms) {
                       if (a.lhs) vars.push_back(*a.lhs);
                       if (a.rhs) vars.push_back(*a.rhs);
                       CollectParams(a.offset, params);
                     }
                     if (!p.cond.HasUpperBound()) {
                       diags.push_back(
                           {"unbounded nondeterministic choice: no atom "
                            "bounds eps from above",
                            e});
                     }
                   },
               },
               cfa.edges[e].op);
    for (const auto& p : params) {
      if (!decls.IsParam(p)) {
        diags.push_back({"unbound name '" + p + "'", e});
      }
    }
    for (std::size_t s : statuses) {
      if (s >= decls.statuses.size()) {
        diags.push_back({"unknown status value", e});
      }
    }
    for (const auto& v : vars) {
      if (!VarDeclared(v, decls)) {
        diags.push_back({"undeclared variable", e});
      }
    }
  }
  return diags;
}

std::vector<CfaPath> EnumeratePaths(const Cfa& cfa) {
  std::vector<std::vector<std::size_t>> out(cfa.locations.size());
  for (std::size_t e = 0; e < cfa.edges.size(); ++e) {
    out[cfa.edges[e].from].push_back(e);
  }
  std::vector<CfaPath> paths;
  CfaPath current;
  // The CFA is acyclic, so the recursion depth is bounded by |Q|.
  auto dfs = [&](auto&& self, std::size_t loc) -> void {
    if (loc == cfa.final) {
      paths.push_back(current);
      return;
    }
    for (std::size_t e : out[loc]) {
      current.push_back(e);
      self(self, cfa.edges[e].to);
      current.pop_back();
    }
  };
  dfs(dfs, cfa.initial);
  return paths;
}

Interval PickRange(const PickCond& cond, const Valuation& v) {
  if (!cond.HasUpperBound()) {
    throw ModelError("unbounded nondeterministic choice");
  }
  std::int64_t lo = 0;
  std::int64_t hi = std::numeric_limits<std::int64_t>::max();
  for (const auto& a : cond.atoms) {
    const std::int64_t off = a.offset.Evaluate(v.params);
    if (!a.lhs && a.rhs) {
      hi = std::min(hi, static_cast<std::int64_t>(v.Get(*a.rhs)) + off);
    } else if (a.lhs && !a.rhs) {
      lo = std::max(lo, static_cast<std::int64_t>(v.Get(*a.lhs)) - off);
    } else if (a.lhs && a.rhs) {
      if (static_cast<std::int64_t>(v.Get(*a.lhs)) >
          static_cast<std::int64_t>(v.Get(*a.rhs)) + off) {
        return {};
      }
    } else if (off < 0) {
      return {};
    }
  }
  if (hi < lo) return {};
  return {static_cast<std::uint64_t>(lo), static_cast<std::uint64_t>(hi)};
}

bool EvalGuard(const GuardExpr& guard, const Valuation& v) {
  switch (guard.kind) {
    case GuardExpr::Kind::kStatusIs:
      return v.status == guard.status;
    case GuardExpr::Kind::kThreshold:
      return guard.threshold.Evaluate(v.params) <=
             static_cast<std::int64_t>(v.Get(guard.var));
    case GuardExpr::Kind::kAnd:
      return std::all_of(
          guard.children.begin(), guard.children.end(),
          [&](const GuardExpr& c) { return EvalGuard(c, v); });
    case GuardExpr::Kind::kNot:
      return !EvalGuard(guard.children.front(), v);
  }
  return false;
}

std::vector<Valuation> ApplyOp(const Valuation& v, const Op& op) {
  return std::visit(
      Overloaded{
          [&](const GuardOp& g) -> std::vector<Valuation> {
            if (EvalGuard(g.expr, v)) return {v};
            return {};
          },
          [&](const SetStatusOp& s) -> std::vector<Valuation> {
            Valuation w = v;
            w.status = s.status;
            return {w};
          },
          [&](const IncOp& i) -> std::vector<Valuation> {
            Valuation w = v;
            w.At(i.var) += 1;
            return {w};
          },
          [&](const PickOp& p) -> std::vector<Valuation> {
            Interval r = PickRange(p.cond, v);
            std::vector<Valuation> out;
            for (std::uint64_t e = r.lo; !r.empty() && e <= r.hi; ++e) {
              Valuation w = v;
              w.At(p.target) = e;
              out.push_back(std::move(w));
            }
            return out;
          },
      },
      op);
}

StepKernel::StepKernel(const Cfa& cfa, std::size_t num_locals,
                       std::size_t num_shareds, const ParamEnv& env)
    : num_locals_(num_locals), width_(1 + num_locals + num_shareds) {
  for (const Edge& edge : cfa.edges) {
    COp c{};
    std::visit(Overloaded{
                   [&](const GuardOp& g) {
                     c.kind = COp::Kind::kGuard;
                     c.guard_root = CompileGuard(g.expr, env);
                   },
                   [&](const SetStatusOp& s) {
                     c.kind = COp::Kind::kSetStatus;
                     c.status = static_cast<Word>(s.status);
                   },
                   [&](const IncOp& i) {
                     c.kind = COp::Kind::kInc;
                     c.slot = SlotOf(i.var);
                   },
                   [&](const PickOp& p) {
                     if (!p.cond.HasUpperBound()) {
                       throw ModelError("unbounded nondeterministic choice");
                     }
                     c.kind = COp::Kind::kPick;
                     c.slot = SlotOf(p.target);
                     for (const auto& a : p.cond.atoms) {
                       CAtom ca;
                       if (a.lhs) ca.lhs = SlotOf(*a.lhs);
                       if (a.rhs) ca.rhs = SlotOf(*a.rhs);
                       ca.offset = a.offset.Evaluate(env);
                       c.atoms.push_back(ca);
                     }
                   },
               },
               edge.op);
    ops_.push_back(std::move(c));
  }
  paths_ = EnumeratePaths(cfa);
}

std::size_t StepKernel::SlotOf(const VarRef& ref) const {
  return ref.scope == VarRef::Scope::kLocal ? 1 + ref.index
                                            : 1 + num_locals_ + ref.index;
}

std::size_t StepKernel::CompileGuard(const GuardExpr& g, const ParamEnv& env) {
  CGuard node;
  node.kind = g.kind;
  switch (g.kind) {
    case GuardExpr::Kind::kStatusIs:
      node.status = static_cast<Word>(g.status);
      break;
    case GuardExpr::Kind::kThreshold:
      node.threshold = g.threshold.Evaluate(env);
      node.slot = SlotOf(g.var);
      break;
    default:
      for (const auto& c : g.children) {
        node.children.push_back(CompileGuard(c, env));
      }
  }
  guard_nodes_.push_back(std::move(node));
  return guard_nodes_.size() - 1;
}

bool StepKernel::Eval(std::size_t node, const Word* state) const {
  const CGuard& g = guard_nodes_[node];
  switch (g.kind) {
    case GuardExpr::Kind::kStatusIs:
      return state[0] == g.status;
    case GuardExpr::Kind::kThreshold:
      return g.threshold <= static_cast<std::int64_t>(state[g.slot]);
    case GuardExpr::Kind::kAnd:
      for (std::size_t c : g.children) {
        if (!Eval(c, state)) return false;
      }
      return true;
    case GuardExpr::Kind::kNot:
      return !Eval(g.children.front(), state);
  }
  return false;
}

Interval StepKernel::Range(const COp& op, const Word* state) const {
  std::int64_t lo = 0;
  std::int64_t hi = std::numeric_limits<std::int64_t>::max();
  for (const CAtom& a : op.atoms) {
    if (!a.lhs && a.rhs) {
      hi = std::min(hi, static_cast<std::int64_t>(state[*a.rhs]) + a.offset);
    } else if (a.lhs && !a.rhs) {
      lo = std::max(lo, static_cast<std::int64_t>(state[*a.lhs]) - a.offset);
    } else if (a.lhs && a.rhs) {
      if (static_cast<std::int64_t>(state[*a.lhs]) >
          static_cast<std::int64_t>(state[*a.rhs]) + a.offset) {
        return {};
      }
    } else if (a.offset < 0) {
      return {};
    }
  }
  if (hi < lo) return {};
  return {static_cast<std::uint64_t>(lo), static_cast<std::uint64_t>(hi)};
}

void StepKernel::Walk(const std::vector<std::size_t>& path, std::size_t pos,
                      std::vector<Word>& scratch,
                      std::vector<Word>& out) const {
  if (pos == path.size()) {
    out.insert(out.end(), scratch.begin(), scratch.end());
    return;
  }
  const COp& op = ops_[path[pos]];
  switch (op.kind) {
    case COp::Kind::kGuard:
      if (Eval(op.guard_root, scratch.data())) {
        Walk(path, pos + 1, scratch, out);
      }
      return;
    case COp::Kind::kSetStatus: {
      Word saved = scratch[0];
      scratch[0] = op.status;
      Walk(path, pos + 1, scratch, out);
      scratch[0] = saved;
      return;
    }
    case COp::Kind::kInc: {
      Word saved = scratch[op.slot];
      if (saved == std::numeric_limits<Word>::max()) {
        throw ModelError("variable overflow on inc");
      }
      scratch[op.slot] = saved + 1;
      Walk(path, pos + 1, scratch, out);
      scratch[op.slot] = saved;
      return;
    }
    case COp::Kind::kPick: {
      Interval r = Range(op, scratch.data());
      if (r.empty()) return;
      if (r.hi >= std::numeric_limits<Word>::max()) {
        throw ModelError("pick range exceeds the value width");
      }
      Word saved = scratch[op.slot];
      for (std::uint64_t e = r.lo; e <= r.hi; ++e) {
        scratch[op.slot] = static_cast<Word>(e);
        Walk(path, pos + 1, scratch, out);
      }
      scratch[op.slot] = saved;
      return;
    }
  }
}

std::size_t StepKernel::Successors(std::span<const Word> state,
                                   std::vector<Word>& out) const {
  std::vector<Word> scratch(state.begin(), state.end());
  std::vector<Word> raw;
  for (const auto& path : paths_) Walk(path, 0, scratch, raw);

  const std::size_t count = raw.size() / width_;
  std::vector<std::size_t> order(count);
  for (std::size_t i = 0; i < count; ++i) order[i] = i;
  auto rec = [&](std::size_t i) { return raw.data() + i * width_; };
  auto less = [&](std::size_t a, std::size_t b) {
    return std::lexicographical_compare(rec(a), rec(a) + width_, rec(b),
                                        rec(b) + width_);
  };
  auto same = [&](std::size_t a, std::size_t b) {
    return std::equal(rec(a), rec(a) + width_, rec(b));
  };
  std::sort(order.begin(), order.end(), less);
  order.erase(std::unique(order.begin(), order.end(), same), order.end());
  for (std::size_t i : order) out.insert(out.end(), rec(i), rec(i) + width_);
  return order.size();
}

std::vector<Valuation> StepSuccessors(const Valuation& v, const Cfa& cfa) {
  StepKernel kernel(cfa, v.locals.size(), v.shareds.size(), v.params);
  std::vector<StepKernel::Word> packed;
  packed.push_back(static_cast<StepKernel::Word>(v.status));
  for (auto x : v.locals) packed.push_back(static_cast<StepKernel::Word>(x));
  for (auto x : v.shareds) packed.push_back(static_cast<StepKernel::Word>(x));

  std::vector<StepKernel::Word> out;
  std::size_t n = kernel.Successors(packed, out);
  std::vector<Valuation> result;
  result.reserve(n);
  const std::size_t w = kernel.width();
  for (std::size_t i = 0; i < n; ++i) {
    const StepKernel::Word* rec = out.data() + i * w;
    Valuation s;
    s.status = rec[0];
    s.locals.assign(rec + 1, rec + 1 + v.locals.size());
    s.shareds.assign(rec + 1 + v.locals.size(), rec + w);
    s.params = v.params;
    result.push_back(std::move(s));
  }
  return result;
}

}  // namespace tgmc
