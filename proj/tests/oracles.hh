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

#ifndef TGMC_TESTS_ORACLES_HH_
#define TGMC_TESTS_ORACLES_HH_

#include <algorithm>
#include <bit>
#include <bitset>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <random>
#include <stdexcept>
#include <vector>

#include "tgmc/buchi.hh"
#include "tgmc/cfa.hh"
#include "tgmc/model.hh"
#include "tgmc/ltl.hh"

namespace tgmc::testing {

/// Strongly connected components of an adjacency list (recursive Tarjan).
/// comp[v] is the component index; nontrivial[c] says whether c has an edge.
struct Sccs {
  std::vector<std::size_t> comp;
  std::vector<bool> nontrivial;
};

inline Sccs Tarjan(const std::vector<std::vector<std::size_t>>& adj) {
  const std::size_t n = adj.size();
  constexpr std::size_t kUnset = ~std::size_t{0};
  std::vector<std::size_t> index(n, kUnset), low(n, 0), stack;
  std::vector<bool> on_stack(n, false);
  Sccs out;
  out.comp.assign(n, kUnset);
  std::size_t counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w : adj[v]) {
      if (index[w] == kUnset) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] != index[v]) return;
    const std::size_t c = out.nontrivial.size();
    out.nontrivial.push_back(false);
    std::size_t w;
    do {
      w = stack.back();
      stack.pop_back();
      on_stack[w] = false;
      out.comp[w] = c;
    } while (w != v);
  };
  for (std::size_t v = 0; v < n; ++v) {
    if (index[v] == kUnset) visit(v);
  }
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w : adj[v]) {
      if (out.comp[v] == out.comp[w]) out.nontrivial[out.comp[v]] = true;
    }
  }
  return out;
}

/// Nodes from which some accepting node on a cycle is reachable.
inline std::vector<bool> CanReachAcceptingCycle(
    const std::vector<std::vector<std::size_t>>& adj,
    const std::vector<bool>& accepting) {
  const Sccs sccs = Tarjan(adj);
  const std::size_t n = adj.size();
  std::vector<bool> good(n, false);
  std::vector<std::vector<std::size_t>> rev(n);
  std::vector<std::size_t> work;
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t w : adj[v]) rev[w].push_back(v);
    if (accepting[v] && sccs.nontrivial[sccs.comp[v]]) {
      good[v] = true;
      work.push_back(v);
    }
  }
  while (!work.empty()) {
    const std::size_t v = work.back();
    work.pop_back();
    for (std::size_t u : rev[v]) {
      if (!good[u]) {
        good[u] = true;
        work.push_back(u);
      }
    }
  }
  return good;
}

// Lasso words over three atoms. A shape fixes prefix and cycle lengths; word
// w of a shape has letter j = (w >> 3j) & 7, prefix letters in the low digits.
constexpr std::size_t kOracleAtoms = 3;

struct Shape {
  std::size_t prefix;
  std::size_t cycle;

  std::size_t length() const { return prefix + cycle; }
  std::size_t num_words() const { return std::size_t{1} << (3 * length()); }
  std::size_t next(std::size_t i) const {
    return i + 1 < length() ? i + 1 : prefix;
  }
  ltl::LassoWord Word(std::size_t w) const {
    ltl::LassoWord word;
    for (std::size_t j = 0; j < length(); ++j) {
      word.letters.push_back((w >> (3 * j)) & 7);
    }
    word.loop_start = prefix;
    return word;
  }
};

inline std::vector<Shape> AllShapes(std::size_t max_prefix = 3,
                                    std::size_t max_cycle = 3) {
  std::vector<Shape> shapes;
  for (std::size_t p = 0; p <= max_prefix; ++p) {
    for (std::size_t c = 1; c <= max_cycle; ++c) shapes.push_back({p, c});
  }
  return shapes;
}

/// One bit per word of a shape.
class WordSet {
 public:
  explicit WordSet(std::size_t n, bool value = false)
      : n_(n), bits_((n + 63) / 64, value ? ~std::uint64_t{0} : 0) {
    Trim();
  }

  /// Words whose bit k is set.
  static WordSet Bit(std::size_t n, std::size_t k) {
    static constexpr std::uint64_t kLow[6] = {
        0xaaaaaaaaaaaaaaaa, 0xcccccccccccccccc, 0xf0f0f0f0f0f0f0f0,
        0xff00ff00ff00ff00, 0xffff0000ffff0000, 0xffffffff00000000};
    WordSet r(n);
    for (std::size_t i = 0; i < r.bits_.size(); ++i) {
      r.bits_[i] = k < 6 ? kLow[k] : (((i << 6) >> k) & 1 ? ~std::uint64_t{0} : 0);
    }
    r.Trim();
    return r;
  }

  std::size_t size() const { return n_; }
  bool test(std::size_t w) const { return (bits_[w / 64] >> (w % 64)) & 1; }
  void set(std::size_t w) { bits_[w / 64] |= std::uint64_t{1} << (w % 64); }

  WordSet operator~() const {
    WordSet r = *this;
    for (auto& b : r.bits_) b = ~b;
    r.Trim();
    return r;
  }
  WordSet operator&(const WordSet& o) const { return Zip(o, std::bit_and<>()); }
  WordSet operator|(const WordSet& o) const { return Zip(o, std::bit_or<>()); }
  bool operator==(const WordSet& o) const = default;

  std::size_t count() const {
    std::size_t c = 0;
    for (auto b : bits_) c += std::popcount(b);
    return c;
  }
  /// Some word index where the two sets differ, or size() if none.
  std::size_t FirstDifference(const WordSet& o) const {
    for (std::size_t w = 0; w < n_; ++w) {
      if (test(w) != o.test(w)) return w;
    }
    return n_;
  }

 private:
  template <typename Op>
  WordSet Zip(const WordSet& o, Op op) const {
    WordSet r = *this;
    for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] = op(bits_[i], o.bits_[i]);
    return r;
  }
  void Trim() {
    if (n_ % 64 != 0) bits_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }

  std::size_t n_;
  std::vector<std::uint64_t> bits_;
};

/**
 * Words of the shape satisfying f, for all words at once. Each subformula
 * gets one WordSet per position; temporal operators are solved as fixpoints
 * of their one-step unfoldings along the lasso.
 */
inline std::vector<WordSet> OraclePositions(const ltl::Formula& f, const Shape& s) {
  using K = ltl::Formula::Kind;
  const std::size_t len = s.length(), n = s.num_words();
  std::vector<WordSet> out(len, WordSet(n));
  if (f.kind == K::kLiteral) {
    if (f.atom >= kOracleAtoms) throw std::logic_error("oracle atom out of range");
    for (std::size_t j = 0; j < len; ++j) {
      out[j] = WordSet::Bit(n, 3 * j + f.atom);
      if (f.negated) out[j] = ~out[j];
    }
    return out;
  }
  if (f.kind == K::kAnd || f.kind == K::kOr) {
    auto a = OraclePositions(f.children[0], s), b = OraclePositions(f.children[1], s);
    for (std::size_t j = 0; j < len; ++j) {
      out[j] = f.kind == K::kAnd ? (a[j] & b[j]) : (a[j] | b[j]);
    }
    return out;
  }
  std::vector<WordSet> a, b;
  bool least = true;
  switch (f.kind) {
    case K::kUntil:
      a = OraclePositions(f.children[0], s);
      b = OraclePositions(f.children[1], s);
      break;
    case K::kRelease:
      a = OraclePositions(f.children[0], s);
      b = OraclePositions(f.children[1], s);
      least = false;
      break;
    case K::kFinally:
      a.assign(len, WordSet(n, true));
      b = OraclePositions(f.children[0], s);
      break;
    default:  // globally
      a.assign(len, WordSet(n, false));
      b = OraclePositions(f.children[0], s);
      least = false;
      break;
  }
  out.assign(len, WordSet(n, !least));
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t j = len; j-- > 0;) {
      const WordSet& nx = out[s.next(j)];
      WordSet v = least ? (b[j] | (a[j] & nx)) : (b[j] & (a[j] | nx));
      if (!(v == out[j])) {
        out[j] = std::move(v);
        changed = true;
      }
    }
  }
  return out;
}

inline WordSet OracleEval(const ltl::Formula& f, const Shape& s) {
  return OraclePositions(f, s)[0];
}

/**
 * Words of the shape accepted by aut. The prefix and the cycle are handled
 * separately: for each prefix the set of states reachable at the loop start,
 * and for each cycle the set of loop-start states from which the product of
 * the cycle with aut has a reachable accepting cycle (found via SCCs).
 */
class BuchiOracle {
 public:
  explicit BuchiOracle(ltl::BuchiAutomaton aut)
      : aut_(std::move(aut)), q_(aut_.num_states()), nw_((q_ + 63) / 64) {}

  WordSet Accepted(const Shape& s) {
    const auto& reach = Reach(s.prefix);
    const auto& live = Live(s.cycle);
    const std::size_t nw = nw_;
    const std::size_t prefixes = std::size_t{1} << (3 * s.prefix);
    const std::size_t cycles = std::size_t{1} << (3 * s.cycle);
    WordSet out(s.num_words());
    for (std::size_t v = 0; v < cycles; ++v) {
      const std::uint64_t* lv = live.data() + v * nw;
      if (std::all_of(lv, lv + nw, [](std::uint64_t x) { return x == 0; })) continue;
      for (std::size_t u = 0; u < prefixes; ++u) {
        const std::uint64_t* r = reach.data() + u * nw;
        for (std::size_t i = 0; i < nw; ++i) {
          if (r[i] & lv[i]) {
            out.set(u | (v << (3 * s.prefix)));
            break;
          }
        }
      }
    }
    return out;
  }

 private:
  static void Set(std::uint64_t* m, std::size_t b) { m[b / 64] |= std::uint64_t{1} << (b % 64); }
  static bool Test(const std::uint64_t* m, std::size_t b) { return (m[b / 64] >> (b % 64)) & 1; }

  const std::vector<std::uint64_t>& Reach(std::size_t len) {
    auto& reach = reach_[len];
    if (!reach.empty()) return reach;
    const auto& aut = aut_;
    const std::size_t q = q_, nw = nw_;
    const std::size_t prefixes = std::size_t{1} << (3 * len);
    reach.assign(prefixes * nw, 0);
    std::vector<std::uint64_t> cur(nw), nxt(nw);
    for (std::size_t u = 0; u < prefixes; ++u) {
      std::fill(cur.begin(), cur.end(), 0);
      Set(cur.data(), 0);
      for (std::size_t j = 0; j < len; ++j) {
        const std::uint64_t letter = (u >> (3 * j)) & 7;
        std::fill(nxt.begin(), nxt.end(), 0);
        for (std::size_t a = 0; a < q; ++a) {
          if (!Test(cur.data(), a)) continue;
          for (auto b : aut.succ[a]) {
            if (aut.label[b].Satisfied(letter)) Set(nxt.data(), b);
          }
        }
        cur.swap(nxt);
      }
      std::copy(cur.begin(), cur.end(), reach.begin() + u * nw);
    }
    return reach;
  }

  const std::vector<std::uint64_t>& Live(std::size_t c) {
    auto& live = live_[c];
    if (!live.empty()) return live;
    const auto& aut = aut_;
    const std::size_t q = q_, nw = nw_;
    const std::size_t cycles = std::size_t{1} << (3 * c);
    live.assign(cycles * nw, 0);
    std::vector<std::vector<std::size_t>> adj(c * q);
    std::vector<bool> accepting(c * q);
    for (std::size_t v = 0; v < cycles; ++v) {
      // node j*q + a: about to read cycle letter j while in state a
      for (std::size_t j = 0; j < c; ++j) {
        const std::uint64_t letter = (v >> (3 * j)) & 7;
        const std::size_t nj = (j + 1) % c;
        for (std::size_t a = 0; a < q; ++a) {
          auto& out = adj[j * q + a];
          out.clear();
          for (auto b : aut.succ[a]) {
            if (aut.label[b].Satisfied(letter)) out.push_back(nj * q + b);
          }
          accepting[j * q + a] = aut.accepting[a];
        }
      }
      const auto good = CanReachAcceptingCycle(adj, accepting);
      for (std::size_t a = 0; a < q; ++a) {
        if (good[a]) Set(live.data() + v * nw, a);
      }
    }
    return live;
  }

  ltl::BuchiAutomaton aut_;
  std::size_t q_, nw_;
  std::map<std::size_t, std::vector<std::uint64_t>> reach_, live_;
};

inline WordSet BuchiAcceptedWords(const ltl::BuchiAutomaton& aut, const Shape& s) {
  return BuchiOracle(aut).Accepted(s);
}

/// Random NNF-free formula over kOracleAtoms atoms with depth at most depth.
inline ltl::Formula RandomOracleFormula(std::mt19937_64& rng, int depth) {
  using ltl::Formula;
  if (depth == 0 || rng() % 5 == 0) {
    return Formula::Lit(rng() % kOracleAtoms, rng() % 2);
  }
  switch (rng() % 6) {
    case 0:
      return Formula::And(RandomOracleFormula(rng, depth - 1),
                          RandomOracleFormula(rng, depth - 1));
    case 1:
      return Formula::Or(RandomOracleFormula(rng, depth - 1),
                         RandomOracleFormula(rng, depth - 1));
    case 2:
    case 3:
      return Formula::Until(RandomOracleFormula(rng, depth - 1),
                            RandomOracleFormula(rng, depth - 1));
    case 4:
      return Formula::Finally(RandomOracleFormula(rng, depth - 1));
    default:
      return Formula::Globally(RandomOracleFormula(rng, depth - 1));
  }
}

// Path count by dynamic programming over the DAG, independent of the DFS
// enumeration under test.
inline std::uint64_t CountPaths(const Cfa& cfa) {
  std::vector<std::optional<std::uint64_t>> memo(cfa.locations.size());
  std::function<std::uint64_t(std::size_t)> count = [&](std::size_t loc) {
    if (loc == cfa.final) return std::uint64_t{1};
    if (memo[loc]) return *memo[loc];
    std::uint64_t n = 0;
    for (const Edge& e : cfa.edges) {
      if (e.from == loc) n += count(e.to);
    }
    memo[loc] = n;
    return n;
  };
  return count(cfa.initial);
}

// Independent successor oracle: paths from a fresh DFS, guards evaluated by
// structural recursion, picks by scanning candidate values.
inline bool OracleGuard(const GuardExpr& g, const Valuation& v) {
  switch (g.kind) {
    case GuardExpr::Kind::kStatusIs:
      return v.status == g.status;
    case GuardExpr::Kind::kThreshold:
      return g.threshold.Evaluate(v.params) <= static_cast<std::int64_t>(v.Get(g.var));
    case GuardExpr::Kind::kAnd:
      return OracleGuard(g.children[0], v) && OracleGuard(g.children[1], v);
    case GuardExpr::Kind::kNot:
      return !OracleGuard(g.children[0], v);
  }
  return false;
}

inline void OracleWalk(const Cfa& cfa, std::size_t loc, const Valuation& v,
                std::set<Valuation>& out) {
  if (loc == cfa.final) {
    out.insert(v);
    return;
  }
  for (const Edge& e : cfa.edges) {
    if (e.from != loc) continue;
    if (auto* g = std::get_if<GuardOp>(&e.op)) {
      if (OracleGuard(g->expr, v)) OracleWalk(cfa, e.to, v, out);
    } else if (auto* s = std::get_if<SetStatusOp>(&e.op)) {
      Valuation u = v;
      u.status = s->status;
      OracleWalk(cfa, e.to, u, out);
    } else if (auto* i = std::get_if<IncOp>(&e.op)) {
      Valuation u = v;
      ++u.At(i->var);
      OracleWalk(cfa, e.to, u, out);
    } else {
      const auto& p = std::get<PickOp>(e.op);
      for (std::uint64_t eps = 0; eps < 200; ++eps) {
        bool ok = true;
        for (const PickAtom& a : p.cond.atoms) {
          const std::int64_t l = a.lhs ? v.Get(*a.lhs) : eps;
          const std::int64_t r = a.rhs ? v.Get(*a.rhs) : eps;
          ok = ok && l <= r + a.offset.Evaluate(v.params);
        }
        if (!ok) continue;
        Valuation u = v;
        u.At(p.target) = eps;
        OracleWalk(cfa, e.to, u, out);
      }
    }
  }
}

inline ParamEnv RandomParams(const ModelDef& m, std::mt19937_64& rng) {
  ParamEnv env;
  const std::uint64_t t = 1 + rng() % 3;
  env.Bind("t", t);
  env.Bind("n", 3 * t + 1 + rng() % 4);
  for (const auto& p : m.decls.params) {
    if (!env.Has(p)) env.Bind(p, rng() % (t + 1));
  }
  return env;
}

inline std::set<Valuation> NaiveStepSuccessors(const Cfa& cfa, const Valuation& v) {
  std::set<Valuation> out;
  OracleWalk(cfa, cfa.initial, v, out);
  return out;
}

}  // namespace tgmc::testing

#endif /* TGMC_TESTS_ORACLES_HH_ */
