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

#include "tgmc/buchi.hh"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

namespace tgmc {
namespace ltl {

namespace {

using Set = std::set<int>;

struct Sub {
  Formula::Kind kind;
  std::size_t atom = 0;
  bool negated = false;
  int left = -1;
  int right = -1;
};

struct Node {
  Set incoming;  // -1 stands for the pseudo-initial state
  Set fresh;
  Set old;
  Set next;
};

class Tableau {
 public:
  explicit Tableau(const Formula& f) { root_ = Intern(f); }

  void Run() {
    Node start;
    start.incoming = {-1};
    start.fresh = {root_};
    Expand(std::move(start));
  }

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Sub>& subs() const { return subs_; }

  /// Until-like subformulas with their right-hand side.
  std::vector<std::pair<int, int>> Eventualities() const {
    std::vector<std::pair<int, int>> out;
    for (int i = 0; i < static_cast<int>(subs_.size()); ++i) {
      if (subs_[i].kind == Formula::Kind::kUntil) {
        out.push_back({i, subs_[i].right});
      } else if (subs_[i].kind == Formula::Kind::kFinally) {
        out.push_back({i, subs_[i].left});
      }
    }
    return out;
  }

 private:
  int Intern(const Formula& f) {
    Sub s;
    s.kind = f.kind;
    s.atom = f.atom;
    s.negated = f.negated;
    if (!f.children.empty()) s.left = Intern(f.children[0]);
    if (f.children.size() > 1) s.right = Intern(f.children[1]);
    for (int i = 0; i < static_cast<int>(subs_.size()); ++i) {
      const Sub& t = subs_[i];
      if (t.kind == s.kind && t.left == s.left && t.right == s.right &&
          (s.kind != Formula::Kind::kLiteral ||
           (t.atom == s.atom && t.negated == s.negated))) {
        return i;
      }
    }
    subs_.push_back(s);
    return static_cast<int>(subs_.size()) - 1;
  }

  bool Contradicts(int lit, const Set& old) const {
    for (int o : old) {
      const Sub& a = subs_[o];
      if (a.kind == Formula::Kind::kLiteral && a.atom == subs_[lit].atom &&
          a.negated != subs_[lit].negated) {
        return true;
      }
    }
    return false;
  }

  static void AddNew(Node& n, int f) {
    if (!n.old.count(f)) n.fresh.insert(f);
  }

  void Expand(Node node) {
    if (node.fresh.empty()) {
      for (Node& nd : nodes_) {
        if (nd.old == node.old && nd.next == node.next) {
          nd.incoming.insert(node.incoming.begin(), node.incoming.end());
          return;
        }
      }
      nodes_.push_back(node);
      Node succ;
      succ.incoming = {static_cast<int>(nodes_.size()) - 1};
      succ.fresh = node.next;
      Expand(std::move(succ));
      return;
    }
    const int eta = *node.fresh.begin();
    node.fresh.erase(node.fresh.begin());
    const Sub& s = subs_[eta];
    node.old.insert(eta);
    switch (s.kind) {
      case Formula::Kind::kLiteral:
        if (Contradicts(eta, node.old)) return;
        Expand(std::move(node));
        return;
      case Formula::Kind::kAnd:
        AddNew(node, s.left);
        AddNew(node, s.right);
        Expand(std::move(node));
        return;
      case Formula::Kind::kGlobally:
        AddNew(node, s.left);
        node.next.insert(eta);
        Expand(std::move(node));
        return;
      case Formula::Kind::kOr: {
        Node other = node;
        AddNew(node, s.left);
        AddNew(other, s.right);
        Expand(std::move(node));
        Expand(std::move(other));
        return;
      }
      case Formula::Kind::kUntil: {
        Node other = node;
        AddNew(node, s.left);
        node.next.insert(eta);
        AddNew(other, s.right);
        Expand(std::move(node));
        Expand(std::move(other));
        return;
      }
      case Formula::Kind::kFinally: {
        Node other = node;
        node.next.insert(eta);
        AddNew(other, s.left);
        Expand(std::move(node));
        Expand(std::move(other));
        return;
      }
      case Formula::Kind::kRelease: {
        Node other = node;
        AddNew(node, s.right);
        node.next.insert(eta);
        AddNew(other, s.left);
        AddNew(other, s.right);
        Expand(std::move(node));
        Expand(std::move(other));
        return;
      }
    }
  }

  int root_ = 0;
  std::vector<Sub> subs_;
  std::vector<Node> nodes_;
};

}  // namespace

BuchiAutomaton BuildBuchi(const Formula& nnf) {
  Tableau tab(nnf);
  tab.Run();
  const auto& nodes = tab.nodes();
  const auto& subs = tab.subs();
  const auto ev = tab.Eventualities();
  const std::size_t m = nodes.size();
  const std::size_t k = ev.size();

  std::vector<LiteralSet> node_label(m);
  std::vector<std::vector<bool>> in_set(k, std::vector<bool>(m));
  std::vector<std::vector<int>> node_succ(m);
  std::vector<int> init_succ;
  for (std::size_t q = 0; q < m; ++q) {
    for (int o : nodes[q].old) {
      if (subs[o].kind != Formula::Kind::kLiteral) continue;
      (subs[o].negated ? node_label[q].neg : node_label[q].pos) |=
          std::uint64_t{1} << subs[o].atom;
    }
    for (std::size_t a = 0; a < k; ++a) {
      in_set[a][q] = !nodes[q].old.count(ev[a].first) ||
                     nodes[q].old.count(ev[a].second);
    }
    for (int p : nodes[q].incoming) {
      (p < 0 ? init_succ : node_succ[p]).push_back(static_cast<int>(q));
    }
  }

  // Counter construction over (node, index of the awaited set).
  BuchiAutomaton aut;
  aut.num_acceptance_sets = k;
  const std::size_t layers = std::max<std::size_t>(k, 1);
  std::map<std::pair<int, std::size_t>, std::uint32_t> ids;
  std::deque<std::pair<int, std::size_t>> work;
  aut.label.push_back({});
  aut.succ.emplace_back();
  aut.accepting.push_back(false);
  auto state = [&](int q, std::size_t i) {
    auto [it, fresh] =
        ids.try_emplace({q, i}, static_cast<std::uint32_t>(aut.label.size()));
    if (fresh) {
      aut.label.push_back(node_label[q]);
      aut.succ.emplace_back();
      aut.accepting.push_back(k == 0 || (i == 0 && in_set[0][q]));
      work.push_back({q, i});
    }
    return it->second;
  };
  for (int q : init_succ) {
    const std::uint32_t to = state(q, 0);
    aut.succ[0].push_back(to);
  }
  while (!work.empty()) {
    auto [p, i] = work.front();
    work.pop_front();
    const std::uint32_t from = ids.at({p, i});
    const std::size_t j = (k > 0 && in_set[i][p]) ? (i + 1) % layers : i;
    for (int q : node_succ[p]) {
      const std::uint32_t to = state(q, j);
      aut.succ[from].push_back(to);
    }
  }
  for (auto& s : aut.succ) {
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
  }
  return aut;
}

bool AcceptsLasso(const BuchiAutomaton& aut, const LassoWord& word) {
  const std::size_t n = word.letters.size();
  if (n == 0) return false;
  const std::size_t b = aut.num_states();
  auto id = [&](std::size_t pos, std::size_t q) { return pos * b + q; };
  std::vector<std::vector<std::size_t>> succ(n * b);
  std::vector<std::size_t> roots;
  for (std::uint32_t q : aut.succ[0]) {
    if (aut.label[q].Satisfied(word.letters[0])) roots.push_back(id(0, q));
  }
  for (std::size_t pos = 0; pos < n; ++pos) {
    const std::size_t nxt = word.Next(pos);
    for (std::size_t q = 1; q < b; ++q) {
      for (std::uint32_t r : aut.succ[q]) {
        if (aut.label[r].Satisfied(word.letters[nxt])) {
          succ[id(pos, q)].push_back(id(nxt, r));
        }
      }
    }
  }
  auto reach = [&](std::vector<std::size_t> from) {
    std::vector<bool> seen(n * b);
    for (std::size_t s : from) seen[s] = true;
    while (!from.empty()) {
      std::size_t s = from.back();
      from.pop_back();
      for (std::size_t t : succ[s]) {
        if (!seen[t]) {
          seen[t] = true;
          from.push_back(t);
        }
      }
    }
    return seen;
  };
  const std::vector<bool> reachable = reach(roots);
  for (std::size_t s = 0; s < n * b; ++s) {
    if (!reachable[s] || !aut.accepting[s % b]) continue;
    if (reach(succ[s])[s]) return true;
  }
  return false;
}

}  // namespace ltl
}  // namespace tgmc
