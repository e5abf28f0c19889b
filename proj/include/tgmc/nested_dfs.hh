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

#ifndef TGMC_NESTED_DFS_HH_
#define TGMC_NESTED_DFS_HH_

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <unordered_map>
#include <vector>

namespace tgmc {

/// Open-addressing map from 64-bit node keys to a byte of flags.
class NodeFlags {
 public:
  static constexpr std::uint64_t kFree = std::numeric_limits<std::uint64_t>::max();

  NodeFlags() : keys_(1024, kFree), vals_(1024, 0) {}

  std::uint8_t Get(std::uint64_t key) const {
    std::size_t slot = Find(key);
    return keys_[slot] == kFree ? 0 : vals_[slot];
  }
  void Set(std::uint64_t key, std::uint8_t bits) {
    std::size_t slot = Find(key);
    if (keys_[slot] == kFree) {
      keys_[slot] = key;
      ++size_;
      vals_[slot] = bits;
      if (2 * size_ > keys_.size()) Rehash();
      return;
    }
    vals_[slot] |= bits;
  }
  void Clear(std::uint64_t key, std::uint8_t bits) {
    std::size_t slot = Find(key);
    if (keys_[slot] != kFree) vals_[slot] &= static_cast<std::uint8_t>(~bits);
  }
  std::size_t size() const { return size_; }

 private:
  static std::uint64_t Mix(std::uint64_t x) {
    x ^= x >> 33;
    x *= 0xff51afd7ed558ccdull;
    x ^= x >> 33;
    x *= 0xc4ceb9fe1a85ec53ull;
    x ^= x >> 33;
    return x;
  }
  std::size_t Find(std::uint64_t key) const {
    const std::size_t mask = keys_.size() - 1;
    std::size_t slot = Mix(key) & mask;
    while (keys_[slot] != kFree && keys_[slot] != key) slot = (slot + 1) & mask;
    return slot;
  }
  void Rehash() {
    std::vector<std::uint64_t> keys(keys_.size() * 2, kFree);
    std::vector<std::uint8_t> vals(keys.size(), 0);
    const std::size_t mask = keys.size() - 1;
    for (std::size_t i = 0; i < keys_.size(); ++i) {
      if (keys_[i] == kFree) continue;
      std::size_t slot = Mix(keys_[i]) & mask;
      while (keys[slot] != kFree) slot = (slot + 1) & mask;
      keys[slot] = keys_[i];
      vals[slot] = vals_[i];
    }
    keys_ = std::move(keys);
    vals_ = std::move(vals);
  }

  std::vector<std::uint64_t> keys_;
  std::vector<std::uint8_t> vals_;
  std::size_t size_ = 0;
};

struct NestedDfsStats {
  std::size_t states = 0;       // distinct nodes reached
  std::size_t transitions = 0;  // edges followed, both searches
  std::size_t max_depth = 0;
};

struct NestedDfsResult {
  bool found = false;
  bool aborted = false;  // node cap reached before a conclusion
  std::vector<std::uint64_t> prefix;
  std::vector<std::uint64_t> cycle;  // starts at an accepting node
  NestedDfsStats stats;
};

/**
 * Iterative nested depth-first search for an accepting cycle reachable from
 * an initial node. Graph provides
 *   void Initial(std::vector<std::uint64_t>& out);
 *   void Successors(std::uint64_t node, std::vector<std::uint64_t>& out);
 *   bool Accepting(std::uint64_t node);
 * Both out-vectors are appended to. The red search stops as soon as it
 * touches a node on the blue stack, which closes a cycle through the seed.
 */
template <class Graph>
NestedDfsResult NestedDfs(Graph& graph, std::size_t max_nodes) {
  enum : std::uint8_t { kBlue = 1, kRed = 2, kOnStack = 4 };
  struct Frame {
    std::uint64_t node;
    std::size_t begin;  // range in the shared successor buffer
    std::size_t end;
    std::size_t next;
  };

  NestedDfsResult res;
  NodeFlags flags;
  std::vector<std::uint64_t> buffer;
  std::vector<Frame> blue, red;

  auto push = [&](std::vector<Frame>& stack, std::uint64_t node) {
    Frame f{node, buffer.size(), 0, 0};
    graph.Successors(node, buffer);
    f.end = buffer.size();
    f.next = f.begin;
    stack.push_back(f);
  };
  auto over_cap = [&] {
    if (flags.size() > max_nodes) {
      res.aborted = true;
      return true;
    }
    return false;
  };

  // Returns true when a cycle through seed has been closed; red then holds
  // the path from seed and hit the blue-stack node it reached.
  auto red_search = [&](std::uint64_t seed, std::uint64_t& hit) {
    red.clear();
    push(red, seed);
    while (!red.empty()) {
      Frame& f = red.back();
      if (f.next == f.end) {
        buffer.resize(f.begin);
        red.pop_back();
        continue;
      }
      const std::uint64_t t = buffer[f.next++];
      ++res.stats.transitions;
      const std::uint8_t bits = flags.Get(t);
      if (bits & kOnStack) {
        hit = t;
        return true;
      }
      if (bits & kRed) continue;
      flags.Set(t, kRed);
      if (over_cap()) return false;
      push(red, t);
    }
    return false;
  };

  std::vector<std::uint64_t> roots;
  graph.Initial(roots);
  for (std::uint64_t root : roots) {
    if (flags.Get(root) & kBlue) continue;
    flags.Set(root, kBlue | kOnStack);
    if (over_cap()) break;
    push(blue, root);
    while (!blue.empty()) {
      res.stats.max_depth = std::max(res.stats.max_depth, blue.size());
      Frame& f = blue.back();
      if (f.next < f.end) {
        const std::uint64_t t = buffer[f.next++];
        ++res.stats.transitions;
        if (flags.Get(t) & kBlue) continue;
        flags.Set(t, kBlue | kOnStack);
        if (over_cap()) break;
        push(blue, t);
        continue;
      }
      const std::uint64_t s = f.node;
      if (graph.Accepting(s)) {
        // The seed stays on the stack during its own red search.
        const std::size_t keep = buffer.size();
        std::uint64_t hit = 0;
        const bool closed = red_search(s, hit);
        if (res.aborted) break;
        if (closed) {
          res.found = true;
          std::size_t i = 0;
          while (blue[i].node != hit) ++i;
          for (std::size_t k = 0; k + 1 < blue.size(); ++k) {
            res.prefix.push_back(blue[k].node);
          }
          for (const Frame& r : red) res.cycle.push_back(r.node);
          if (hit != s) {
            for (std::size_t k = i; k + 1 < blue.size(); ++k) {
              res.cycle.push_back(blue[k].node);
            }
          }
          break;
        }
        buffer.resize(keep);
      }
      flags.Clear(s, kOnStack);
      buffer.resize(f.begin);
      blue.pop_back();
    }
    if (res.found || res.aborted) break;
  }
  res.stats.states = flags.size();
  return res;
}

/**
 * Rebuilds a found lasso around the same accepting seed using breadth-first
 * search: a shortest path from an initial node to the seed, then a shortest
 * cycle back to it. The result is never longer than the input.
 */
template <class Graph>
void ShortenLasso(Graph& graph, NestedDfsResult& res) {
  if (!res.found || res.cycle.empty()) return;
  const std::uint64_t seed = res.cycle.front();
  std::vector<std::uint64_t> buffer;

  // Path from any of the sources to seed, as a list of nodes ending at seed.
  auto bfs = [&](const std::vector<std::uint64_t>& sources,
                 std::vector<std::uint64_t>& path) {
    std::unordered_map<std::uint64_t, std::uint64_t> parent;
    std::deque<std::uint64_t> queue;
    constexpr std::uint64_t kRoot = std::numeric_limits<std::uint64_t>::max();
    for (std::uint64_t s : sources) {
      if (parent.emplace(s, kRoot).second) queue.push_back(s);
    }
    while (!queue.empty()) {
      const std::uint64_t n = queue.front();
      queue.pop_front();
      if (n == seed) {
        for (std::uint64_t k = n; k != kRoot; k = parent[k]) path.push_back(k);
        std::reverse(path.begin(), path.end());
        return true;
      }
      buffer.clear();
      graph.Successors(n, buffer);
      for (std::uint64_t t : buffer) {
        if (parent.emplace(t, n).second) queue.push_back(t);
      }
    }
    return false;
  };

  std::vector<std::uint64_t> roots, to_seed, around;
  graph.Initial(roots);
  buffer.clear();
  graph.Successors(seed, buffer);
  const std::vector<std::uint64_t> after(buffer.begin(), buffer.end());
  if (!bfs(roots, to_seed) || !bfs(after, around)) return;
  to_seed.pop_back();
  around.pop_back();
  if (to_seed.size() + around.size() + 1 > res.prefix.size() + res.cycle.size()) return;
  res.prefix = std::move(to_seed);
  res.cycle.assign(1, seed);
  res.cycle.insert(res.cycle.end(), around.begin(), around.end());
}

}  // namespace tgmc

#endif /* TGMC_NESTED_DFS_HH_ */
