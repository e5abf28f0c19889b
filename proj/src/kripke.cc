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

#include "tgmc/kripke.hh"

#include <algorithm>
#include <cstring>
#include <limits>
#include <sstream>

namespace tgmc {

namespace {

constexpr Instance::StateId kEmpty = std::numeric_limits<Instance::StateId>::max();
constexpr std::uint64_t kNoSuccessors = std::numeric_limits<std::uint64_t>::max();

std::uint64_t HashWords(const std::uint32_t* w, std::size_t n) {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ n;
  for (std::size_t i = 0; i < n; ++i) {
    h ^= w[i];
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 32;
  }
  h ^= h >> 29;
  h *= 0xc4ceb9fe1a85ec53ull;
  h ^= h >> 32;
  return h;
}

// Every path composed from the reference semantics of single operations.
std::vector<Valuation> ReferenceStep(const Valuation& v, const Cfa& cfa) {
  std::vector<Valuation> out;
  for (const CfaPath& path : EnumeratePaths(cfa)) {
    std::vector<Valuation> frontier{v};
    for (std::size_t e : path) {
      std::vector<Valuation> next;
      for (const Valuation& u : frontier) {
        auto step = ApplyOp(u, cfa.edges[e].op);
        next.insert(next.end(), step.begin(), step.end());
      }
      frontier = std::move(next);
      if (frontier.empty()) break;
    }
    out.insert(out.end(), frontier.begin(), frontier.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

bool GlobalState::operator<(const GlobalState& rhs) const {
  return std::tie(shareds, procs) < std::tie(rhs.shareds, rhs.procs);
}

Valuation GlobalState::ProcessView(std::size_t i) const {
  Valuation v;
  v.status = procs.at(i).status;
  v.locals = procs[i].locals;
  v.shareds = shareds;
  v.params = params;
  return v;
}

GlobalState Canonicalize(GlobalState g) {
  std::sort(g.procs.begin(), g.procs.end());
  return g;
}

bool EvalAtomicProp(const AtomicProp& p, const GlobalState& g) {
  switch (p.kind) {
    case AtomicProp::Kind::kForallStatus:
      return std::all_of(g.procs.begin(), g.procs.end(), [&](const ProcState& s) {
        return (s.status == p.status) == p.equal;
      });
    case AtomicProp::Kind::kExistsStatus:
      return std::any_of(g.procs.begin(), g.procs.end(), [&](const ProcState& s) {
        return (s.status == p.status) == p.equal;
      });
    case AtomicProp::Kind::kExistsLess: {
      const std::int64_t c = p.offset.Evaluate(g.params);
      for (std::size_t i = 0; i < g.procs.size(); ++i) {
        Valuation v = g.ProcessView(i);
        if (static_cast<std::int64_t>(v.Get(p.x)) + c <
            static_cast<std::int64_t>(v.Get(p.y))) {
          return true;
        }
      }
      return false;
    }
  }
  return false;
}

std::uint64_t LabelState(const ModelDef& model, const GlobalState& g) {
  std::uint64_t bits = 0;
  for (std::size_t a = 0; a < model.atoms.size(); ++a) {
    if (EvalAtomicProp(model.atoms[a], g)) bits |= std::uint64_t{1} << a;
  }
  return bits;
}

std::string FormatGlobalState(const GlobalState& g, const Declarations& d) {
  std::ostringstream os;
  for (std::size_t k = 0; k < g.shareds.size(); ++k) {
    os << (k ? " " : "") << d.shareds[k] << "=" << g.shareds[k];
  }
  for (const ProcState& p : g.procs) {
    os << " | " << d.statuses.at(p.status);
    for (std::size_t k = 0; k < p.locals.size(); ++k) {
      os << " " << d.locals[k] << "=" << p.locals[k];
    }
  }
  return os.str();
}

Instance::Instance(const ModelDef& model, ParamEnv env, bool symmetry)
    : model_(model),
      env_(std::move(env)),
      symmetry_(symmetry),
      num_locals_(model.decls.locals.size()),
      num_shareds_(model.decls.shareds.size()),
      block_(1 + num_locals_),
      kernel_(model.cfa, num_locals_, num_shareds_, env_) {
  for (const auto& p : model.decls.params) {
    if (!env_.Has(p)) throw ModelError("parameter '" + p + "' is unbound");
  }
  const std::int64_t n = model.size.Evaluate(env_);
  if (n < 0) {
    throw ModelError("system size " + model.size.ToString() +
                     " is negative for " + env_.ToString(model.decls.params));
  }
  count_ = static_cast<std::size_t>(n);
  width_ = num_shareds_ + count_ * block_;
  if (model.atoms.size() > 64) {
    throw ModelError("at most 64 atomic propositions are supported");
  }
  for (const AtomicProp& p : model.atoms) {
    CompiledAtom c;
    c.kind = p.kind;
    c.status = static_cast<Word>(p.status);
    c.equal = p.equal;
    if (p.kind == AtomicProp::Kind::kExistsLess) {
      c.x_shared = p.x.scope == VarRef::Scope::kShared;
      c.y_shared = p.y.scope == VarRef::Scope::kShared;
      c.x = p.x.index;
      c.y = p.y.index;
      c.offset = p.offset.Evaluate(env_);
    }
    atoms_.push_back(c);
  }
  table_.assign(1024, kEmpty);
}

std::vector<GlobalState> Instance::InitialGlobalStates() const {
  const auto& init = model_.decls.initial_statuses;
  std::vector<GlobalState> out;
  if (init.empty()) return out;
  std::vector<std::size_t> digits(count_, 0);
  while (true) {
    GlobalState g;
    g.shareds.assign(num_shareds_, 0);
    g.params = env_;
    for (std::size_t d : digits) {
      g.procs.push_back({init[d], std::vector<std::uint64_t>(num_locals_, 0)});
    }
    out.push_back(symmetry_ ? Canonicalize(std::move(g)) : std::move(g));
    std::size_t k = 0;
    while (k < count_ && ++digits[k] == init.size()) digits[k++] = 0;
    if (k == count_) break;
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<GlobalState> Instance::GlobalSuccessors(const GlobalState& g) const {
  std::vector<GlobalState> out;
  for (std::size_t i = 0; i < g.procs.size(); ++i) {
    for (Valuation& v : ReferenceStep(g.ProcessView(i), model_.cfa)) {
      GlobalState h = g;
      h.procs[i] = {v.status, std::move(v.locals)};
      h.shareds = std::move(v.shareds);
      out.push_back(symmetry_ ? Canonicalize(std::move(h)) : std::move(h));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<Instance::Word> Instance::Pack(const GlobalState& g) const {
  if (g.procs.size() != count_ || g.shareds.size() != num_shareds_) {
    throw ModelError("global state does not match the instance shape");
  }
  auto word = [](std::uint64_t v) {
    if (v > std::numeric_limits<Word>::max()) {
      throw ModelError("variable value exceeds the packed width");
    }
    return static_cast<Word>(v);
  };
  std::vector<Word> w;
  w.reserve(width_);
  for (std::uint64_t s : g.shareds) w.push_back(word(s));
  for (const ProcState& p : g.procs) {
    if (p.locals.size() != num_locals_) {
      throw ModelError("global state does not match the instance shape");
    }
    w.push_back(word(p.status));
    for (std::uint64_t l : p.locals) w.push_back(word(l));
  }
  return w;
}

GlobalState Instance::Unpack(std::span<const Word> words) const {
  GlobalState g;
  g.params = env_;
  g.shareds.assign(words.begin(), words.begin() + num_shareds_);
  for (std::size_t i = 0; i < count_; ++i) {
    const Word* b = words.data() + num_shareds_ + i * block_;
    g.procs.push_back({b[0], std::vector<std::uint64_t>(b + 1, b + block_)});
  }
  return g;
}

int Instance::CompareBlocks(const Word* a, const Word* b) const {
  for (std::size_t k = 0; k < block_; ++k) {
    if (a[k] != b[k]) return a[k] < b[k] ? -1 : 1;
  }
  return 0;
}

void Instance::SiftBlock(Word* words, std::size_t i) const {
  Word* base = words + num_shareds_;
  Word tmp[64];
  std::vector<Word> big;
  Word* t = tmp;
  if (block_ > 64) {
    big.resize(block_);
    t = big.data();
  }
  while (i > 0 && CompareBlocks(base + i * block_, base + (i - 1) * block_) < 0) {
    std::memcpy(t, base + i * block_, block_ * sizeof(Word));
    std::memcpy(base + i * block_, base + (i - 1) * block_, block_ * sizeof(Word));
    std::memcpy(base + (i - 1) * block_, t, block_ * sizeof(Word));
    --i;
  }
  while (i + 1 < count_ &&
         CompareBlocks(base + i * block_, base + (i + 1) * block_) > 0) {
    std::memcpy(t, base + i * block_, block_ * sizeof(Word));
    std::memcpy(base + i * block_, base + (i + 1) * block_, block_ * sizeof(Word));
    std::memcpy(base + (i + 1) * block_, t, block_ * sizeof(Word));
    ++i;
  }
}

std::uint64_t Instance::ComputeLabels(const Word* words) const {
  const Word* procs = words + num_shareds_;
  std::uint64_t bits = 0;
  for (std::size_t a = 0; a < atoms_.size(); ++a) {
    const CompiledAtom& c = atoms_[a];
    bool holds = false;
    switch (c.kind) {
      case AtomicProp::Kind::kForallStatus:
        holds = true;
        for (std::size_t i = 0; i < count_ && holds; ++i) {
          holds = (procs[i * block_] == c.status) == c.equal;
        }
        break;
      case AtomicProp::Kind::kExistsStatus:
        for (std::size_t i = 0; i < count_ && !holds; ++i) {
          holds = (procs[i * block_] == c.status) == c.equal;
        }
        break;
      case AtomicProp::Kind::kExistsLess:
        for (std::size_t i = 0; i < count_ && !holds; ++i) {
          const Word* b = procs + i * block_;
          std::int64_t x = c.x_shared ? words[c.x] : b[1 + c.x];
          std::int64_t y = c.y_shared ? words[c.y] : b[1 + c.y];
          holds = x + c.offset < y;
        }
        break;
    }
    if (holds) bits |= std::uint64_t{1} << a;
  }
  return bits;
}

std::size_t Instance::Lookup(const Word* words, std::uint64_t hash) const {
  const std::size_t mask = table_.size() - 1;
  for (std::size_t slot = hash & mask;; slot = (slot + 1) & mask) {
    StateId id = table_[slot];
    if (id == kEmpty) return slot;
    if (hashes_[id] == hash &&
        std::memcmp(arena_.data() + std::size_t{id} * width_, words,
                    width_ * sizeof(Word)) == 0) {
      return slot;
    }
  }
}

void Instance::Grow() {
  std::vector<StateId> bigger(table_.size() * 2, kEmpty);
  const std::size_t mask = bigger.size() - 1;
  for (StateId id : table_) {
    if (id == kEmpty) continue;
    std::size_t slot = hashes_[id] & mask;
    while (bigger[slot] != kEmpty) slot = (slot + 1) & mask;
    bigger[slot] = id;
  }
  table_ = std::move(bigger);
}

Instance::StateId Instance::Intern(const Word* words) {
  const std::uint64_t h = HashWords(words, width_);
  std::size_t slot = Lookup(words, h);
  if (table_[slot] != kEmpty) return table_[slot];
  if (labels_.size() + 1 >= kEmpty) {
    throw ModelError("state store exhausted the 32-bit id space");
  }
  const StateId id = static_cast<StateId>(labels_.size());
  arena_.insert(arena_.end(), words, words + width_);
  hashes_.push_back(h);
  labels_.push_back(ComputeLabels(words));
  succ_begin_.push_back(kNoSuccessors);
  succ_count_.push_back(0);
  table_[slot] = id;
  if (2 * labels_.size() > table_.size()) Grow();
  return id;
}

std::optional<Instance::StateId> Instance::Find(const GlobalState& g) const {
  std::vector<Word> w = Pack(symmetry_ ? Canonicalize(g) : g);
  const std::uint64_t h = HashWords(w.data(), width_);
  StateId id = table_[Lookup(w.data(), h)];
  if (id == kEmpty) return std::nullopt;
  return id;
}

const std::vector<Instance::StateId>& Instance::InitialStates() {
  if (!initial_ready_) {
    for (const GlobalState& g : InitialGlobalStates()) {
      std::vector<Word> w = Pack(g);
      initial_.push_back(Intern(w.data()));
    }
    initial_ready_ = true;
  }
  return initial_;
}

std::span<const Instance::StateId> Instance::Successors(StateId s) {
  if (succ_begin_[s] != kNoSuccessors) {
    return {succ_pool_.data() + succ_begin_[s], succ_count_[s]};
  }
  const std::size_t pw = block_ + num_shareds_;
  std::vector<Word> base(Words(s).begin(), Words(s).end());
  scratch_proc_.resize(pw);
  scratch_glob_.resize(width_);
  scratch_ids_.clear();
  for (std::size_t i = 0; i < count_; ++i) {
    const Word* blk = base.data() + num_shareds_ + i * block_;
    // Identical blocks in a sorted state yield the same successor classes.
    if (symmetry_ && i > 0 && CompareBlocks(blk, blk - block_) == 0) continue;
    std::copy(blk, blk + block_, scratch_proc_.begin());
    std::copy(base.begin(), base.begin() + num_shareds_,
              scratch_proc_.begin() + block_);
    scratch_out_.clear();
    const std::size_t n = kernel_.Successors(scratch_proc_, scratch_out_);
    for (std::size_t k = 0; k < n; ++k) {
      const Word* rec = scratch_out_.data() + k * pw;
      std::copy(base.begin(), base.end(), scratch_glob_.begin());
      std::copy(rec + block_, rec + pw, scratch_glob_.begin());
      std::copy(rec, rec + block_,
                scratch_glob_.begin() + num_shareds_ + i * block_);
      if (symmetry_) SiftBlock(scratch_glob_.data(), i);
      scratch_ids_.push_back(Intern(scratch_glob_.data()));
    }
  }
  std::sort(scratch_ids_.begin(), scratch_ids_.end());
  scratch_ids_.erase(std::unique(scratch_ids_.begin(), scratch_ids_.end()),
                     scratch_ids_.end());
  if (scratch_ids_.empty()) {
    throw ModelError("state without successors: " +
                     FormatGlobalState(State(s), model_.decls));
  }
  succ_begin_[s] = succ_pool_.size();
  succ_count_[s] = static_cast<std::uint32_t>(scratch_ids_.size());
  succ_pool_.insert(succ_pool_.end(), scratch_ids_.begin(), scratch_ids_.end());
  return {succ_pool_.data() + succ_begin_[s], succ_count_[s]};
}

bool Instance::ExploreAll(std::size_t max_states) {
  std::size_t next = 0;
  for (StateId s : InitialStates()) (void)s;
  while (next < num_stored()) {
    if (num_stored() > max_states) return false;
    Successors(static_cast<StateId>(next++));
  }
  return num_stored() <= max_states;
}

}  // namespace tgmc
