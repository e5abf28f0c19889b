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

#include "tgmc/ltl.hh"

#include <algorithm>
#include <cassert>

namespace tgmc {
namespace ltl {

Formula Formula::Lit(std::size_t atom, bool negated) {
  Formula f;
  f.kind = Kind::kLiteral;
  f.atom = atom;
  f.negated = negated;
  return f;
}

namespace {

Formula Binary(Formula::Kind kind, Formula a, Formula b) {
  Formula f;
  f.kind = kind;
  f.children.push_back(std::move(a));
  f.children.push_back(std::move(b));
  return f;
}

Formula Unary(Formula::Kind kind, Formula a) {
  Formula f;
  f.kind = kind;
  f.children.push_back(std::move(a));
  return f;
}

}  // namespace

Formula Formula::And(Formula a, Formula b) {
  return Binary(Kind::kAnd, std::move(a), std::move(b));
}
Formula Formula::Or(Formula a, Formula b) {
  return Binary(Kind::kOr, std::move(a), std::move(b));
}
Formula Formula::Until(Formula a, Formula b) {
  return Binary(Kind::kUntil, std::move(a), std::move(b));
}
Formula Formula::Release(Formula a, Formula b) {
  return Binary(Kind::kRelease, std::move(a), std::move(b));
}
Formula Formula::Finally(Formula a) {
  return Unary(Kind::kFinally, std::move(a));
}
Formula Formula::Globally(Formula a) {
  return Unary(Kind::kGlobally, std::move(a));
}

bool Formula::ContainsRelease() const {
  if (kind == Kind::kRelease) return true;
  return std::any_of(children.begin(), children.end(),
                     [](const Formula& c) { return c.ContainsRelease(); });
}

std::size_t Formula::NumAtoms() const {
  if (kind == Kind::kLiteral) return atom + 1;
  std::size_t n = 0;
  for (const auto& c : children) n = std::max(n, c.NumAtoms());
  return n;
}

std::size_t Formula::Depth() const {
  std::size_t d = 0;
  for (const auto& c : children) d = std::max(d, c.Depth() + 1);
  return d;
}

Formula NegateToNnf(const Formula& f) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::kLiteral:
      return Formula::Lit(f.atom, !f.negated);
    case K::kAnd:
      return Formula::Or(NegateToNnf(f.children[0]),
                         NegateToNnf(f.children[1]));
    case K::kOr:
      return Formula::And(NegateToNnf(f.children[0]),
                          NegateToNnf(f.children[1]));
    case K::kUntil:
      return Formula::Release(NegateToNnf(f.children[0]),
                              NegateToNnf(f.children[1]));
    case K::kRelease:
      return Formula::Until(NegateToNnf(f.children[0]),
                            NegateToNnf(f.children[1]));
    case K::kFinally:
      return Formula::Globally(NegateToNnf(f.children[0]));
    case K::kGlobally:
      return Formula::Finally(NegateToNnf(f.children[0]));
  }
  return f;
}

std::string ToString(const Formula& f, const AtomNamer& name) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::kLiteral:
      return (f.negated ? "!" : "") + name(f.atom);
    case K::kAnd:
      return "(" + ToString(f.children[0], name) + " && " +
             ToString(f.children[1], name) + ")";
    case K::kOr:
      return "(" + ToString(f.children[0], name) + " || " +
             ToString(f.children[1], name) + ")";
    case K::kUntil:
      return "(" + ToString(f.children[0], name) + " U " +
             ToString(f.children[1], name) + ")";
    case K::kRelease:
      return "(" + ToString(f.children[0], name) + " R " +
             ToString(f.children[1], name) + ")";
    case K::kFinally:
      return "F " + ToString(f.children[0], name);
    case K::kGlobally:
      return "G " + ToString(f.children[0], name);
  }
  return "?";
}

std::string ToString(const Formula& f) {
  return ToString(f, [](std::size_t i) { return "p" + std::to_string(i); });
}

namespace {

using Truth = std::vector<bool>;

// Least (until) or greatest (release) fixpoint of
//   X = hold ∪ (keep ∩ pre(X))    resp.    X = hold ∩ (keep ∪ pre(X)).
Truth Fixpoint(const LassoWord& w, const Truth& keep, const Truth& hold,
               bool greatest) {
  const std::size_t n = w.letters.size();
  Truth x(n, greatest);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = n; k-- > 0;) {
      bool next = x[w.Next(k)];
      bool v = greatest ? (hold[k] && (keep[k] || next))
                        : (hold[k] || (keep[k] && next));
      if (v != x[k]) {
        x[k] = v;
        changed = true;
      }
    }
  }
  return x;
}

Truth Sat(const Formula& f, const LassoWord& w) {
  using K = Formula::Kind;
  const std::size_t n = w.letters.size();
  Truth out(n);
  switch (f.kind) {
    case K::kLiteral:
      for (std::size_t k = 0; k < n; ++k) {
        bool v = (w.letters[k] >> f.atom) & 1u;
        out[k] = f.negated ? !v : v;
      }
      return out;
    case K::kAnd:
    case K::kOr: {
      Truth a = Sat(f.children[0], w);
      Truth b = Sat(f.children[1], w);
      for (std::size_t k = 0; k < n; ++k) {
        out[k] = f.kind == K::kAnd ? (a[k] && b[k]) : (a[k] || b[k]);
      }
      return out;
    }
    case K::kUntil:
      return Fixpoint(w, Sat(f.children[0], w), Sat(f.children[1], w), false);
    case K::kRelease:
      return Fixpoint(w, Sat(f.children[0], w), Sat(f.children[1], w), true);
    case K::kFinally:
      return Fixpoint(w, Truth(n, true), Sat(f.children[0], w), false);
    case K::kGlobally:
      return Fixpoint(w, Truth(n, false), Sat(f.children[0], w), true);
  }
  return out;
}

}  // namespace

bool Evaluate(const Formula& f, const LassoWord& word) {
  assert(!word.letters.empty() && word.loop_start < word.letters.size());
  return Sat(f, word)[0];
}

}  // namespace ltl
}  // namespace tgmc
