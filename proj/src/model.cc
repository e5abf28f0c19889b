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

#include "tgmc/model.hh"

#include <algorithm>

namespace tgmc {

AtomicProp AtomicProp::ForallStatus(std::size_t status, bool equal) {
  AtomicProp p;
  p.kind = Kind::kForallStatus;
  p.status = status;
  p.equal = equal;
  return p;
}

AtomicProp AtomicProp::ExistsStatus(std::size_t status, bool equal) {
  AtomicProp p;
  p.kind = Kind::kExistsStatus;
  p.status = status;
  p.equal = equal;
  return p;
}

AtomicProp AtomicProp::ExistsLess(VarRef x, LinearForm offset, VarRef y) {
  AtomicProp p;
  p.kind = Kind::kExistsLess;
  p.x = x;
  p.offset = std::move(offset);
  p.y = y;
  return p;
}

std::string AtomicProp::ToString(const Declarations& decls) const {
  switch (kind) {
    case Kind::kForallStatus:
    case Kind::kExistsStatus:
      return std::string(kind == Kind::kForallStatus ? "all" : "some") +
             "(sv " + (equal ? "==" : "!=") + " " +
             decls.statuses.at(status) + ")";
    case Kind::kExistsLess: {
      std::string s = "some(" + decls.VarName(x);
      LinearForm pos, neg;
      // Print x + c < y with c's negative part moved to the right, so that
      // "rcvd < nsnt + fs" round-trips as written.
      for (const auto& [p, c] : offset.coefficients()) {
        (c > 0 ? pos : neg) += LinearForm::Param(p, c > 0 ? c : -c);
      }
      if (offset.constant() > 0) pos += LinearForm(offset.constant());
      if (offset.constant() < 0) neg += LinearForm(-offset.constant());
      if (!(pos == LinearForm())) s += " + " + pos.ToString();
      s += " < " + decls.VarName(y);
      if (!(neg == LinearForm())) s += " + " + neg.ToString();
      return s + ")";
    }
  }
  return "?";
}

const SpecDef* ModelDef::FindSpec(const std::string& spec) const {
  auto it = std::find_if(specs.begin(), specs.end(),
                         [&](const SpecDef& s) { return s.name == spec; });
  return it == specs.end() ? nullptr : &*it;
}

const UnfairnessDef* ModelDef::FindUnfairness(const std::string& u) const {
  auto it =
      std::find_if(unfairness.begin(), unfairness.end(),
                   [&](const UnfairnessDef& d) { return d.name == u; });
  return it == unfairness.end() ? nullptr : &*it;
}

std::size_t ModelDef::InternAtom(const AtomicProp& prop) {
  auto it = std::find(atoms.begin(), atoms.end(), prop);
  if (it != atoms.end()) return static_cast<std::size_t>(it - atoms.begin());
  atoms.push_back(prop);
  return atoms.size() - 1;
}

std::string ModelDef::AtomName(std::size_t atom) const {
  return atoms.at(atom).ToString(decls);
}

ltl::AtomNamer ModelDef::Namer() const {
  return [this](std::size_t i) { return AtomName(i); };
}

}  // namespace tgmc
