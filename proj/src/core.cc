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

#include "tgmc/core.hh"

#include <sstream>

namespace tgmc {

std::uint64_t ParamEnv::Get(const std::string& name) const {
  auto it = bindings_.find(name);
  if (it == bindings_.end()) {
    throw ModelError("unbound parameter '" + name + "'");
  }
  return it->second;
}

std::string ParamEnv::ToString(const std::vector<std::string>& order) const {
  std::ostringstream os;
  bool first = true;
  auto emit = [&](const std::string& name, std::uint64_t value) {
    if (!first) os << ",";
    first = false;
    os << name << "=" << value;
  };
  if (order.empty()) {
    for (const auto& [name, value] : bindings_) emit(name, value);
  } else {
    for (const auto& name : order) {
      if (Has(name)) emit(name, Get(name));
    }
  }
  return os.str();
}

LinearForm LinearForm::Param(const std::string& name, std::int64_t coeff) {
  LinearForm f;
  if (coeff != 0) f.coeffs_[name] = coeff;
  return f;
}

LinearForm& LinearForm::operator+=(const LinearForm& rhs) {
  for (const auto& [name, c] : rhs.coeffs_) {
    auto& mine = coeffs_[name];
    mine += c;
    if (mine == 0) coeffs_.erase(name);
  }
  constant_ += rhs.constant_;
  return *this;
}

LinearForm& LinearForm::operator-=(const LinearForm& rhs) {
  return *this += rhs * -1;
}

LinearForm& LinearForm::operator*=(std::int64_t k) {
  if (k == 0) {
    coeffs_.clear();
    constant_ = 0;
    return *this;
  }
  for (auto& [name, c] : coeffs_) c *= k;
  constant_ *= k;
  return *this;
}

std::int64_t LinearForm::Evaluate(const ParamEnv& env) const {
  std::int64_t sum = constant_;
  for (const auto& [name, c] : coeffs_) {
    sum += c * static_cast<std::int64_t>(env.Get(name));
  }
  return sum;
}

std::string LinearForm::ToString() const {
  std::ostringstream os;
  bool first = true;
  auto term = [&](std::int64_t c, const std::string& name) {
    std::int64_t mag = c < 0 ? -c : c;
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (name.empty()) {
      os << mag;
    } else if (mag == 1) {
      os << name;
    } else {
      os << mag << "*" << name;
    }
  };
  for (const auto& [name, c] : coeffs_) term(c, name);
  if (constant_ != 0 || first) term(constant_, "");
  return os.str();
}

const char* CmpOpSymbol(CmpOp op) {
  switch (op) {
    case CmpOp::kLess:
      return "<";
    case CmpOp::kLessEq:
      return "<=";
    case CmpOp::kEqual:
      return "==";
    case CmpOp::kGreaterEq:
      return ">=";
    case CmpOp::kGreater:
      return ">";
  }
  return "?";
}

bool Compare(std::int64_t lhs, CmpOp op, std::int64_t rhs) {
  switch (op) {
    case CmpOp::kLess:
      return lhs < rhs;
    case CmpOp::kLessEq:
      return lhs <= rhs;
    case CmpOp::kEqual:
      return lhs == rhs;
    case CmpOp::kGreaterEq:
      return lhs >= rhs;
    case CmpOp::kGreater:
      return lhs > rhs;
  }
  return false;
}

std::string Comparison::ToString() const {
  return lhs.ToString() + " " + CmpOpSymbol(op) + " " + rhs.ToString();
}

bool ResilienceCondition::Holds(const ParamEnv& env) const {
  for (const auto& c : conjuncts) {
    if (!c.Holds(env)) return false;
  }
  return true;
}

std::vector<Comparison> ResilienceCondition::Violated(
    const ParamEnv& env) const {
  std::vector<Comparison> out;
  for (const auto& c : conjuncts) {
    if (!c.Holds(env)) out.push_back(c);
  }
  return out;
}

std::string ResilienceCondition::ToString() const {
  if (conjuncts.empty()) return "true";
  std::string s;
  for (std::size_t i = 0; i < conjuncts.size(); ++i) {
    if (i) s += " && ";
    s += conjuncts[i].ToString();
  }
  return s;
}

}  // namespace tgmc
