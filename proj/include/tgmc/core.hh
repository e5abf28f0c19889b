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

#ifndef TGMC_CORE_HH_
#define TGMC_CORE_HH_

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace tgmc {

/**
 * Raised when a model is inconsistent with its instantiation: unbound
 * parameters, resilience violations under strict mode, non-total successor
 * relations and similar problems that are the model author's fault.
 */
class ModelError : public std::runtime_error {
 public:
  explicit ModelError(const std::string& what) : std::runtime_error(what) {}
};

/// Binding of parameter names to natural numbers.
class ParamEnv {
 public:
  ParamEnv() = default;
  ParamEnv(std::initializer_list<std::pair<const std::string, std::uint64_t>>
               bindings)
      : bindings_(bindings) {}

  void Bind(const std::string& name, std::uint64_t value) {
    bindings_[name] = value;
  }

  bool Has(const std::string& name) const {
    return bindings_.find(name) != bindings_.end();
  }

  /// Throws ModelError for unbound names.
  std::uint64_t Get(const std::string& name) const;

  const std::map<std::string, std::uint64_t>& bindings() const {
    return bindings_;
  }

  /// "n=7,t=2,f=2" in the given parameter order (or map order if empty).
  std::string ToString(const std::vector<std::string>& order = {}) const;

  bool operator==(const ParamEnv& rhs) const = default;

 private:
  std::map<std::string, std::uint64_t> bindings_;
};

/**
 * Integer-coefficient linear expression over parameter names plus a constant,
 * e.g. n - 3*t + 1. Zero coefficients are never stored, so structural
 * equality coincides with equality of the expressed function.
 */
class LinearForm {
 public:
  LinearForm() = default;
  explicit LinearForm(std::int64_t constant) : constant_(constant) {}

  static LinearForm Param(const std::string& name, std::int64_t coeff = 1);

  LinearForm& operator+=(const LinearForm& rhs);
  LinearForm& operator-=(const LinearForm& rhs);
  LinearForm& operator*=(std::int64_t k);

  friend LinearForm operator+(LinearForm a, const LinearForm& b) {
    return a += b;
  }
  friend LinearForm operator-(LinearForm a, const LinearForm& b) {
    return a -= b;
  }
  friend LinearForm operator*(LinearForm a, std::int64_t k) { return a *= k; }
  LinearForm operator-() const { return LinearForm() - *this; }

  bool operator==(const LinearForm& rhs) const = default;

  const std::map<std::string, std::int64_t>& coefficients() const {
    return coeffs_;
  }
  std::int64_t constant() const { return constant_; }
  bool IsConstant() const { return coeffs_.empty(); }

  /// Sum of coeff * value plus the constant. Unbound names raise ModelError.
  std::int64_t Evaluate(const ParamEnv& env) const;

  /// Canonical surface syntax, e.g. "n - 3*t + 1"; "0" for the zero form.
  std::string ToString() const;

 private:
  std::map<std::string, std::int64_t> coeffs_;
  std::int64_t constant_ = 0;
};

enum class CmpOp { kLess, kLessEq, kEqual, kGreaterEq, kGreater };

const char* CmpOpSymbol(CmpOp op);
bool Compare(std::int64_t lhs, CmpOp op, std::int64_t rhs);

struct Comparison {
  LinearForm lhs;
  CmpOp op = CmpOp::kEqual;
  LinearForm rhs;

  bool Holds(const ParamEnv& env) const {
    return Compare(lhs.Evaluate(env), op, rhs.Evaluate(env));
  }
  std::string ToString() const;
  bool operator==(const Comparison& rhs) const = default;
};

/// Conjunction of parameter comparisons; the empty conjunction holds.
struct ResilienceCondition {
  std::vector<Comparison> conjuncts;

  bool Holds(const ParamEnv& env) const;
  /// Conjuncts that fail under env, for warnings.
  std::vector<Comparison> Violated(const ParamEnv& env) const;
  std::string ToString() const;
  bool operator==(const ResilienceCondition& rhs) const = default;
};

inline std::int64_t EvalLinearForm(const LinearForm& form,
                                   const ParamEnv& env) {
  return form.Evaluate(env);
}

inline bool CheckResilience(const ResilienceCondition& rc,
                            const ParamEnv& env) {
  return rc.Holds(env);
}

}  // namespace tgmc

#endif /* TGMC_CORE_HH_ */
