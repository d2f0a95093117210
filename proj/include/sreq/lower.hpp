#pragma once

#include <vector>

#include "sreq/logic.hpp"
#include "sreq/model.hpp"

namespace sreq {

/// Where a resolved expression lives. `current` is null for drivers.
struct LowerScope {
  const Project* project = nullptr;
  const ContractedClass* current = nullptr;
  const std::vector<Argument>* formals = nullptr;
};

/// Translation of resolved surface expressions into the logic. Attributes
/// of the enclosing class read object "Current", `x.f` reads object `x`,
/// primitive formals become auxiliaries and `Result` the auxiliary "Result".
/// Everything outside `old` is at the Current epoch.
Formula lower_formula(const Expr& e, const LowerScope& scope);
Term lower_term(const Expr& e, const LowerScope& scope);
Formula lower_clauses(const std::vector<Clause>& clauses, const LowerScope& scope);

Sort sort_of(const std::string& type);

}  // namespace sreq
