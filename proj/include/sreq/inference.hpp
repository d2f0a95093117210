#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "sreq/logic.hpp"
#include "sreq/model.hpp"

namespace sreq {

class InferenceError : public std::runtime_error {
 public:
  enum class Kind { PatternMismatch, UnboundAuxiliary };
  InferenceError(Kind kind, std::vector<std::string> reasons);
  Kind kind() const { return kind_; }
  const std::vector<std::string>& reasons() const { return reasons_; }

 private:
  Kind kind_;
  std::vector<std::string> reasons_;
};

std::string to_string(InferenceError::Kind kind);

/// An implication to add to the postcondition of the called command.
struct InferredAssertion {
  std::string owner;
  std::string driver;
  Formula assertion = Formula::truth();
  std::string rendering;
};

/// Translates a single-call driver: `o.q` in the precondition becomes
/// `old q` in the antecedent, `o.q` in the postcondition becomes `q` in the
/// consequent, and an auxiliary `a` bound by `o.p = a` is replaced by
/// `old p` (the binding itself leaves no trace).
InferredAssertion infer_assertion(const SpecificationDriver& driver, const Project& project);

struct InferenceFailure {
  std::string owner;
  std::string driver;
  InferenceError::Kind kind = InferenceError::Kind::PatternMismatch;
  std::vector<std::string> reasons;
};

struct InferenceReport {
  std::string target;  // "CLOCK.tick"
  std::vector<InferredAssertion> assertions;
  std::vector<InferenceFailure> failures;
  std::vector<std::string> notes;
};

/// Every flattened driver that calls `target` ("tick" or "CLOCK.tick"), in
/// order. Drivers calling only other commands are skipped with a note.
/// Throws DiagnosticError(UnknownName) when no class has such a command.
InferenceReport infer_contract(const RequirementClass& rc, const Project& project, const std::string& target);

}  // namespace sreq
