#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sreq/model.hpp"

namespace sreq {

struct Resolution {
  /// Set only when there are no diagnostics; immutable from here on.
  std::shared_ptr<const Project> project;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return project != nullptr; }
};

/// Binds every name, types every expression and checks that drivers are
/// self-contained. Diagnostics come out in source order.
Resolution resolve(Project project);

/// Parent-first concatenation of inherited and own drivers. Throws
/// DiagnosticError on an inheritance cycle, an unknown parent or a driver
/// name repeated along the chain.
std::vector<SpecificationDriver> flatten_requirements(const Project& project,
                                                      const RequirementClass& rc);

/// Whether a driver fits the postcondition-inference shape: one call, on
/// the only object argument, to an argument-less command.
struct DriverPattern {
  bool matches = false;
  std::string object_argument;
  std::string target_class;
  std::string command;
  std::vector<std::string> auxiliary_arguments;
  std::vector<std::string> reasons;
};

DriverPattern classify_driver(const SpecificationDriver& driver, const Project& project);

}  // namespace sreq
