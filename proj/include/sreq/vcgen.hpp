#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sreq/logic.hpp"
#include "sreq/lower.hpp"
#include "sreq/model.hpp"
#include "sreq/solver.hpp"

namespace sreq {

class VerificationError : public std::runtime_error {
 public:
  enum class Kind { UnsupportedConstruct };
  VerificationError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// hypothesis ⟹ goal, plus what it took to state it.
struct Obligation {
  std::string owner;  // "CLOCK_REQUIREMENTS.req_1", "CLOCK.tick"
  std::string name;
  Formula hypothesis = Formula::truth();
  Formula goal = Formula::truth();
  std::vector<Epoch> snapshots;
  std::vector<std::string> assumptions_report;
  EpochLabels labels;

  Formula formula() const { return Formula::implies(hypothesis, goal); }
};

/// Symbolic execution of a driver body against the callee contracts.
/// Snapshot 0 is the entry state; every call advances its target to a
/// fresh snapshot.
Obligation driver_obligation(const SpecificationDriver& driver, const Project& project);

/// Instantiated postconditions of every query application in `f`, closed
/// under the applications the instances themselves mention. `object_classes`
/// maps object names occurring in `f` to their class.
Formula query_axioms(const Formula& f, const Project& project,
                     const std::map<std::string, std::string>& object_classes);

enum class CheckMode { Assert, Assume };

/// Weakest precondition of a loop-free command or query body. Assignments
/// rewrite Current-epoch symbols only; `old` symbols are left alone. Throws
/// VerificationError for calls.
Formula wp(const std::vector<Statement>& body, const Formula& post, const LowerScope& scope,
           CheckMode checks = CheckMode::Assert);

enum class Status { Proved, Failed, Unsupported, Skipped };
std::string to_string(Status status);

struct VerificationOutcome {
  std::string owner;
  std::string name;
  std::string comment;
  Status status = Status::Unsupported;
  std::optional<Model> counterexample;
  /// Counterexample table, unsupported reason or skip note.
  std::string detail;
  std::vector<std::string> assumptions;
  std::vector<std::string> notes;
  double elapsed_ms = 0;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  unsigned jobs = 1;
};

/// Proves an obligation and packages the verdict.
VerificationOutcome discharge(const Obligation& obligation, const SolverOptions& options = {});

/// One outcome per flattened driver, in declaration order.
std::vector<VerificationOutcome> verify_requirement_class(const RequirementClass& rc, const Project& project,
                                                          const VerifyOptions& options = {});

/// Implementations against their own contracts: one outcome per ensure
/// clause of every implemented command and query, plus one for its checks.
std::vector<VerificationOutcome> verify_class(const ContractedClass& cls, const Project& project,
                                              const VerifyOptions& options = {});

}  // namespace sreq
