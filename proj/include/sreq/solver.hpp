#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sreq/logic.hpp"

namespace sreq {

struct Verdict {
  enum class Kind { Valid, Invalid, Sat, Unsat, Unsupported };

  Kind kind = Kind::Unsat;
  /// Satisfying model (Sat) or counterexample (Invalid).
  Model model;
  /// Unsupported: why, and the atom outside the fragment.
  std::string reason;
  std::optional<Formula> offending_atom;
  /// Unsat/Valid decided without any case split: the atoms of the negative
  /// cycle that refutes the conjunction, and the cycle's total weight.
  std::vector<Formula> cycle;
  std::int64_t cycle_weight = 0;
};

std::string to_string(Verdict::Kind kind);

struct SolverOptions {
  /// Nonzero seeds permute the decision order; verdicts never depend on it.
  std::uint64_t seed = 0;
};

/// Satisfiability over integer difference logic plus propositions. The input
/// is normalized first (normalize() is idempotent). Returned models are
/// checked against `f` with evaluate(); a failing check throws
/// std::logic_error.
Verdict check_sat(const Formula& f, const SolverOptions& options = {});

/// Valid iff the negation is unsatisfiable; Invalid carries a model of the
/// negation.
Verdict check_valid(const Formula& f, const SolverOptions& options = {});

/// Display names for epochs in explanations ("pre-state", "after call 1").
struct EpochLabels {
  std::map<Epoch, std::string> names;
  std::string label(const Epoch& e) const;
};

/// Counterexample table grouped by epoch, or the refuting negative cycle.
/// Throws std::invalid_argument for Valid and Unsupported verdicts.
std::string explain(const Verdict& verdict, const EpochLabels& labels = {});

/// Standalone SMT-LIB 2 script asserting `f`, ending in (check-sat). Uses
/// QF_IDL when every atom is a difference bound and QF_LIA otherwise.
std::string to_smtlib(const Formula& f, const std::string& comment = {});

}  // namespace sreq
