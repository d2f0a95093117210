#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace sreq {

/// When a state symbol is read: in the pre-state of a routine (`old`), in
/// its post-state, or at a numbered snapshot of a symbolic execution.
struct Epoch {
  enum class Kind { Old, Current, Snapshot };
  Kind kind = Kind::Current;
  int index = 0;

  static Epoch old() { return {Kind::Old, 0}; }
  static Epoch current() { return {Kind::Current, 0}; }
  static Epoch snapshot(int k) { return {Kind::Snapshot, k}; }

  auto operator<=>(const Epoch&) const = default;
  std::string str() const;
};

enum class Sort { Int, Bool };

struct Symbol {
  enum class Kind { Zero, State, Aux, Query };

  Kind kind = Kind::Aux;
  Sort sort = Sort::Int;
  /// Object argument name for State/Query; "Current" inside class contracts.
  std::string object;
  /// Attribute, auxiliary argument or query name.
  std::string name;
  Epoch epoch;
  /// Query actuals (argument names) and, for object actuals, the epoch at
  /// which their state is read.
  std::vector<std::string> actuals;
  std::vector<std::optional<Epoch>> actual_epochs;

  static Symbol zero();
  static Symbol state(std::string object, std::string name, Sort sort, Epoch epoch);
  static Symbol aux(std::string name, Sort sort);
  static Symbol query(std::string object, std::string name, Sort sort, Epoch epoch,
                      std::vector<std::string> actuals, std::vector<std::optional<Epoch>> actual_epochs);

  auto operator<=>(const Symbol&) const = default;
  bool operator==(const Symbol&) const = default;

  /// Surface rendering: `old second`, `clock.second@1`, `tr.on (s)`.
  std::string render() const;
};

using Model = std::map<Symbol, std::int64_t>;

class LogicError : public std::runtime_error {
 public:
  enum class Kind { UnboundSymbol, TypeMismatch, NonLinearTerm, UnmappedEpoch };
  LogicError(Kind kind, const std::string& message) : std::runtime_error(message), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Integer term. Immutable and cheap to copy.
class Term {
 public:
  enum class Kind { Literal, Variable, Sum, Negation };

  static Term literal(std::int64_t value);
  static Term variable(Symbol symbol);
  static Term sum(Term a, Term b);
  static Term neg(Term a);
  static Term difference(Term a, Term b) { return sum(std::move(a), neg(std::move(b))); }

  Kind kind() const;
  std::int64_t value() const;
  const Symbol& symbol() const;
  /// Sum operands; Negation has only `lhs`.
  Term lhs() const;
  Term rhs() const;

  bool operator==(const Term& other) const;

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

enum class CompareOp { Eq, Ne, Lt, Le, Gt, Ge };

std::string_view spelling(CompareOp op);
CompareOp negate(CompareOp op);

class Formula {
 public:
  enum class Kind { Constant, Atom, Compare, Not, And, Or, Implies };

  static Formula constant(bool value);
  static Formula truth() { return constant(true); }
  static Formula falsity() { return constant(false); }
  static Formula atom(Symbol symbol);
  static Formula compare(CompareOp op, Term lhs, Term rhs);
  /// Double negations cancel and negated comparisons flip (`not x < 5` is
  /// `x >= 5`); constants fold.
  static Formula negate(Formula f);
  /// Flattens nested conjunctions and folds constants.
  static Formula conj(std::vector<Formula> parts);
  static Formula conj(Formula a, Formula b) { return conj(std::vector<Formula>{std::move(a), std::move(b)}); }
  static Formula disj(std::vector<Formula> parts);
  static Formula disj(Formula a, Formula b) { return disj(std::vector<Formula>{std::move(a), std::move(b)}); }
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);

  Kind kind() const;
  bool value() const;
  const Symbol& symbol() const;
  CompareOp op() const;
  Term lhs() const;
  Term rhs() const;
  /// Children of Not (one), And/Or (any), Implies (antecedent, consequent).
  const std::vector<Formula>& operands() const;

  bool operator==(const Formula& other) const;

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// Rewrites the epoch of every State and Query symbol (and of query object
/// actuals). Throws LogicError(UnmappedEpoch) when the mapping misses one.
Formula rename_epochs(const Formula& f, const std::map<Epoch, Epoch>& mapping);
Term rename_epochs(const Term& t, const std::map<Epoch, Epoch>& mapping);

using SymbolMap = std::function<Symbol(const Symbol&)>;
Formula rename_symbols(const Formula& f, const SymbolMap& fn);
Term rename_symbols(const Term& t, const SymbolMap& fn);

/// Simultaneous substitution: integer symbols take a Term, boolean symbols a
/// Formula. Throws LogicError(TypeMismatch) on a sort clash.
using Replacement = std::variant<Term, Formula>;
using Substitution = std::map<Symbol, Replacement>;
Formula substitute(const Formula& f, const Substitution& s);
Term substitute(const Term& t, const Substitution& s);
Formula substitute(const Formula& f, const Symbol& var, const Replacement& replacement);

/// Throws LogicError(UnboundSymbol) for a symbol missing from the model;
/// the zero symbol is always 0.
bool evaluate(const Formula& f, const Model& m);
std::int64_t evaluate(const Term& t, const Model& m);

/// Coefficient form of a term: sum of coeff * symbol plus a constant.
struct Linear {
  std::map<Symbol, std::int64_t> coefficients;  // zero coefficients removed
  std::int64_t constant = 0;
};
Linear linearize(const Term& t);

/// Negation normal form whose comparisons are all `t <= c`; difference
/// shapes come out as `x - y <= c`, with the zero symbol for unary bounds.
Formula normalize(const Formula& f);

/// If `f` is `x - y <= c` (possibly with the zero symbol), returns (x, y, c).
struct DifferenceAtom {
  Symbol x;
  Symbol y;
  std::int64_t bound = 0;
};
std::optional<DifferenceAtom> as_difference(const Formula& f);

std::set<Symbol> symbols(const Formula& f);
std::set<Symbol> symbols(const Term& t);
/// Number of Atom and Compare leaves.
std::size_t atom_count(const Formula& f);

/// Top-level conjuncts (the formula itself when it is not a conjunction).
std::vector<Formula> conjuncts(const Formula& f);

std::string render(const Term& t);
std::string render(const Formula& f);

}  // namespace sreq
