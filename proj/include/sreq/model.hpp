#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sreq/source.hpp"

namespace sreq {

inline constexpr const char* kInteger = "INTEGER";
inline constexpr const char* kBoolean = "BOOLEAN";

bool is_primitive(const std::string& type);

enum class UnaryOp { Not, Negate };
enum class BinaryOp { Add, Sub, Eq, Neq, Lt, Le, Gt, Ge, And, Or, Implies };

std::string_view spelling(BinaryOp op);

struct Expr;
using ExprPtr = std::shared_ptr<Expr>;

/// Surface expression as written in a contract or body.
///
/// `Feature` covers both qualified (`clock.second`, `tr.on (s)`) and
/// unqualified calls with actuals (`on (s)`); an unqualified name without
/// actuals stays a `Name` until resolution decides what it denotes.
struct Expr {
  enum class Kind { Integer, Boolean, Name, Result, Current, Feature, Old, Unary, Binary };

  Kind kind = Kind::Integer;
  SourceLocation location;
  std::int64_t integer = 0;
  bool boolean = false;
  std::string name;
  ExprPtr operand;  // Old / Unary operand, Feature target (null when unqualified)
  std::vector<ExprPtr> args;
  UnaryOp unary = UnaryOp::Not;
  BinaryOp binary = BinaryOp::Add;
  ExprPtr lhs;
  ExprPtr rhs;
  /// Filled in by resolve(): INTEGER, BOOLEAN or a class name.
  std::string type;

  static ExprPtr make_integer(std::int64_t value, SourceLocation loc = {});
  static ExprPtr make_boolean(bool value, SourceLocation loc = {});
  static ExprPtr make_name(std::string name, SourceLocation loc = {});
  static ExprPtr make_feature(ExprPtr target, std::string name, std::vector<ExprPtr> args,
                              SourceLocation loc = {});
  static ExprPtr make_old(ExprPtr operand, SourceLocation loc = {});
  static ExprPtr make_unary(UnaryOp op, ExprPtr operand, SourceLocation loc = {});
  static ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourceLocation loc = {});
};

/// One assertion clause of a require/ensure/check block.
struct Clause {
  std::string label;
  ExprPtr expr;
  SourceLocation location;
};

struct Statement;

struct Branch {
  ExprPtr condition;
  std::vector<Statement> body;
};

struct Statement {
  enum class Kind { Call, If, Check, Assign };

  Kind kind = Kind::Call;
  SourceLocation location;
  ExprPtr call;                      // Call: a Feature (or Name) expression
  std::vector<Branch> branches;      // If: `if` then `elseif`s
  std::vector<Statement> otherwise;  // If: `else` part
  bool has_else = false;
  std::vector<Clause> assertions;    // Check
  std::string variable;              // Assign target: attribute name or "Result"
  ExprPtr value;                     // Assign
};

struct Argument {
  std::string name;
  std::string type;
  SourceLocation location;
};

struct Attribute {
  std::string name;
  std::string type;
  SourceLocation location;
};

struct Command {
  std::string name;
  std::vector<Argument> args;
  std::vector<Clause> precondition;
  /// Absent means a hidden implementation, assumed to meet the contract.
  std::optional<std::vector<Statement>> body;
  std::vector<Clause> postcondition;
  std::string comment;
  SourceLocation location;
};

struct Query {
  std::string name;
  std::vector<Argument> args;
  std::string result_type;
  std::optional<std::vector<Statement>> body;
  std::vector<Clause> postcondition;
  std::string comment;
  SourceLocation location;
};

struct ContractedClass {
  std::string name;
  bool frozen = false;
  std::vector<std::string> notes;
  std::string description;
  std::vector<Attribute> attributes;
  std::vector<Command> commands;
  std::vector<Query> queries;
  SourceLocation location;

  const Attribute* find_attribute(const std::string& name) const;
  const Command* find_command(const std::string& name) const;
  const Query* find_query(const std::string& name) const;
};

/// A seamless requirement: natural-language comment plus a contracted,
/// self-contained routine.
struct SpecificationDriver {
  std::string name;
  /// Comment lines after the signature, normalized to one line.
  std::string comment;
  /// Comment block right before the declaration (e.g. a feature-clause
  /// header such as "A clock tick:"); empty when absent.
  std::string leading_comment;
  std::vector<Argument> args;
  std::vector<std::string> modify_set;
  std::vector<Clause> precondition;  // modify clauses lifted out
  std::vector<Statement> body;
  std::vector<Clause> postcondition;
  SourceLocation location;
  /// Requirement class that declares the driver (set by the parser).
  std::string owner;

  const Argument* find_argument(const std::string& name) const;
  bool modifies(const std::string& object) const;
};

struct RequirementClass {
  std::string name;
  std::optional<std::string> parent;
  SourceLocation parent_location;
  std::string header_comment;
  std::string description;
  std::vector<std::string> notes;
  std::vector<SpecificationDriver> drivers;
  SourceLocation location;
};

struct Project {
  std::vector<ContractedClass> classes;
  std::vector<RequirementClass> requirement_classes;
  /// Qualified declaration name (`CLOCK`, `CLOCK.tick`, `REQS.req_1`) to location.
  std::map<std::string, SourceLocation> source_index;

  const ContractedClass* find_class(const std::string& name) const;
  const RequirementClass* find_requirement_class(const std::string& name) const;
  std::size_t driver_count() const;
};

}  // namespace sreq
