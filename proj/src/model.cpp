#include "sreq/model.hpp"

#include <algorithm>

namespace sreq {

bool is_primitive(const std::string& type) { return type == kInteger || type == kBoolean; }

std::string_view spelling(BinaryOp op) {
  switch (op) {
    case BinaryOp::Add: return "+";
    case BinaryOp::Sub: return "-";
    case BinaryOp::Eq: return "=";
    case BinaryOp::Neq: return "/=";
    case BinaryOp::Lt: return "<";
    case BinaryOp::Le: return "<=";
    case BinaryOp::Gt: return ">";
    case BinaryOp::Ge: return ">=";
    case BinaryOp::And: return "and";
    case BinaryOp::Or: return "or";
    case BinaryOp::Implies: return "implies";
  }
  return "?";
}

ExprPtr Expr::make_integer(std::int64_t value, SourceLocation loc) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Integer;
  e->integer = value;
  e->location = std::move(loc);
  return e;
}

ExprPtr Expr::make_boolean(bool value, SourceLocation loc) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Boolean;
  e->boolean = value;
  e->location = std::move(loc);
  return e;
}

ExprPtr Expr::make_name(std::string name, SourceLocation loc) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Name;
  e->name = std::move(name);
  e->location = std::move(loc);
  return e;
}

ExprPtr Expr::make_feature(ExprPtr target, std::string name, std::vector<ExprPtr> args,
                           SourceLocation loc) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Feature;
  e->operand = std::move(target);
  e->name = std::move(name);
  e->args = std::move(args);
  e->location = std::move(loc);
  return e;
}

ExprPtr Expr::make_old(ExprPtr operand, SourceLocation loc) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Old;
  e->operand = std::move(operand);
  e->location = std::move(loc);
  return e;
}

ExprPtr Expr::make_unary(UnaryOp op, ExprPtr operand, SourceLocation loc) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Unary;
  e->unary = op;
  e->operand = std::move(operand);
  e->location = std::move(loc);
  return e;
}

ExprPtr Expr::make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs, SourceLocation loc) {
  auto e = std::make_shared<Expr>();
  e->kind = Kind::Binary;
  e->binary = op;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  e->location = std::move(loc);
  return e;
}

namespace {
template <typename T>
const T* find_named(const std::vector<T>& items, const std::string& name) {
  auto it = std::find_if(items.begin(), items.end(), [&](const T& x) { return x.name == name; });
  return it == items.end() ? nullptr : &*it;
}
}  // namespace

const Attribute* ContractedClass::find_attribute(const std::string& name) const {
  return find_named(attributes, name);
}
const Command* ContractedClass::find_command(const std::string& name) const {
  return find_named(commands, name);
}
const Query* ContractedClass::find_query(const std::string& name) const {
  return find_named(queries, name);
}

const Argument* SpecificationDriver::find_argument(const std::string& name) const {
  return find_named(args, name);
}

bool SpecificationDriver::modifies(const std::string& object) const {
  return std::find(modify_set.begin(), modify_set.end(), object) != modify_set.end();
}

const ContractedClass* Project::find_class(const std::string& name) const {
  return find_named(classes, name);
}

const RequirementClass* Project::find_requirement_class(const std::string& name) const {
  return find_named(requirement_classes, name);
}

std::size_t Project::driver_count() const {
  std::size_t n = 0;
  for (const auto& rc : requirement_classes) n += rc.drivers.size();
  return n;
}

}  // namespace sreq
