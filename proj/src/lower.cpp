#include "sreq/lower.hpp"

namespace sreq {

Sort sort_of(const std::string& type) { return type == kBoolean ? Sort::Bool : Sort::Int; }

namespace {

[[noreturn]] void fail(const Expr& e, const std::string& message) {
  throw DiagnosticError(Diagnostic{DiagnosticKind::TypeMismatch, message, e.location});
}

class Lowering {
 public:
  explicit Lowering(const LowerScope& scope) : scope_(scope) {}

  // Either a term or a formula depending on the expression's type.
  Replacement value(const Expr& e, Epoch epoch) {
    if (e.type == kBoolean) return formula(e, epoch);
    return term(e, epoch);
  }

  Formula formula(const Expr& e, Epoch epoch) {
    switch (e.kind) {
      case Expr::Kind::Boolean: return Formula::constant(e.boolean);
      case Expr::Kind::Old: return formula(*e.operand, Epoch::old());
      case Expr::Kind::Name:
      case Expr::Kind::Result:
      case Expr::Kind::Feature: return Formula::atom(symbol(e, epoch));
      case Expr::Kind::Unary:
        if (e.unary != UnaryOp::Not) fail(e, "integer expression used as an assertion");
        return Formula::negate(formula(*e.operand, epoch));
      case Expr::Kind::Binary: return binary(e, epoch);
      default: fail(e, "expression is not a boolean");
    }
  }

  Term term(const Expr& e, Epoch epoch) {
    switch (e.kind) {
      case Expr::Kind::Integer: return Term::literal(e.integer);
      case Expr::Kind::Old: return term(*e.operand, Epoch::old());
      case Expr::Kind::Name:
      case Expr::Kind::Result:
      case Expr::Kind::Feature: return Term::variable(symbol(e, epoch));
      case Expr::Kind::Unary:
        if (e.unary != UnaryOp::Negate) fail(e, "boolean expression used as an integer");
        return Term::neg(term(*e.operand, epoch));
      case Expr::Kind::Binary:
        if (e.binary == BinaryOp::Add) return Term::sum(term(*e.lhs, epoch), term(*e.rhs, epoch));
        if (e.binary == BinaryOp::Sub) return Term::difference(term(*e.lhs, epoch), term(*e.rhs, epoch));
        fail(e, "boolean expression used as an integer");
      default: fail(e, "expression is not an integer");
    }
  }

 private:
  Formula binary(const Expr& e, Epoch epoch) {
    auto cmp = [&](CompareOp op) { return Formula::compare(op, term(*e.lhs, epoch), term(*e.rhs, epoch)); };
    switch (e.binary) {
      case BinaryOp::Eq:
      case BinaryOp::Neq: {
        Formula f = e.lhs->type == kBoolean ? Formula::iff(formula(*e.lhs, epoch), formula(*e.rhs, epoch))
                                            : cmp(CompareOp::Eq);
        if (e.binary == BinaryOp::Eq) return f;
        return e.lhs->type == kBoolean ? Formula::negate(f) : cmp(CompareOp::Ne);
      }
      case BinaryOp::Lt: return cmp(CompareOp::Lt);
      case BinaryOp::Le: return cmp(CompareOp::Le);
      case BinaryOp::Gt: return cmp(CompareOp::Gt);
      case BinaryOp::Ge: return cmp(CompareOp::Ge);
      case BinaryOp::And: return Formula::conj(formula(*e.lhs, epoch), formula(*e.rhs, epoch));
      case BinaryOp::Or: return Formula::disj(formula(*e.lhs, epoch), formula(*e.rhs, epoch));
      case BinaryOp::Implies: return Formula::implies(formula(*e.lhs, epoch), formula(*e.rhs, epoch));
      default: fail(e, "integer expression used as an assertion");
    }
  }

  const Argument* formal(const std::string& name) const {
    if (scope_.formals == nullptr) return nullptr;
    for (const auto& a : *scope_.formals) {
      if (a.name == name) return &a;
    }
    return nullptr;
  }

  Symbol symbol(const Expr& e, Epoch epoch) {
    const Sort sort = sort_of(e.type);
    if (e.kind == Expr::Kind::Result) return Symbol::aux("Result", sort);
    if (e.kind == Expr::Kind::Name) {
      if (const Argument* a = formal(e.name)) {
        if (!is_primitive(a->type)) fail(e, "object '" + e.name + "' used as a value");
        return Symbol::aux(e.name, sort);
      }
      if (scope_.current == nullptr) fail(e, "unbound name '" + e.name + "'");
      if (scope_.current->find_attribute(e.name)) return Symbol::state("Current", e.name, sort, epoch);
      if (scope_.current->find_query(e.name)) return Symbol::query("Current", e.name, sort, epoch, {}, {});
      fail(e, "unbound name '" + e.name + "'");
    }
    // Feature
    std::string object = "Current";
    const ContractedClass* cls = scope_.current;
    if (e.operand != nullptr) {
      const Expr& target = *e.operand;
      if (target.kind == Expr::Kind::Name) {
        object = target.name;
        cls = scope_.project ? scope_.project->find_class(target.type) : nullptr;
      } else if (target.kind != Expr::Kind::Current) {
        fail(target, "unsupported feature target");
      }
    }
    if (cls == nullptr) fail(e, "cannot resolve the class of '" + e.name + "'");
    if (cls->find_attribute(e.name)) return Symbol::state(object, e.name, sort, epoch);
    if (cls->find_query(e.name) == nullptr) fail(e, "'" + e.name + "' is not a query of " + cls->name);
    std::vector<std::string> actuals;
    std::vector<std::optional<Epoch>> epochs;
    for (const auto& a : e.args) {
      if (a->kind != Expr::Kind::Name) fail(*a, "query actuals must be argument names");
      actuals.push_back(a->name);
      if (is_primitive(a->type)) {
        epochs.push_back(std::nullopt);
      } else {
        epochs.push_back(epoch);
      }
    }
    return Symbol::query(object, e.name, sort, epoch, std::move(actuals), std::move(epochs));
  }

  const LowerScope& scope_;
};

}  // namespace

Formula lower_formula(const Expr& e, const LowerScope& scope) {
  return Lowering(scope).formula(e, Epoch::current());
}

Term lower_term(const Expr& e, const LowerScope& scope) { return Lowering(scope).term(e, Epoch::current()); }

Formula lower_clauses(const std::vector<Clause>& clauses, const LowerScope& scope) {
  std::vector<Formula> parts;
  for (const auto& c : clauses) parts.push_back(lower_formula(*c.expr, scope));
  return Formula::conj(std::move(parts));
}

}  // namespace sreq
