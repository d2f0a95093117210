#include "sreq/resolve.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace sreq {

namespace {

enum class Role { DriverPre, DriverBody, DriverPost, CommandPre, CommandPost, CommandBody, QueryPost, QueryBody };

struct Scope {
  Role role;
  const ContractedClass* current = nullptr;
  const std::vector<Argument>* formals = nullptr;
  std::string result_type;

  bool in_driver() const {
    return role == Role::DriverPre || role == Role::DriverBody || role == Role::DriverPost;
  }
  bool allows_old() const { return role == Role::DriverPost || role == Role::CommandPost; }

  const Argument* formal(const std::string& name) const {
    if (formals == nullptr) return nullptr;
    for (const auto& a : *formals) {
      if (a.name == name) return &a;
    }
    return nullptr;
  }
};

class Resolver {
 public:
  explicit Resolver(Project& project) : project_(project) {}

  std::vector<Diagnostic> run() {
    check_declarations();
    for (auto& cls : project_.classes) check_class(cls);
    for (auto& rc : project_.requirement_classes) check_requirement_class(rc);
    std::stable_sort(diags_.begin(), diags_.end(),
                     [](const Diagnostic& a, const Diagnostic& b) { return a.location < b.location; });
    return std::move(diags_);
  }

 private:
  void report(DiagnosticKind kind, std::string message, const SourceLocation& at) {
    diags_.push_back(Diagnostic{kind, std::move(message), at});
  }

  bool type_exists(const std::string& type) const {
    return is_primitive(type) || project_.find_class(type) != nullptr;
  }

  void check_declarations() {
    std::set<std::string> names;
    auto declare = [&](const std::string& name, const SourceLocation& at) {
      if (!names.insert(name).second) report(DiagnosticKind::DuplicateName, "class '" + name + "' declared twice", at);
    };
    for (const auto& c : project_.classes) declare(c.name, c.location);
    for (const auto& rc : project_.requirement_classes) declare(rc.name, rc.location);
  }

  void check_formals(const std::vector<Argument>& args, std::set<std::string>* taken = nullptr) {
    std::set<std::string> seen;
    for (const auto& a : args) {
      if (!seen.insert(a.name).second || (taken && taken->count(a.name))) {
        report(DiagnosticKind::DuplicateName, "argument '" + a.name + "' clashes with another declaration",
               a.location);
      }
      if (!type_exists(a.type)) report(DiagnosticKind::UnknownName, "unknown type '" + a.type + "'", a.location);
    }
  }

  void check_class(ContractedClass& cls) {
    std::set<std::string> features;
    auto declare = [&](const std::string& name, const SourceLocation& at) {
      if (!features.insert(name).second) {
        report(DiagnosticKind::DuplicateName, "feature '" + name + "' declared twice in " + cls.name, at);
      }
    };
    for (const auto& a : cls.attributes) {
      declare(a.name, a.location);
      if (!is_primitive(a.type)) {
        if (type_exists(a.type)) {
          report(DiagnosticKind::TypeMismatch,
                 "attribute '" + a.name + "' must be INTEGER or BOOLEAN; object-valued attributes are not supported",
                 a.location);
        } else {
          report(DiagnosticKind::UnknownName, "unknown type '" + a.type + "'", a.location);
        }
      }
    }
    for (const auto& c : cls.commands) declare(c.name, c.location);
    for (const auto& q : cls.queries) {
      declare(q.name, q.location);
      if (!is_primitive(q.result_type)) {
        report(DiagnosticKind::TypeMismatch, "query '" + q.name + "' must return INTEGER or BOOLEAN", q.location);
      }
    }
    for (auto& c : cls.commands) {
      check_formals(c.args, &features);
      Scope pre{Role::CommandPre, &cls, &c.args, {}};
      for (auto& clause : c.precondition) check_assertion(*clause.expr, pre);
      if (c.body) {
        Scope body{Role::CommandBody, &cls, &c.args, {}};
        check_statements(*c.body, body);
      }
      Scope post{Role::CommandPost, &cls, &c.args, {}};
      for (auto& clause : c.postcondition) check_assertion(*clause.expr, post);
    }
    for (auto& q : cls.queries) {
      check_formals(q.args, &features);
      if (q.body) {
        Scope body{Role::QueryBody, &cls, &q.args, q.result_type};
        check_statements(*q.body, body);
      }
      Scope post{Role::QueryPost, &cls, &q.args, q.result_type};
      for (auto& clause : q.postcondition) check_assertion(*clause.expr, post);
    }
  }

  void check_requirement_class(RequirementClass& rc) {
    if (rc.parent && project_.find_requirement_class(*rc.parent) == nullptr) {
      report(DiagnosticKind::UnknownName, "unknown requirement class '" + *rc.parent + "'", rc.parent_location);
    } else {
      try {
        flatten_requirements(project_, rc);
      } catch (const DiagnosticError& e) {
        report(e.diagnostic().kind, e.diagnostic().message, e.diagnostic().location);
      }
    }
    std::set<std::string> names;
    for (auto& d : rc.drivers) {
      if (!names.insert(d.name).second) {
        report(DiagnosticKind::DuplicateName, "driver '" + d.name + "' declared twice in " + rc.name, d.location);
      }
      check_driver(d);
    }
  }

  void check_driver(SpecificationDriver& d) {
    check_formals(d.args);
    for (const auto& m : d.modify_set) {
      const Argument* a = d.find_argument(m);
      if (a == nullptr) {
        report(DiagnosticKind::NonSelfContainedDriver,
               "modify clause names '" + m + "', which is not a formal argument of " + d.name, d.location);
      } else if (is_primitive(a->type)) {
        report(DiagnosticKind::TypeMismatch, "modify clause must name object arguments, '" + m + "' is " + a->type,
               d.location);
      }
    }
    Scope pre{Role::DriverPre, nullptr, &d.args, {}};
    for (auto& c : d.precondition) check_assertion(*c.expr, pre);
    Scope body{Role::DriverBody, nullptr, &d.args, {}};
    check_statements(d.body, body);
    Scope post{Role::DriverPost, nullptr, &d.args, {}};
    for (auto& c : d.postcondition) check_assertion(*c.expr, post);
  }

  void check_statements(std::vector<Statement>& stmts, const Scope& scope) {
    for (auto& s : stmts) {
      switch (s.kind) {
        case Statement::Kind::Call: check_call(*s.call, scope); break;
        case Statement::Kind::Check:
          for (auto& c : s.assertions) check_assertion(*c.expr, scope);
          break;
        case Statement::Kind::If:
          for (auto& b : s.branches) {
            check_assertion(*b.condition, scope);
            check_statements(b.body, scope);
          }
          check_statements(s.otherwise, scope);
          break;
        case Statement::Kind::Assign: check_assign(s, scope); break;
      }
    }
  }

  void check_assign(Statement& s, const Scope& scope) {
    if (scope.in_driver()) {
      report(DiagnosticKind::MisplacedConstruct, "specification drivers may not assign; use feature calls",
             s.location);
      return;
    }
    std::string want;
    if (s.variable == "Result") {
      if (scope.role != Role::QueryBody) {
        report(DiagnosticKind::MisplacedConstruct, "Result is assignable only in query bodies", s.location);
        return;
      }
      want = scope.result_type;
    } else {
      const Attribute* attr = scope.current->find_attribute(s.variable);
      if (attr == nullptr) {
        report(DiagnosticKind::UnknownName, "unknown attribute '" + s.variable + "'", s.location);
        return;
      }
      if (scope.role == Role::QueryBody) {
        report(DiagnosticKind::MisplacedConstruct, "queries are pure and may not assign attributes", s.location);
        return;
      }
      want = attr->type;
    }
    expect_type(*s.value, scope, want);
  }

  void check_call(Expr& call, const Scope& scope) {
    const ContractedClass* cls = nullptr;
    if (call.kind == Expr::Kind::Name || call.operand == nullptr) {
      if (scope.in_driver()) {
        report(DiagnosticKind::NonSelfContainedDriver,
               "call to '" + call.name + "' is not made on a formal argument", call.location);
        return;
      }
      cls = scope.current;
    } else {
      Expr& target = *call.operand;
      if (target.kind == Expr::Kind::Current && !scope.in_driver()) {
        target.type = scope.current->name;
        cls = scope.current;
      } else if (target.kind != Expr::Kind::Name) {
        report(DiagnosticKind::TypeMismatch, "call targets must be formal arguments", target.location);
        return;
      } else {
        const Argument* a = scope.formal(target.name);
        if (a == nullptr) {
          report(scope.in_driver() ? DiagnosticKind::NonSelfContainedDriver : DiagnosticKind::UnknownName,
                 "call target '" + target.name + "' is not a formal argument", target.location);
          return;
        }
        if (is_primitive(a->type)) {
          report(DiagnosticKind::TypeMismatch, "'" + target.name + "' is " + a->type + ", not an object",
                 target.location);
          return;
        }
        target.type = a->type;
        cls = project_.find_class(a->type);
        if (cls == nullptr) return;  // unknown type already reported
      }
    }
    const Command* cmd = cls->find_command(call.name);
    if (cmd == nullptr) {
      if (cls->find_attribute(call.name) || cls->find_query(call.name)) {
        report(DiagnosticKind::TypeMismatch, "'" + call.name + "' is not a command of " + cls->name, call.location);
      } else {
        report(DiagnosticKind::UnknownName, "feature '" + call.name + "', which is not a part of class " + cls->name,
               call.location);
      }
      return;
    }
    if (call.args.size() != cmd->args.size()) {
      report(DiagnosticKind::TypeMismatch,
             "command '" + call.name + "' expects " + std::to_string(cmd->args.size()) + " argument(s)",
             call.location);
      return;
    }
    for (std::size_t i = 0; i < cmd->args.size(); ++i) {
      if (!is_primitive(cmd->args[i].type)) {
        report(DiagnosticKind::TypeMismatch, "object arguments to commands are not supported", call.args[i]->location);
        continue;
      }
      expect_type(*call.args[i], scope, cmd->args[i].type);
    }
    call.type.clear();
  }

  void check_assertion(Expr& e, const Scope& scope) { expect_type(e, scope, kBoolean); }

  void expect_type(Expr& e, const Scope& scope, const std::string& want) {
    std::string got = type_of(e, scope);
    if (got.empty() || want.empty()) return;
    if (got != want) {
      report(DiagnosticKind::TypeMismatch, "expected " + want + ", found " + got, e.location);
    }
  }

  std::string value_type(Expr& e, const Scope& scope) {
    std::string t = type_of(e, scope);
    if (!t.empty() && !is_primitive(t)) {
      report(DiagnosticKind::TypeMismatch, "object '" + print_name(e) + "' used as a value", e.location);
      return {};
    }
    return t;
  }

  static std::string print_name(const Expr& e) {
    if (e.kind == Expr::Kind::Current) return "Current";
    return e.name;
  }

  std::string type_of(Expr& e, const Scope& scope) {
    e.type = compute_type(e, scope);
    return e.type;
  }

  std::string compute_type(Expr& e, const Scope& scope) {
    switch (e.kind) {
      case Expr::Kind::Integer: return kInteger;
      case Expr::Kind::Boolean: return kBoolean;
      case Expr::Kind::Result:
        if (scope.role == Role::QueryPost || scope.role == Role::QueryBody) return scope.result_type;
        report(scope.in_driver() ? DiagnosticKind::NonSelfContainedDriver : DiagnosticKind::MisplacedConstruct,
               "Result is only meaningful in queries", e.location);
        return {};
      case Expr::Kind::Current:
        if (scope.in_driver()) {
          report(DiagnosticKind::NonSelfContainedDriver, "drivers must not refer to Current", e.location);
          return {};
        }
        return scope.current->name;
      case Expr::Kind::Name: return name_type(e, scope);
      case Expr::Kind::Feature: return feature_type(e, scope);
      case Expr::Kind::Old: {
        if (!scope.allows_old()) {
          report(DiagnosticKind::MisplacedConstruct, "'old' is allowed only in postconditions", e.location);
        }
        return type_of(*e.operand, scope);
      }
      case Expr::Kind::Unary: {
        const std::string want = e.unary == UnaryOp::Not ? kBoolean : kInteger;
        std::string got = value_type(*e.operand, scope);
        if (!got.empty() && got != want) {
          report(DiagnosticKind::TypeMismatch, "operand of '" + std::string(e.unary == UnaryOp::Not ? "not" : "-") +
                                                   "' must be " + want + ", found " + got,
                 e.operand->location);
        }
        return want;
      }
      case Expr::Kind::Binary: return binary_type(e, scope);
    }
    return {};
  }

  std::string binary_type(Expr& e, const Scope& scope) {
    std::string l = value_type(*e.lhs, scope);
    std::string r = value_type(*e.rhs, scope);
    auto require = [&](const std::string& t, const std::string& got, const Expr& at) {
      if (!got.empty() && got != t) {
        report(DiagnosticKind::TypeMismatch,
               "operand of '" + std::string(spelling(e.binary)) + "' must be " + t + ", found " + got, at.location);
      }
    };
    switch (e.binary) {
      case BinaryOp::Add:
      case BinaryOp::Sub:
        require(kInteger, l, *e.lhs);
        require(kInteger, r, *e.rhs);
        return kInteger;
      case BinaryOp::Lt:
      case BinaryOp::Le:
      case BinaryOp::Gt:
      case BinaryOp::Ge:
        require(kInteger, l, *e.lhs);
        require(kInteger, r, *e.rhs);
        return kBoolean;
      case BinaryOp::Eq:
      case BinaryOp::Neq:
        if (!l.empty() && !r.empty() && l != r) {
          report(DiagnosticKind::TypeMismatch, "cannot compare " + l + " with " + r, e.location);
        }
        return kBoolean;
      case BinaryOp::And:
      case BinaryOp::Or:
      case BinaryOp::Implies:
        require(kBoolean, l, *e.lhs);
        require(kBoolean, r, *e.rhs);
        return kBoolean;
    }
    return {};
  }

  std::string name_type(Expr& e, const Scope& scope) {
    if (const Argument* a = scope.formal(e.name)) return a->type;
    if (scope.in_driver()) {
      report(DiagnosticKind::NonSelfContainedDriver,
             "'" + e.name + "' is not a formal argument; drivers are expressed only in terms of their arguments",
             e.location);
      return {};
    }
    if (const Attribute* attr = scope.current->find_attribute(e.name)) return attr->type;
    if (const Query* q = scope.current->find_query(e.name)) {
      if (!q->args.empty()) {
        report(DiagnosticKind::TypeMismatch, "query '" + e.name + "' expects arguments", e.location);
      }
      return q->result_type;
    }
    if (scope.current->find_command(e.name)) {
      report(DiagnosticKind::TypeMismatch, "command '" + e.name + "' used as an expression", e.location);
      return {};
    }
    report(DiagnosticKind::UnknownName, "unknown name '" + e.name + "'", e.location);
    return {};
  }

  std::string feature_type(Expr& e, const Scope& scope) {
    const ContractedClass* cls = nullptr;
    if (e.operand == nullptr) {
      if (scope.in_driver()) {
        report(DiagnosticKind::NonSelfContainedDriver, "'" + e.name + "' is not applied to a formal argument",
               e.location);
        return {};
      }
      cls = scope.current;
    } else {
      Expr& target = *e.operand;
      if (target.kind != Expr::Kind::Name && target.kind != Expr::Kind::Current) {
        report(DiagnosticKind::TypeMismatch, "feature chains are not supported (object-valued attributes)",
               target.location);
        return {};
      }
      std::string t = type_of(target, scope);
      if (t.empty()) return {};
      if (is_primitive(t)) {
        report(DiagnosticKind::TypeMismatch, "'" + print_name(target) + "' is " + t + ", not an object",
               target.location);
        return {};
      }
      cls = project_.find_class(t);
      if (cls == nullptr) return {};
    }
    if (const Attribute* attr = cls->find_attribute(e.name)) {
      if (!e.args.empty()) report(DiagnosticKind::TypeMismatch, "attribute '" + e.name + "' takes no arguments", e.location);
      return attr->type;
    }
    if (const Query* q = cls->find_query(e.name)) {
      if (e.args.size() != q->args.size()) {
        report(DiagnosticKind::TypeMismatch,
               "query '" + e.name + "' expects " + std::to_string(q->args.size()) + " argument(s)", e.location);
        return q->result_type;
      }
      for (std::size_t i = 0; i < e.args.size(); ++i) {
        Expr& actual = *e.args[i];
        if (actual.kind != Expr::Kind::Name) {
          report(DiagnosticKind::TypeMismatch, "query actuals must be argument names", actual.location);
          continue;
        }
        const Argument* a = scope.formal(actual.name);
        if (a == nullptr) {
          report(scope.in_driver() ? DiagnosticKind::NonSelfContainedDriver : DiagnosticKind::UnknownName,
                 "query actual '" + actual.name + "' is not a formal argument", actual.location);
          continue;
        }
        actual.type = a->type;
        if (a->type != q->args[i].type) {
          report(DiagnosticKind::TypeMismatch, "expected " + q->args[i].type + ", found " + a->type, actual.location);
        }
      }
      return q->result_type;
    }
    if (cls->find_command(e.name)) {
      report(DiagnosticKind::TypeMismatch, "command '" + e.name + "' used as an expression", e.location);
      return {};
    }
    report(DiagnosticKind::UnknownName, "feature '" + e.name + "', which is not a part of class " + cls->name,
           e.location);
    return {};
  }

  Project& project_;
  std::vector<Diagnostic> diags_;
};

void count_calls(const std::vector<Statement>& stmts, std::vector<const Statement*>& calls, bool& control) {
  for (const auto& s : stmts) {
    switch (s.kind) {
      case Statement::Kind::Call: calls.push_back(&s); break;
      case Statement::Kind::If:
        control = true;
        for (const auto& b : s.branches) count_calls(b.body, calls, control);
        count_calls(s.otherwise, calls, control);
        break;
      case Statement::Kind::Check: control = true; break;
      case Statement::Kind::Assign: break;
    }
  }
}

}  // namespace

Resolution resolve(Project project) {
  Resolver resolver(project);
  std::vector<Diagnostic> diags = resolver.run();
  Resolution r;
  if (diags.empty()) {
    r.project = std::make_shared<const Project>(std::move(project));
  }
  r.diagnostics = std::move(diags);
  return r;
}

std::vector<SpecificationDriver> flatten_requirements(const Project& project, const RequirementClass& rc) {
  std::vector<const RequirementClass*> chain;
  std::set<std::string> visited;
  const RequirementClass* cur = &rc;
  while (cur != nullptr) {
    if (!visited.insert(cur->name).second) {
      throw DiagnosticError(Diagnostic{DiagnosticKind::InheritanceCycle,
                                       "inheritance cycle through requirement class '" + cur->name + "'",
                                       rc.location});
    }
    chain.push_back(cur);
    if (!cur->parent) break;
    const RequirementClass* parent = project.find_requirement_class(*cur->parent);
    if (parent == nullptr) {
      throw DiagnosticError(Diagnostic{DiagnosticKind::UnknownName,
                                       "unknown requirement class '" + *cur->parent + "'", cur->parent_location});
    }
    cur = parent;
  }
  std::vector<SpecificationDriver> result;
  std::map<std::string, std::string> owner_of;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    for (const auto& d : (*it)->drivers) {
      auto [pos, inserted] = owner_of.emplace(d.name, (*it)->name);
      if (!inserted && pos->second != (*it)->name) {
        throw DiagnosticError(Diagnostic{DiagnosticKind::DuplicateDriverName,
                                         "driver '" + d.name + "' of " + (*it)->name + " collides with the one inherited from " +
                                             pos->second,
                                         d.location});
      }
      result.push_back(d);
    }
  }
  return result;
}

DriverPattern classify_driver(const SpecificationDriver& driver, const Project& project) {
  DriverPattern p;
  std::vector<const Argument*> objects;
  for (const auto& a : driver.args) {
    if (is_primitive(a.type)) {
      p.auxiliary_arguments.push_back(a.name);
    } else {
      objects.push_back(&a);
    }
  }
  std::vector<const Statement*> calls;
  bool control = false;
  count_calls(driver.body, calls, control);
  if (calls.empty()) p.reasons.push_back("no feature call");
  if (calls.size() > 1) p.reasons.push_back("multiple feature calls");
  if (control) p.reasons.push_back("body contains conditionals or checks");
  if (objects.empty()) p.reasons.push_back("no object argument");
  if (objects.size() > 1) p.reasons.push_back("multiple object arguments");
  if (objects.size() == 1) p.object_argument = objects.front()->name;

  if (calls.size() == 1) {
    const Expr& call = *calls.front()->call;
    p.command = call.name;
    if (call.kind == Expr::Kind::Feature && call.operand && call.operand->kind == Expr::Kind::Name) {
      const std::string& target = call.operand->name;
      if (const Argument* a = driver.find_argument(target)) {
        p.target_class = a->type;
        if (const ContractedClass* cls = project.find_class(a->type)) {
          if (const Command* cmd = cls->find_command(call.name); cmd && !cmd->args.empty()) {
            p.reasons.push_back("called command takes arguments");
          }
        }
      }
      if (!driver.modifies(target)) p.reasons.push_back("call target is not in the modify clause");
    }
  }
  p.matches = p.reasons.empty();
  return p;
}

}  // namespace sreq
