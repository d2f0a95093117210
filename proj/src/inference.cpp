#include "sreq/inference.hpp"

#include <functional>
#include <map>

#include "sreq/lower.hpp"
#include "sreq/resolve.hpp"

namespace sreq {

namespace {
std::string join(const std::vector<std::string>& parts) {
  std::string out;
  for (const auto& p : parts) out += (out.empty() ? "" : "; ") + p;
  return out;
}
}  // namespace

InferenceError::InferenceError(Kind kind, std::vector<std::string> reasons)
    : std::runtime_error(to_string(kind) + ": " + join(reasons)), kind_(kind), reasons_(std::move(reasons)) {}

std::string to_string(InferenceError::Kind kind) {
  return kind == InferenceError::Kind::PatternMismatch ? "PatternMismatch" : "UnboundAuxiliary";
}

namespace {

bool is_state_of(const Term& t, const std::string& object) {
  return t.kind() == Term::Kind::Variable && t.symbol().kind == Symbol::Kind::State && t.symbol().object == object &&
         t.symbol().epoch.kind == Epoch::Kind::Current;
}

bool is_aux(const Term& t) { return t.kind() == Term::Kind::Variable && t.symbol().kind == Symbol::Kind::Aux; }

bool uses_aux(const Formula& f) {
  for (const Symbol& s : symbols(f)) {
    if (s.kind == Symbol::Kind::Aux) return true;
  }
  return false;
}

// o.q -> q at the given epoch (Old for the antecedent, kept for the consequent).
Formula detach(const Formula& f, const std::string& object, bool antecedent) {
  return rename_symbols(f, [&](const Symbol& s) {
    if (s.kind != Symbol::Kind::State && s.kind != Symbol::Kind::Query) return s;
    Symbol out = s;
    if (out.object == object) out.object = "Current";
    if (antecedent) out.epoch = Epoch::old();
    for (std::size_t i = 0; i < out.actuals.size(); ++i) {
      if (out.actual_epochs[i] && antecedent) out.actual_epochs[i] = Epoch::old();
    }
    return out;
  });
}

// f(a) must be a, a + c, a - c: exactly one auxiliary with coefficient 1.
bool single_aux_shape(const Term& t) {
  Linear l = linearize(t);
  if (l.coefficients.size() != 1) return false;
  const auto& [s, k] = *l.coefficients.begin();
  return s.kind == Symbol::Kind::Aux && k == 1;
}

}  // namespace

InferredAssertion infer_assertion(const SpecificationDriver& driver, const Project& project) {
  const DriverPattern pattern = classify_driver(driver, project);
  if (!pattern.matches) throw InferenceError(InferenceError::Kind::PatternMismatch, pattern.reasons);
  if (driver.postcondition.empty()) {
    throw InferenceError(InferenceError::Kind::PatternMismatch, {"driver has no postcondition"});
  }
  const std::string& o = pattern.object_argument;
  const LowerScope scope{&project, nullptr, &driver.args};

  std::vector<Formula> pre;
  for (const auto& c : driver.precondition) {
    for (const auto& a : conjuncts(lower_formula(*c.expr, scope))) pre.push_back(a);
  }
  // Bindings o.p = a, in either orientation; the first one for `a` wins.
  Substitution binding;
  std::vector<Formula> antecedent;
  std::vector<Formula> residual;
  for (const auto& atom : pre) {
    if (atom.kind() == Formula::Kind::Compare && atom.op() == CompareOp::Eq) {
      const Term l = atom.lhs();
      const Term r = atom.rhs();
      const Term* state = is_state_of(l, o) ? &l : is_state_of(r, o) ? &r : nullptr;
      const Term* aux = is_aux(l) ? &l : is_aux(r) ? &r : nullptr;
      if (state && aux && !binding.count(aux->symbol())) {
        Symbol old = state->symbol();
        old.object = "Current";
        old.epoch = Epoch::old();
        binding.emplace(aux->symbol(), Term::variable(old));
        continue;
      }
    }
    residual.push_back(atom);
  }
  std::vector<std::string> unbound;
  auto bind = [&](const Formula& f) {
    for (const Symbol& s : symbols(f)) {
      if (s.kind == Symbol::Kind::Aux && !binding.count(s)) unbound.push_back(s.name);
    }
    return substitute(f, binding);
  };
  for (const auto& atom : residual) antecedent.push_back(bind(detach(atom, o, true)));

  std::vector<Formula> consequent;
  for (const auto& c : driver.postcondition) {
    for (const auto& atom : conjuncts(lower_formula(*c.expr, scope))) {
      if (uses_aux(atom)) {
        bool shaped = atom.kind() == Formula::Kind::Compare && atom.op() == CompareOp::Eq &&
                      ((is_state_of(atom.lhs(), o) && single_aux_shape(atom.rhs())) ||
                       (is_state_of(atom.rhs(), o) && single_aux_shape(atom.lhs())));
        if (!shaped) {
          throw InferenceError(InferenceError::Kind::UnboundAuxiliary,
                               {"postcondition atom '" + render(atom) + "' is not of the form " + o + ".q = f(a)"});
        }
      }
      consequent.push_back(bind(detach(atom, o, false)));
    }
  }
  if (!unbound.empty()) {
    std::vector<std::string> reasons;
    for (const auto& a : unbound) {
      reasons.push_back("auxiliary argument '" + a + "' is not bound by an equality " + o + ".p = " + a +
                        " in the precondition");
    }
    throw InferenceError(InferenceError::Kind::UnboundAuxiliary, reasons);
  }

  InferredAssertion out;
  out.owner = driver.owner;
  out.driver = driver.name;
  Formula then = Formula::conj(consequent);
  out.assertion = antecedent.empty() ? then : Formula::implies(Formula::conj(antecedent), then);
  out.rendering = render(out.assertion);
  return out;
}

namespace {

bool calls(const std::vector<Statement>& body, const SpecificationDriver& d, const std::string& cls,
           const std::string& command) {
  for (const auto& s : body) {
    if (s.kind == Statement::Kind::Call && s.call->name == command && s.call->operand &&
        s.call->operand->kind == Expr::Kind::Name) {
      const Argument* a = d.find_argument(s.call->operand->name);
      if (a && a->type == cls) return true;
    }
    for (const auto& b : s.branches) {
      if (calls(b.body, d, cls, command)) return true;
    }
    if (calls(s.otherwise, d, cls, command)) return true;
  }
  return false;
}

}  // namespace

InferenceReport infer_contract(const RequirementClass& rc, const Project& project, const std::string& target) {
  std::string cls_name;
  std::string command = target;
  if (auto dot = target.find('.'); dot != std::string::npos) {
    cls_name = target.substr(0, dot);
    command = target.substr(dot + 1);
  }
  std::vector<std::string> owners;
  for (const auto& c : project.classes) {
    if ((cls_name.empty() || c.name == cls_name) && c.find_command(command)) owners.push_back(c.name);
  }
  if (owners.empty()) {
    throw DiagnosticError(Diagnostic{DiagnosticKind::UnknownName, "no command '" + target + "' in the project", {}});
  }
  InferenceReport report;
  report.target = owners.size() == 1 ? owners.front() + "." + command : command;
  for (const auto& d : flatten_requirements(project, rc)) {
    bool relevant = false;
    for (const auto& owner : owners) relevant = relevant || calls(d.body, d, owner, command);
    if (!relevant) {
      report.notes.push_back(d.owner + "." + d.name + " does not call " + target + "; skipped");
      continue;
    }
    try {
      report.assertions.push_back(infer_assertion(d, project));
    } catch (const InferenceError& e) {
      report.failures.push_back({d.owner, d.name, e.kind(), e.reasons()});
    }
  }
  return report;
}

}  // namespace sreq
