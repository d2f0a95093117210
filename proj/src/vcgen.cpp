#include "sreq/vcgen.hpp"

#include <atomic>
#include <chrono>
#include <functional>
#include <set>
#include <thread>

#include "sreq/parser.hpp"
#include "sreq/resolve.hpp"

namespace sreq {

std::string to_string(Status status) {
  switch (status) {
    case Status::Proved: return "PROVED";
    case Status::Failed: return "FAILED";
    case Status::Unsupported: return "UNSUPPORTED";
    case Status::Skipped: return "SKIPPED";
  }
  return "?";
}

namespace {

[[noreturn]] void unsupported(const std::string& message) {
  throw VerificationError(VerificationError::Kind::UnsupportedConstruct, message);
}

Formula equal(const Symbol& a, const Symbol& b) {
  if (a.sort == Sort::Bool) return Formula::iff(Formula::atom(a), Formula::atom(b));
  return Formula::compare(CompareOp::Eq, Term::variable(a), Term::variable(b));
}

Replacement default_value(Sort sort) {
  if (sort == Sort::Bool) return Formula::falsity();
  return Term::literal(0);
}

// ------------------------------------------------------------ driver obligations

class DriverExecution {
 public:
  DriverExecution(const SpecificationDriver& d, const Project& p) : driver_(d), project_(p) {
    scope_ = LowerScope{&project_, nullptr, &driver_.args};
    for (const auto& a : driver_.args) {
      if (is_primitive(a.type)) continue;
      const ContractedClass* cls = project_.find_class(a.type);
      if (cls == nullptr) unsupported("unknown class " + a.type);
      objects_[a.name] = cls;
    }
  }

  Obligation run() {
    Obligation ob;
    ob.owner = driver_.owner + "." + driver_.name;
    ob.name = driver_.name;
    std::map<std::string, int> snap;
    for (const auto& [o, _] : objects_) snap[o] = 0;

    Formula pre = at(lower_clauses(driver_.precondition, scope_), snap);
    std::vector<const Statement*> body;
    for (const auto& s : driver_.body) body.push_back(&s);
    Formula goal = execute(body, snap);

    std::map<std::string, std::string> classes;
    for (const auto& [o, cls] : objects_) classes[o] = cls->name;
    Formula axioms = query_axioms(Formula::conj(pre, goal), project_, classes);

    ob.hypothesis = Formula::conj(pre, axioms);
    ob.goal = goal;
    for (int k = 0; k < next_; ++k) ob.snapshots.push_back(Epoch::snapshot(k));
    ob.labels.names[Epoch::snapshot(0)] = "pre-state";
    for (const auto& [k, label] : call_labels_) {
      ob.labels.names[Epoch::snapshot(k)] = call_labels_.size() == 1 ? "post-state" : label;
    }

    if (objects_.size() > 1) {
      std::string names;
      for (const auto& [o, _] : objects_) names += (names.empty() ? "" : ", ") + o;
      ob.assumptions_report.push_back("object arguments " + names + " are distinct objects (no aliasing)");
    }
    ob.assumptions_report.insert(ob.assumptions_report.end(), call_notes_.begin(), call_notes_.end());
    std::vector<std::string> unmodified;
    for (const auto& [o, _] : objects_) {
      if (!driver_.modifies(o)) unmodified.push_back(o);
    }
    if (!unmodified.empty()) {
      std::string names;
      for (const auto& o : unmodified) names += (names.empty() ? "" : ", ") + o;
      ob.assumptions_report.push_back("frame: " + names + " outside the modify clause must end unchanged");
    }
    return ob;
  }

 private:
  // Moves every object read to its current snapshot; `old` means entry.
  Formula at(const Formula& f, const std::map<std::string, int>& snap) const {
    return rename_symbols(f, [&](const Symbol& s) { return rebase(s, snap); });
  }

  Symbol rebase(const Symbol& s, const std::map<std::string, int>& snap) const {
    if (s.kind != Symbol::Kind::State && s.kind != Symbol::Kind::Query) return s;
    auto shift = [&](const std::string& object, const Epoch& e) {
      if (e.kind == Epoch::Kind::Old) return Epoch::snapshot(0);
      if (e.kind == Epoch::Kind::Current) return Epoch::snapshot(snap.at(object));
      return e;
    };
    Symbol out = s;
    out.epoch = shift(s.object, s.epoch);
    for (std::size_t i = 0; i < out.actuals.size(); ++i) {
      if (out.actual_epochs[i]) out.actual_epochs[i] = shift(out.actuals[i], *out.actual_epochs[i]);
    }
    return out;
  }

  Formula execute(std::vector<const Statement*> stmts, std::map<std::string, int> snap) {
    if (stmts.empty()) return finish(snap);
    const Statement& s = *stmts.front();
    std::vector<const Statement*> rest(stmts.begin() + 1, stmts.end());
    switch (s.kind) {
      case Statement::Kind::Check: {
        Formula phi = at(lower_clauses(s.assertions, scope_), snap);
        return Formula::conj(phi, execute(rest, snap));
      }
      case Statement::Kind::If: {
        std::vector<Formula> cases;
        std::vector<Formula> earlier;  // negated conditions of previous branches
        auto branch = [&](const std::vector<Statement>& body) {
          std::vector<const Statement*> path;
          for (const auto& b : body) path.push_back(&b);
          path.insert(path.end(), rest.begin(), rest.end());
          return execute(path, snap);
        };
        for (const auto& b : s.branches) {
          Formula c = at(lower_formula(*b.condition, scope_), snap);
          std::vector<Formula> guard = earlier;
          guard.push_back(c);
          cases.push_back(Formula::implies(Formula::conj(guard), branch(b.body)));
          earlier.push_back(Formula::negate(c));
        }
        cases.push_back(Formula::implies(Formula::conj(earlier), branch(s.otherwise)));
        return Formula::conj(cases);
      }
      case Statement::Kind::Call: return call(s, rest, snap);
      case Statement::Kind::Assign: unsupported("assignment in a specification driver");
    }
    return Formula::truth();
  }

  Formula call(const Statement& s, const std::vector<const Statement*>& rest, std::map<std::string, int> snap) {
    const Expr& e = *s.call;
    if (e.kind != Expr::Kind::Feature || !e.operand || e.operand->kind != Expr::Kind::Name) {
      unsupported("call without an object target");
    }
    const std::string& target = e.operand->name;
    auto obj = objects_.find(target);
    if (obj == objects_.end()) unsupported("call target '" + target + "' is not an object argument");
    const ContractedClass& cls = *obj->second;
    const Command* cmd = cls.find_command(e.name);
    if (cmd == nullptr) unsupported(cls.name + " has no command " + e.name);

    const int before = snap[target];
    const int after = next_++;
    const std::string label = "after call " + std::to_string(after) + " (" + target + "." + e.name + ")";
    call_labels_[after] = label;
    call_notes_.push_back(cls.name + "." + cmd->name + " at snapshot " + std::to_string(before) +
                          " is modelled by its contract only");
    call_notes_.push_back(cls.name + "." + cmd->name + " modifies only attributes of its target " + target);
    if (cmd->postcondition.empty()) {
      call_notes_.push_back(cls.name + "." + cmd->name + " has no postcondition; its effect is unconstrained");
    }

    // Actual arguments, read in the caller's current state.
    Substitution actuals;
    std::map<std::string, std::string> actual_names;
    for (std::size_t i = 0; i < cmd->args.size(); ++i) {
      const Argument& formal = cmd->args[i];
      const Expr& actual = *e.args[i];
      const Symbol sym = Symbol::aux(formal.name, sort_of(formal.type));
      if (formal.type == kBoolean) {
        actuals.emplace(sym, at(lower_formula(actual, scope_), snap));
      } else {
        actuals.emplace(sym, rename_symbols(lower_term(actual, scope_),
                                            [&](const Symbol& x) { return rebase(x, snap); }));
      }
      if (actual.kind == Expr::Kind::Name) actual_names[formal.name] = actual.name;
    }

    const LowerScope callee{&project_, &cls, &cmd->args};
    auto instantiate = [&](const std::vector<Clause>& clauses, int current) {
      Formula f = lower_clauses(clauses, callee);
      f = rename_symbols(f, [&](const Symbol& x) {
        if (x.kind != Symbol::Kind::State && x.kind != Symbol::Kind::Query) return x;
        Symbol out = x;
        if (out.object == "Current") out.object = target;
        out.epoch = Epoch::snapshot(x.epoch.kind == Epoch::Kind::Old ? before : current);
        for (std::size_t i = 0; i < out.actuals.size(); ++i) {
          auto it = actual_names.find(out.actuals[i]);
          if (it != actual_names.end()) {
            out.actuals[i] = it->second;
          } else if (!out.actual_epochs[i]) {
            unsupported("query actual '" + out.actuals[i] + "' of " + cls.name + "." + cmd->name +
                        " is bound to a compound expression");
          }
          if (out.actual_epochs[i]) unsupported("object-valued query actuals in command contracts");
        }
        return out;
      });
      return substitute(f, actuals);
    };
    Formula pre = instantiate(cmd->precondition, before);
    Formula post = instantiate(cmd->postcondition, after);
    snap[target] = after;
    return Formula::conj(pre, Formula::implies(post, execute(rest, snap)));
  }

  Formula finish(const std::map<std::string, int>& snap) {
    std::vector<Formula> parts{at(lower_clauses(driver_.postcondition, scope_), snap)};
    for (const auto& [o, cls] : objects_) {
      if (driver_.modifies(o) || snap.at(o) == 0) continue;
      for (const auto& a : cls->attributes) {
        const Sort sort = sort_of(a.type);
        parts.push_back(equal(Symbol::state(o, a.name, sort, Epoch::snapshot(snap.at(o))),
                              Symbol::state(o, a.name, sort, Epoch::snapshot(0))));
      }
    }
    return Formula::conj(std::move(parts));
  }

  const SpecificationDriver& driver_;
  const Project& project_;
  LowerScope scope_;
  std::map<std::string, const ContractedClass*> objects_;
  int next_ = 1;
  std::map<int, std::string> call_labels_;
  std::vector<std::string> call_notes_;
};

}  // namespace

Obligation driver_obligation(const SpecificationDriver& driver, const Project& project) {
  return DriverExecution(driver, project).run();
}

// ------------------------------------------------------------ query axioms

Formula query_axioms(const Formula& f, const Project& project,
                     const std::map<std::string, std::string>& object_classes) {
  std::map<std::string, std::string> classes = object_classes;
  std::set<Symbol> done;
  std::vector<Symbol> work;
  auto enqueue = [&](const Formula& g) {
    for (const Symbol& s : symbols(g)) {
      if (s.kind == Symbol::Kind::Query && done.insert(s).second) work.push_back(s);
    }
  };
  enqueue(f);
  std::vector<Formula> axioms;
  while (!work.empty()) {
    const Symbol app = work.back();
    work.pop_back();
    auto cls_name = classes.find(app.object);
    if (cls_name == classes.end()) unsupported("unknown object '" + app.object + "' in query application");
    const ContractedClass* cls = project.find_class(cls_name->second);
    if (cls == nullptr) unsupported("unknown class " + cls_name->second);
    const Query* q = cls->find_query(app.name);
    if (q == nullptr) unsupported(cls->name + " has no query " + app.name);
    if (q->postcondition.empty()) continue;

    // Formal name -> (actual name, epoch of the actual's state).
    std::map<std::string, std::pair<std::string, std::optional<Epoch>>> bind;
    for (std::size_t i = 0; i < q->args.size() && i < app.actuals.size(); ++i) {
      bind[q->args[i].name] = {app.actuals[i], app.actual_epochs[i]};
      if (!is_primitive(q->args[i].type)) classes.emplace(app.actuals[i], q->args[i].type);
    }
    auto place = [&](const std::string& object) -> std::pair<std::string, Epoch> {
      if (object == "Current") return {app.object, app.epoch};
      auto it = bind.find(object);
      if (it == bind.end() || !it->second.second) unsupported("unbound object '" + object + "' in " + q->name);
      return {it->second.first, *it->second.second};
    };
    Formula post = lower_clauses(q->postcondition, LowerScope{&project, cls, &q->args});
    post = rename_symbols(post, [&](const Symbol& s) {
      Symbol out = s;
      switch (s.kind) {
        case Symbol::Kind::Aux: {
          auto it = bind.find(s.name);
          if (it != bind.end()) out.name = it->second.first;
          return out;
        }
        case Symbol::Kind::State:
        case Symbol::Kind::Query: {
          auto [object, epoch] = place(s.object);
          out.object = object;
          out.epoch = epoch;
          for (std::size_t i = 0; i < out.actuals.size(); ++i) {
            auto it = bind.find(out.actuals[i]);
            if (it == bind.end()) continue;
            out.actuals[i] = it->second.first;
            if (out.actual_epochs[i]) out.actual_epochs[i] = it->second.second;
          }
          return out;
        }
        default: return out;
      }
    });
    const Symbol result = Symbol::aux("Result", app.sort);
    Replacement self = app.sort == Sort::Bool ? Replacement(Formula::atom(app)) : Replacement(Term::variable(app));
    post = substitute(post, result, self);
    enqueue(post);
    axioms.push_back(post);
  }
  return Formula::conj(std::move(axioms));
}

// ------------------------------------------------------------ wp

Formula wp(const std::vector<Statement>& body, const Formula& post, const LowerScope& scope, CheckMode checks) {
  Formula q = post;
  for (auto it = body.rbegin(); it != body.rend(); ++it) {
    const Statement& s = *it;
    switch (s.kind) {
      case Statement::Kind::Assign: {
        const Sort sort = sort_of(s.value->type);
        const Symbol target = s.variable == "Result" ? Symbol::aux("Result", sort)
                                                     : Symbol::state("Current", s.variable, sort, Epoch::current());
        Replacement value = sort == Sort::Bool ? Replacement(lower_formula(*s.value, scope))
                                               : Replacement(lower_term(*s.value, scope));
        q = substitute(q, target, value);
        break;
      }
      case Statement::Kind::If: {
        std::vector<Formula> cases;
        std::vector<Formula> earlier;
        for (const auto& b : s.branches) {
          Formula c = lower_formula(*b.condition, scope);
          std::vector<Formula> guard = earlier;
          guard.push_back(c);
          cases.push_back(Formula::implies(Formula::conj(guard), wp(b.body, q, scope, checks)));
          earlier.push_back(Formula::negate(c));
        }
        cases.push_back(Formula::implies(Formula::conj(earlier), wp(s.otherwise, q, scope, checks)));
        q = Formula::conj(cases);
        break;
      }
      case Statement::Kind::Check: {
        Formula phi = lower_clauses(s.assertions, scope);
        q = checks == CheckMode::Assert ? Formula::conj(phi, q) : Formula::implies(phi, q);
        break;
      }
      case Statement::Kind::Call: unsupported("feature calls inside implementations are not supported");
    }
  }
  return q;
}

// ------------------------------------------------------------ discharge

VerificationOutcome discharge(const Obligation& ob, const SolverOptions& options) {
  VerificationOutcome out;
  out.owner = ob.owner;
  out.name = ob.name;
  out.assumptions = ob.assumptions_report;
  const Verdict v = check_valid(ob.formula(), options);
  switch (v.kind) {
    case Verdict::Kind::Valid: out.status = Status::Proved; break;
    case Verdict::Kind::Invalid:
      out.status = Status::Failed;
      out.counterexample = v.model;
      out.detail = explain(v, ob.labels);
      break;
    default:
      out.status = Status::Unsupported;
      out.detail = v.reason;
  }
  return out;
}

namespace {

template <typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn fn) {
  if (jobs <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

double since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

VerificationOutcome verify_driver(const SpecificationDriver& d, const Project& project, const SolverOptions& solver) {
  const auto start = std::chrono::steady_clock::now();
  VerificationOutcome out;
  try {
    const Obligation ob = driver_obligation(d, project);
    out = discharge(ob, solver);
    if (check_sat(ob.hypothesis, solver).kind == Verdict::Kind::Unsat) {
      out.notes.push_back("precondition is unsatisfiable; the requirement holds vacuously");
    }
  } catch (const VerificationError& e) {
    out.owner = d.owner + "." + d.name;
    out.name = d.name;
    out.status = Status::Unsupported;
    out.detail = e.what();
  } catch (const DiagnosticError& e) {
    out.owner = d.owner + "." + d.name;
    out.name = d.name;
    out.status = Status::Unsupported;
    out.detail = e.what();
  } catch (const LogicError& e) {
    out.owner = d.owner + "." + d.name;
    out.name = d.name;
    out.status = Status::Unsupported;
    out.detail = e.what();
  }
  out.comment = extract_comment(d);
  out.elapsed_ms = since(start);
  return out;
}

// A unit of verify_class work: either a ready outcome or an obligation.
struct ClassTask {
  std::optional<Obligation> obligation;
  VerificationOutcome outcome;
};

bool mentions_current_query(const Formula& f) {
  for (const Symbol& s : symbols(f)) {
    if (s.kind == Symbol::Kind::Query && s.epoch.kind != Epoch::Kind::Old) return true;
  }
  return false;
}

template <typename Routine>
void routine_tasks(const ContractedClass& cls, const Project& project, const Routine& r, bool is_query,
                   std::vector<ClassTask>& tasks) {
  const std::string owner = cls.name + "." + r.name;
  auto ready = [&](std::string name, std::string comment, Status status, std::string detail) {
    ClassTask t;
    t.outcome.owner = owner;
    t.outcome.name = std::move(name);
    t.outcome.comment = std::move(comment);
    t.outcome.status = status;
    t.outcome.detail = std::move(detail);
    tasks.push_back(std::move(t));
  };
  if (!r.body) {
    ready(r.name, r.comment, Status::Skipped, "hidden implementation, assumed correct");
    return;
  }
  const LowerScope scope{&project, &cls, &r.args};
  const std::map<std::string, std::string> classes{{"Current", cls.name}};
  std::vector<Formula> hyp;
  if constexpr (requires { r.precondition; }) hyp.push_back(lower_clauses(r.precondition, scope));
  for (const auto& a : cls.attributes) {
    const Sort sort = sort_of(a.type);
    hyp.push_back(equal(Symbol::state("Current", a.name, sort, Epoch::old()),
                        Symbol::state("Current", a.name, sort, Epoch::current())));
  }
  std::optional<Symbol> result;
  Replacement initial = Term::literal(0);
  if constexpr (requires { r.result_type; }) {
    result = Symbol::aux("Result", sort_of(r.result_type));
    initial = default_value(result->sort);
  }
  auto obligation = [&](std::string name, const Formula& goal_post, CheckMode mode) {
    Obligation ob;
    ob.owner = owner;
    ob.name = std::move(name);
    Formula goal = wp(*r.body, goal_post, scope, mode);
    if (result) goal = substitute(goal, *result, initial);
    Formula base = Formula::conj(hyp);
    ob.hypothesis = Formula::conj(base, query_axioms(Formula::conj(base, goal), project, classes));
    ob.goal = goal;
    ob.snapshots = {Epoch::old(), Epoch::current()};
    ob.labels.names[Epoch::old()] = "old values";
    ob.labels.names[Epoch::current()] = "entry state";
    ob.assumptions_report.push_back("old values equal the entry state of " + owner);
    return ob;
  };
  bool has_checks = false;
  std::function<void(const std::vector<Statement>&)> scan = [&](const std::vector<Statement>& ss) {
    for (const auto& s : ss) {
      if (s.kind == Statement::Kind::Check) has_checks = true;
      for (const auto& b : s.branches) scan(b.body);
      scan(s.otherwise);
    }
  };
  scan(*r.body);
  try {
    if (r.postcondition.empty()) {
      ready(r.name, "no postcondition", Status::Proved, "vacuous: the postcondition is True");
    }
    for (std::size_t i = 0; i < r.postcondition.size(); ++i) {
      const Clause& c = r.postcondition[i];
      const std::string name =
          r.name + " (ensure " + (c.label.empty() ? std::to_string(i + 1) : c.label) + ")";
      Formula clause = lower_formula(*c.expr, scope);
      if (!is_query && mentions_current_query(clause)) {
        ready(name, print_expr(*c.expr), Status::Unsupported,
              "queries read in the post-state of an implemented command are not supported");
        continue;
      }
      ClassTask t;
      t.obligation = obligation(name, clause, CheckMode::Assume);
      t.outcome.comment = print_expr(*c.expr);
      tasks.push_back(std::move(t));
    }
    if (has_checks) {
      ClassTask t;
      t.obligation = obligation(r.name + " (checks)", Formula::truth(), CheckMode::Assert);
      t.outcome.comment = "check instructions in the body";
      tasks.push_back(std::move(t));
    }
  } catch (const VerificationError& e) {
    ready(r.name, r.comment, Status::Unsupported, e.what());
  } catch (const DiagnosticError& e) {
    ready(r.name, r.comment, Status::Unsupported, e.what());
  }
}

}  // namespace

std::vector<VerificationOutcome> verify_requirement_class(const RequirementClass& rc, const Project& project,
                                                          const VerifyOptions& options) {
  const std::vector<SpecificationDriver> drivers = flatten_requirements(project, rc);
  std::vector<VerificationOutcome> out(drivers.size());
  const SolverOptions solver{options.seed};
  parallel_for(drivers.size(), options.jobs, [&](std::size_t i) { out[i] = verify_driver(drivers[i], project, solver); });
  return out;
}

std::vector<VerificationOutcome> verify_class(const ContractedClass& cls, const Project& project,
                                              const VerifyOptions& options) {
  std::vector<ClassTask> tasks;
  for (const auto& c : cls.commands) routine_tasks(cls, project, c, false, tasks);
  for (const auto& q : cls.queries) routine_tasks(cls, project, q, true, tasks);
  const SolverOptions solver{options.seed};
  parallel_for(tasks.size(), options.jobs, [&](std::size_t i) {
    ClassTask& t = tasks[i];
    if (!t.obligation) return;
    const auto start = std::chrono::steady_clock::now();
    std::string comment = t.outcome.comment;
    t.outcome = discharge(*t.obligation, solver);
    t.outcome.comment = std::move(comment);
    t.outcome.elapsed_ms = since(start);
  });
  std::vector<VerificationOutcome> out;
  for (auto& t : tasks) out.push_back(std::move(t.outcome));
  return out;
}

}  // namespace sreq
