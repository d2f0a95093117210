#include "sreq/logic.hpp"

#include <cstdlib>
#include <sstream>

namespace sreq {

std::string Epoch::str() const {
  switch (kind) {
    case Kind::Old: return "old";
    case Kind::Current: return "current";
    case Kind::Snapshot: return "snapshot-" + std::to_string(index);
  }
  return "?";
}

Symbol Symbol::zero() {
  Symbol s;
  s.kind = Kind::Zero;
  s.name = "0";
  return s;
}

Symbol Symbol::state(std::string object, std::string name, Sort sort, Epoch epoch) {
  Symbol s;
  s.kind = Kind::State;
  s.sort = sort;
  s.object = std::move(object);
  s.name = std::move(name);
  s.epoch = epoch;
  return s;
}

Symbol Symbol::aux(std::string name, Sort sort) {
  Symbol s;
  s.kind = Kind::Aux;
  s.sort = sort;
  s.name = std::move(name);
  return s;
}

Symbol Symbol::query(std::string object, std::string name, Sort sort, Epoch epoch,
                     std::vector<std::string> actuals, std::vector<std::optional<Epoch>> actual_epochs) {
  Symbol s;
  s.kind = Kind::Query;
  s.sort = sort;
  s.object = std::move(object);
  s.name = std::move(name);
  s.epoch = epoch;
  s.actuals = std::move(actuals);
  s.actual_epochs = std::move(actual_epochs);
  if (s.actual_epochs.size() != s.actuals.size()) s.actual_epochs.resize(s.actuals.size());
  return s;
}

namespace {
std::string epoch_suffix(const Epoch& e) {
  return e.kind == Epoch::Kind::Snapshot ? "@" + std::to_string(e.index) : std::string();
}
}  // namespace

std::string Symbol::render() const {
  switch (kind) {
    case Kind::Zero: return "0";
    case Kind::Aux: return name;
    case Kind::State:
    case Kind::Query: {
      std::string out = epoch.kind == Epoch::Kind::Old ? "old " : "";
      if (object != "Current") out += object + ".";
      out += name;
      if (kind == Kind::Query && !actuals.empty()) {
        out += " (";
        for (std::size_t i = 0; i < actuals.size(); ++i) {
          if (i) out += ", ";
          out += actuals[i];
          if (actual_epochs[i] && *actual_epochs[i] != epoch) {
            const Epoch& e = *actual_epochs[i];
            out += e.kind == Epoch::Kind::Snapshot ? epoch_suffix(e) : "@" + e.str();
          }
        }
        out += ")";
      }
      return out + epoch_suffix(epoch);
    }
  }
  return name;
}

// ---------------------------------------------------------------- terms

struct Term::Node {
  Kind kind;
  std::int64_t value = 0;
  Symbol symbol;
  std::optional<Term> a;
  std::optional<Term> b;
};

Term Term::literal(std::int64_t value) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Literal;
  n->value = value;
  return Term(std::move(n));
}

Term Term::variable(Symbol symbol) {
  if (symbol.sort != Sort::Int) {
    throw LogicError(LogicError::Kind::TypeMismatch, "boolean symbol '" + symbol.render() + "' used as a term");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Variable;
  n->symbol = std::move(symbol);
  return Term(std::move(n));
}

Term Term::sum(Term a, Term b) {
  if (a.kind() == Kind::Literal && b.kind() == Kind::Literal) return literal(a.value() + b.value());
  auto n = std::make_shared<Node>();
  n->kind = Kind::Sum;
  n->a = std::move(a);
  n->b = std::move(b);
  return Term(std::move(n));
}

Term Term::neg(Term a) {
  if (a.kind() == Kind::Literal) return literal(-a.value());
  if (a.kind() == Kind::Negation) return a.lhs();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Negation;
  n->a = std::move(a);
  return Term(std::move(n));
}

Term::Kind Term::kind() const { return node_->kind; }
std::int64_t Term::value() const { return node_->value; }
const Symbol& Term::symbol() const { return node_->symbol; }
Term Term::lhs() const { return *node_->a; }
Term Term::rhs() const { return *node_->b; }

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Literal: return value() == other.value();
    case Kind::Variable: return symbol() == other.symbol();
    case Kind::Sum: return lhs() == other.lhs() && rhs() == other.rhs();
    case Kind::Negation: return lhs() == other.lhs();
  }
  return false;
}

// ---------------------------------------------------------------- formulas

std::string_view spelling(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return "=";
    case CompareOp::Ne: return "/=";
    case CompareOp::Lt: return "<";
    case CompareOp::Le: return "<=";
    case CompareOp::Gt: return ">";
    case CompareOp::Ge: return ">=";
  }
  return "?";
}

CompareOp negate(CompareOp op) {
  switch (op) {
    case CompareOp::Eq: return CompareOp::Ne;
    case CompareOp::Ne: return CompareOp::Eq;
    case CompareOp::Lt: return CompareOp::Ge;
    case CompareOp::Le: return CompareOp::Gt;
    case CompareOp::Gt: return CompareOp::Le;
    case CompareOp::Ge: return CompareOp::Lt;
  }
  return op;
}

struct Formula::Node {
  Kind kind;
  bool value = false;
  Symbol symbol;
  CompareOp op = CompareOp::Eq;
  std::optional<Term> lhs;
  std::optional<Term> rhs;
  std::vector<Formula> operands;
};

Formula Formula::constant(bool value) {
  static const Formula t = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Constant;
    n->value = true;
    return Formula(std::move(n));
  }();
  static const Formula f = [] {
    auto n = std::make_shared<Node>();
    n->kind = Kind::Constant;
    n->value = false;
    return Formula(std::move(n));
  }();
  return value ? t : f;
}

Formula Formula::atom(Symbol symbol) {
  if (symbol.sort != Sort::Bool) {
    throw LogicError(LogicError::Kind::TypeMismatch, "integer symbol '" + symbol.render() + "' used as a formula");
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Atom;
  n->symbol = std::move(symbol);
  return Formula(std::move(n));
}

Formula Formula::compare(CompareOp op, Term lhs, Term rhs) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Compare;
  n->op = op;
  n->lhs = std::move(lhs);
  n->rhs = std::move(rhs);
  return Formula(std::move(n));
}

Formula Formula::negate(Formula f) {
  switch (f.kind()) {
    case Kind::Constant: return constant(!f.value());
    case Kind::Not: return f.operands().front();
    case Kind::Compare: return compare(sreq::negate(f.op()), f.lhs(), f.rhs());
    default: break;
  }
  auto n = std::make_shared<Node>();
  n->kind = Kind::Not;
  n->operands.push_back(std::move(f));
  return Formula(std::move(n));
}

Formula Formula::conj(std::vector<Formula> parts) {
  std::vector<Formula> flat;
  for (auto& p : parts) {
    if (p.kind() == Kind::Constant) {
      if (!p.value()) return falsity();
      continue;
    }
    if (p.kind() == Kind::And) {
      flat.insert(flat.end(), p.operands().begin(), p.operands().end());
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.empty()) return truth();
  if (flat.size() == 1) return flat.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::And;
  n->operands = std::move(flat);
  return Formula(std::move(n));
}

Formula Formula::disj(std::vector<Formula> parts) {
  std::vector<Formula> flat;
  for (auto& p : parts) {
    if (p.kind() == Kind::Constant) {
      if (p.value()) return truth();
      continue;
    }
    if (p.kind() == Kind::Or) {
      flat.insert(flat.end(), p.operands().begin(), p.operands().end());
    } else {
      flat.push_back(std::move(p));
    }
  }
  if (flat.empty()) return falsity();
  if (flat.size() == 1) return flat.front();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Or;
  n->operands = std::move(flat);
  return Formula(std::move(n));
}

Formula Formula::implies(Formula a, Formula b) {
  if (a.kind() == Kind::Constant) return a.value() ? b : truth();
  if (b.kind() == Kind::Constant && b.value()) return truth();
  auto n = std::make_shared<Node>();
  n->kind = Kind::Implies;
  n->operands.push_back(std::move(a));
  n->operands.push_back(std::move(b));
  return Formula(std::move(n));
}

Formula Formula::iff(Formula a, Formula b) {
  return disj(conj(a, b), conj(negate(a), negate(b)));
}

Formula::Kind Formula::kind() const { return node_->kind; }
bool Formula::value() const { return node_->value; }
const Symbol& Formula::symbol() const { return node_->symbol; }
CompareOp Formula::op() const { return node_->op; }
Term Formula::lhs() const { return *node_->lhs; }
Term Formula::rhs() const { return *node_->rhs; }
const std::vector<Formula>& Formula::operands() const { return node_->operands; }

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (kind() != other.kind()) return false;
  switch (kind()) {
    case Kind::Constant: return value() == other.value();
    case Kind::Atom: return symbol() == other.symbol();
    case Kind::Compare: return op() == other.op() && lhs() == other.lhs() && rhs() == other.rhs();
    default: return operands() == other.operands();
  }
}

// ---------------------------------------------------------------- traversals

namespace {

Formula rebuild(const Formula& f, std::vector<Formula> ops) {
  switch (f.kind()) {
    case Formula::Kind::Not: return Formula::negate(std::move(ops.front()));
    case Formula::Kind::And: return Formula::conj(std::move(ops));
    case Formula::Kind::Or: return Formula::disj(std::move(ops));
    case Formula::Kind::Implies: return Formula::implies(std::move(ops[0]), std::move(ops[1]));
    default: return f;
  }
}

// Structural map: `on_term` rewrites integer terms, `on_atom` boolean atoms.
Formula map_formula(const Formula& f, const std::function<Term(const Term&)>& on_term,
                    const std::function<Formula(const Formula&)>& on_atom) {
  switch (f.kind()) {
    case Formula::Kind::Constant: return f;
    case Formula::Kind::Atom: return on_atom(f);
    case Formula::Kind::Compare: return Formula::compare(f.op(), on_term(f.lhs()), on_term(f.rhs()));
    default: {
      std::vector<Formula> ops;
      ops.reserve(f.operands().size());
      for (const auto& o : f.operands()) ops.push_back(map_formula(o, on_term, on_atom));
      return rebuild(f, std::move(ops));
    }
  }
}

Term map_term(const Term& t, const std::function<Term(const Symbol&)>& on_var) {
  switch (t.kind()) {
    case Term::Kind::Literal: return t;
    case Term::Kind::Variable: return on_var(t.symbol());
    case Term::Kind::Sum: return Term::sum(map_term(t.lhs(), on_var), map_term(t.rhs(), on_var));
    case Term::Kind::Negation: return Term::neg(map_term(t.lhs(), on_var));
  }
  return t;
}

Symbol rename_epoch_of(const Symbol& s, const std::map<Epoch, Epoch>& mapping) {
  if (s.kind != Symbol::Kind::State && s.kind != Symbol::Kind::Query) return s;
  auto lookup = [&](const Epoch& e) {
    auto it = mapping.find(e);
    if (it == mapping.end()) {
      throw LogicError(LogicError::Kind::UnmappedEpoch,
                       "epoch " + e.str() + " of '" + s.render() + "' has no mapping");
    }
    return it->second;
  };
  Symbol out = s;
  out.epoch = lookup(s.epoch);
  for (auto& e : out.actual_epochs) {
    if (e) e = lookup(*e);
  }
  return out;
}

}  // namespace

Term rename_symbols(const Term& t, const SymbolMap& fn) {
  return map_term(t, [&](const Symbol& s) { return Term::variable(fn(s)); });
}

Formula rename_symbols(const Formula& f, const SymbolMap& fn) {
  return map_formula(
      f, [&](const Term& t) { return rename_symbols(t, fn); },
      [&](const Formula& a) { return Formula::atom(fn(a.symbol())); });
}

Formula rename_epochs(const Formula& f, const std::map<Epoch, Epoch>& mapping) {
  return rename_symbols(f, [&](const Symbol& s) { return rename_epoch_of(s, mapping); });
}

Term rename_epochs(const Term& t, const std::map<Epoch, Epoch>& mapping) {
  return rename_symbols(t, [&](const Symbol& s) { return rename_epoch_of(s, mapping); });
}

Term substitute(const Term& t, const Substitution& s) {
  return map_term(t, [&](const Symbol& sym) {
    auto it = s.find(sym);
    if (it == s.end()) return Term::variable(sym);
    if (const Term* r = std::get_if<Term>(&it->second)) return *r;
    throw LogicError(LogicError::Kind::TypeMismatch,
                     "integer symbol '" + sym.render() + "' cannot be replaced by a formula");
  });
}

Formula substitute(const Formula& f, const Substitution& s) {
  for (const auto& [sym, r] : s) {
    bool is_term = std::holds_alternative<Term>(r);
    if (is_term != (sym.sort == Sort::Int)) {
      throw LogicError(LogicError::Kind::TypeMismatch, "replacement for '" + sym.render() + "' has the wrong sort");
    }
  }
  return map_formula(
      f, [&](const Term& t) { return substitute(t, s); },
      [&](const Formula& a) {
        auto it = s.find(a.symbol());
        if (it == s.end()) return a;
        return std::get<Formula>(it->second);
      });
}

Formula substitute(const Formula& f, const Symbol& var, const Replacement& replacement) {
  return substitute(f, Substitution{{var, replacement}});
}

// ---------------------------------------------------------------- evaluation

namespace {
std::int64_t lookup(const Symbol& s, const Model& m) {
  if (s.kind == Symbol::Kind::Zero) return 0;
  auto it = m.find(s);
  if (it == m.end()) throw LogicError(LogicError::Kind::UnboundSymbol, "no value for '" + s.render() + "'");
  return it->second;
}
}  // namespace

std::int64_t evaluate(const Term& t, const Model& m) {
  switch (t.kind()) {
    case Term::Kind::Literal: return t.value();
    case Term::Kind::Variable: return lookup(t.symbol(), m);
    case Term::Kind::Sum: return evaluate(t.lhs(), m) + evaluate(t.rhs(), m);
    case Term::Kind::Negation: return -evaluate(t.lhs(), m);
  }
  return 0;
}

bool evaluate(const Formula& f, const Model& m) {
  switch (f.kind()) {
    case Formula::Kind::Constant: return f.value();
    case Formula::Kind::Atom: return lookup(f.symbol(), m) != 0;
    case Formula::Kind::Compare: {
      std::int64_t a = evaluate(f.lhs(), m);
      std::int64_t b = evaluate(f.rhs(), m);
      switch (f.op()) {
        case CompareOp::Eq: return a == b;
        case CompareOp::Ne: return a != b;
        case CompareOp::Lt: return a < b;
        case CompareOp::Le: return a <= b;
        case CompareOp::Gt: return a > b;
        case CompareOp::Ge: return a >= b;
      }
      return false;
    }
    case Formula::Kind::Not: return !evaluate(f.operands().front(), m);
    case Formula::Kind::And:
      for (const auto& o : f.operands()) {
        if (!evaluate(o, m)) return false;
      }
      return true;
    case Formula::Kind::Or:
      for (const auto& o : f.operands()) {
        if (evaluate(o, m)) return true;
      }
      return false;
    case Formula::Kind::Implies: return !evaluate(f.operands()[0], m) || evaluate(f.operands()[1], m);
  }
  return false;
}

// ---------------------------------------------------------------- normalization

namespace {

void accumulate(const Term& t, std::int64_t sign, Linear& out) {
  switch (t.kind()) {
    case Term::Kind::Literal: out.constant += sign * t.value(); break;
    case Term::Kind::Variable:
      if (t.symbol().kind != Symbol::Kind::Zero) out.coefficients[t.symbol()] += sign;
      break;
    case Term::Kind::Sum:
      accumulate(t.lhs(), sign, out);
      accumulate(t.rhs(), sign, out);
      break;
    case Term::Kind::Negation: accumulate(t.lhs(), -sign, out); break;
  }
}

void drop_zero_coefficients(Linear& l) {
  for (auto it = l.coefficients.begin(); it != l.coefficients.end();) {
    it = it->second == 0 ? l.coefficients.erase(it) : std::next(it);
  }
}

Term scaled(const Symbol& s, std::int64_t k) {
  Term v = Term::variable(s);
  Term one = k > 0 ? v : Term::neg(v);
  Term acc = one;
  for (std::int64_t i = 1; i < std::llabs(k); ++i) acc = Term::sum(acc, one);
  return acc;
}

// sum(coeffs) <= bound
Formula bound_atom(const std::map<Symbol, std::int64_t>& coeffs, std::int64_t bound) {
  if (coeffs.empty()) return Formula::constant(0 <= bound);
  const Term zero = Term::variable(Symbol::zero());
  if (coeffs.size() == 1) {
    const auto& [s, k] = *coeffs.begin();
    if (k == 1) return Formula::compare(CompareOp::Le, Term::difference(Term::variable(s), zero), Term::literal(bound));
    if (k == -1) return Formula::compare(CompareOp::Le, Term::difference(zero, Term::variable(s)), Term::literal(bound));
  }
  if (coeffs.size() == 2) {
    auto a = coeffs.begin();
    auto b = std::next(a);
    if (a->second == 1 && b->second == -1) {
      return Formula::compare(CompareOp::Le, Term::difference(Term::variable(a->first), Term::variable(b->first)),
                              Term::literal(bound));
    }
    if (a->second == -1 && b->second == 1) {
      return Formula::compare(CompareOp::Le, Term::difference(Term::variable(b->first), Term::variable(a->first)),
                              Term::literal(bound));
    }
  }
  std::optional<Term> acc;
  for (const auto& [s, k] : coeffs) {
    Term part = scaled(s, k);
    acc = acc ? Term::sum(*acc, part) : part;
  }
  return Formula::compare(CompareOp::Le, *acc, Term::literal(bound));
}

std::map<Symbol, std::int64_t> negated(const std::map<Symbol, std::int64_t>& coeffs) {
  std::map<Symbol, std::int64_t> out;
  for (const auto& [s, k] : coeffs) out[s] = -k;
  return out;
}

Formula normalize_compare(CompareOp op, const Term& lhs, const Term& rhs) {
  // lhs - rhs = sum + k, compared against 0
  Linear l = linearize(Term::difference(lhs, rhs));
  const auto& sum = l.coefficients;
  const std::int64_t k = l.constant;
  switch (op) {
    case CompareOp::Le: return bound_atom(sum, -k);
    case CompareOp::Lt: return bound_atom(sum, -k - 1);
    case CompareOp::Ge: return bound_atom(negated(sum), k);
    case CompareOp::Gt: return bound_atom(negated(sum), k - 1);
    case CompareOp::Eq: return Formula::conj(bound_atom(sum, -k), bound_atom(negated(sum), k));
    case CompareOp::Ne: return Formula::disj(bound_atom(sum, -k - 1), bound_atom(negated(sum), k - 1));
  }
  return Formula::truth();
}

Formula nnf(const Formula& f, bool positive) {
  switch (f.kind()) {
    case Formula::Kind::Constant: return Formula::constant(f.value() == positive);
    case Formula::Kind::Atom: return positive ? f : Formula::negate(f);
    case Formula::Kind::Compare: return normalize_compare(positive ? f.op() : negate(f.op()), f.lhs(), f.rhs());
    case Formula::Kind::Not: return nnf(f.operands().front(), !positive);
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::vector<Formula> parts;
      for (const auto& o : f.operands()) parts.push_back(nnf(o, positive));
      bool conjunctive = (f.kind() == Formula::Kind::And) == positive;
      return conjunctive ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
    }
    case Formula::Kind::Implies: {
      const auto& a = f.operands()[0];
      const auto& b = f.operands()[1];
      if (positive) return Formula::disj(nnf(a, false), nnf(b, true));
      return Formula::conj(nnf(a, true), nnf(b, false));
    }
  }
  return f;
}

}  // namespace

Linear linearize(const Term& t) {
  Linear out;
  accumulate(t, 1, out);
  drop_zero_coefficients(out);
  return out;
}

Formula normalize(const Formula& f) { return nnf(f, true); }

std::optional<DifferenceAtom> as_difference(const Formula& f) {
  if (f.kind() != Formula::Kind::Compare || f.op() != CompareOp::Le) return std::nullopt;
  const Term lhs = f.lhs();
  const Term rhs = f.rhs();
  if (rhs.kind() != Term::Kind::Literal || lhs.kind() != Term::Kind::Sum) return std::nullopt;
  const Term a = lhs.lhs();
  const Term b = lhs.rhs();
  if (a.kind() != Term::Kind::Variable || b.kind() != Term::Kind::Negation) return std::nullopt;
  const Term c = b.lhs();
  if (c.kind() != Term::Kind::Variable) return std::nullopt;
  if (a.symbol() == c.symbol()) return std::nullopt;
  return DifferenceAtom{a.symbol(), c.symbol(), rhs.value()};
}

// ---------------------------------------------------------------- queries

namespace {
void collect(const Term& t, std::set<Symbol>& out) {
  switch (t.kind()) {
    case Term::Kind::Literal: break;
    case Term::Kind::Variable: out.insert(t.symbol()); break;
    case Term::Kind::Sum:
      collect(t.lhs(), out);
      collect(t.rhs(), out);
      break;
    case Term::Kind::Negation: collect(t.lhs(), out); break;
  }
}

void collect(const Formula& f, std::set<Symbol>& out) {
  switch (f.kind()) {
    case Formula::Kind::Constant: break;
    case Formula::Kind::Atom: out.insert(f.symbol()); break;
    case Formula::Kind::Compare:
      collect(f.lhs(), out);
      collect(f.rhs(), out);
      break;
    default:
      for (const auto& o : f.operands()) collect(o, out);
  }
}
}  // namespace

std::set<Symbol> symbols(const Formula& f) {
  std::set<Symbol> out;
  collect(f, out);
  return out;
}

std::set<Symbol> symbols(const Term& t) {
  std::set<Symbol> out;
  collect(t, out);
  return out;
}

std::size_t atom_count(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Constant: return 0;
    case Formula::Kind::Atom:
    case Formula::Kind::Compare: return 1;
    default: {
      std::size_t n = 0;
      for (const auto& o : f.operands()) n += atom_count(o);
      return n;
    }
  }
}

std::vector<Formula> conjuncts(const Formula& f) {
  if (f.kind() == Formula::Kind::And) return f.operands();
  if (f.kind() == Formula::Kind::Constant && f.value()) return {};
  return {f};
}

// ---------------------------------------------------------------- rendering

namespace {

enum Level { kImplies = 1, kOr = 2, kAnd = 3, kCompare = 4, kAdditive = 5, kUnary = 6, kPrimary = 7 };

int level_of(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Literal: return t.value() < 0 ? kUnary : kPrimary;
    case Term::Kind::Variable: return kPrimary;
    case Term::Kind::Sum: return kAdditive;
    case Term::Kind::Negation: return kUnary;
  }
  return kPrimary;
}

std::string wrap(const std::string& s, bool parens) { return parens ? "(" + s + ")" : s; }

std::string render_term(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Literal: return std::to_string(t.value());
    case Term::Kind::Variable: return t.symbol().render();
    case Term::Kind::Negation: return "-" + wrap(render_term(t.lhs()), level_of(t.lhs()) < kPrimary);
    case Term::Kind::Sum: {
      const Term a = t.lhs();
      const Term b = t.rhs();
      std::string left = render_term(a);  // left-associative: a Sum on the left needs no parentheses
      if (b.kind() == Term::Kind::Negation) {
        return left + " - " + wrap(render_term(b.lhs()), level_of(b.lhs()) <= kAdditive);
      }
      if (b.kind() == Term::Kind::Literal && b.value() < 0) return left + " - " + std::to_string(-b.value());
      return left + " + " + wrap(render_term(b), level_of(b) <= kAdditive);
    }
  }
  return "?";
}

int level_of(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Constant:
    case Formula::Kind::Atom: return kPrimary;
    case Formula::Kind::Compare: return kCompare;
    case Formula::Kind::Not: return kUnary;
    case Formula::Kind::And: return kAnd;
    case Formula::Kind::Or: return kOr;
    case Formula::Kind::Implies: return kImplies;
  }
  return kPrimary;
}

std::string render_formula(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Constant: return f.value() ? "True" : "False";
    case Formula::Kind::Atom: return f.symbol().render();
    case Formula::Kind::Compare:
      return render_term(f.lhs()) + " " + std::string(spelling(f.op())) + " " + render_term(f.rhs());
    case Formula::Kind::Not: {
      const Formula& o = f.operands().front();
      return "not " + wrap(render_formula(o), level_of(o) < kPrimary);
    }
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      const int mine = level_of(f);
      const char* sep = f.kind() == Formula::Kind::And ? " and " : " or ";
      std::string out;
      for (std::size_t i = 0; i < f.operands().size(); ++i) {
        if (i) out += sep;
        const Formula& o = f.operands()[i];
        out += wrap(render_formula(o), level_of(o) < mine);
      }
      return out;
    }
    case Formula::Kind::Implies: {
      const Formula& a = f.operands()[0];
      const Formula& b = f.operands()[1];
      return wrap(render_formula(a), level_of(a) <= kImplies) + " implies " + render_formula(b);
    }
  }
  return "?";
}

}  // namespace

std::string render(const Term& t) { return render_term(t); }
std::string render(const Formula& f) { return render_formula(f); }

}  // namespace sreq
