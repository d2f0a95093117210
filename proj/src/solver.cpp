#include "sreq/solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

namespace sreq {

std::string to_string(Verdict::Kind kind) {
  switch (kind) {
    case Verdict::Kind::Valid: return "Valid";
    case Verdict::Kind::Invalid: return "Invalid";
    case Verdict::Kind::Sat: return "Sat";
    case Verdict::Kind::Unsat: return "Unsat";
    case Verdict::Kind::Unsupported: return "Unsupported";
  }
  return "?";
}

namespace {

struct Unsupported {
  std::string reason;
  Formula atom;
};

// Literals are +/-(var + 1).
int var_of(int lit) { return std::abs(lit) - 1; }

class Search {
 public:
  Search(const Formula& normalized, std::uint64_t seed) : seed_(seed) {
    nodes_.emplace(Symbol::zero(), 0);
    node_symbols_.push_back(Symbol::zero());
    root_ = encode(normalized);
    clauses_.push_back({root_});
  }

  // Returns true when satisfiable; the assignment is then complete.
  bool run() {
    value_.assign(vars_, 0);
    order_.resize(vars_);
    std::iota(order_.begin(), order_.end(), 0);
    if (seed_ != 0) {
      std::mt19937_64 rng(seed_);
      std::shuffle(order_.begin(), order_.end(), rng);
    }
    for (;;) {
      bool ok = propagate();
      std::vector<int> cycle_lits;
      if (ok && !theory_consistent(&cycle_lits)) {
        ok = false;
        std::vector<int> learned;
        for (int lit : cycle_lits) learned.push_back(-lit);
        if (decisions_.empty()) {
          cycle_ = cycle_lits;
          return false;
        }
        clauses_.push_back(std::move(learned));
      }
      if (!ok) {
        if (!backtrack()) return false;
        continue;
      }
      int next = -1;
      for (int v : order_) {
        if (value_[v] == 0) {
          next = v;
          break;
        }
      }
      if (next < 0) return true;
      decisions_.push_back({trail_.size(), -(next + 1), false});
      assign(-(next + 1));
    }
  }

  Model model() const {
    std::vector<std::int64_t> dist;
    std::vector<int> pred;
    bellman_ford(dist, pred);
    Model m;
    for (std::size_t i = 1; i < node_symbols_.size(); ++i) m[node_symbols_[i]] = dist[i] - dist[0];
    for (const auto& [sym, v] : bool_vars_) m[sym] = value_[v] > 0 ? 1 : 0;
    return m;
  }

  // Negative cycle found without any decision, as formulas and total weight.
  std::pair<std::vector<Formula>, std::int64_t> cycle() const {
    std::vector<Formula> out;
    std::int64_t weight = 0;
    for (int lit : cycle_) {
      const Atom& a = *theory_[var_of(lit)];
      if (lit > 0) {
        out.push_back(a.formula);
        weight += a.bound;
      } else {
        out.push_back(Formula::compare(CompareOp::Le,
                                       Term::difference(Term::variable(node_symbols_[a.y]),
                                                        Term::variable(node_symbols_[a.x])),
                                       Term::literal(-a.bound - 1)));
        weight += -a.bound - 1;
      }
    }
    return {out, weight};
  }

 private:
  struct Atom {
    int x = 0;
    int y = 0;
    std::int64_t bound = 0;
    Formula formula;
  };
  struct Decision {
    std::size_t trail_size;
    int lit;
    bool flipped;
  };
  struct Edge {
    int from;
    int to;
    std::int64_t weight;
    int lit;
  };

  int new_var() {
    theory_.emplace_back();
    return vars_++;
  }

  int node(const Symbol& s) {
    auto [it, inserted] = nodes_.emplace(s, static_cast<int>(node_symbols_.size()));
    if (inserted) node_symbols_.push_back(s);
    return it->second;
  }

  int encode(const Formula& f) {
    switch (f.kind()) {
      case Formula::Kind::Constant: {
        int v = new_var();
        clauses_.push_back({f.value() ? v + 1 : -(v + 1)});
        return v + 1;
      }
      case Formula::Kind::Atom: {
        auto [it, inserted] = bool_vars_.emplace(f.symbol(), 0);
        if (inserted) it->second = new_var();
        return it->second + 1;
      }
      case Formula::Kind::Not: {
        const Formula& o = f.operands().front();
        if (o.kind() != Formula::Kind::Atom) throw std::logic_error("solver input is not in negation normal form");
        return -encode(o);
      }
      case Formula::Kind::Compare: {
        auto d = as_difference(f);
        if (!d) throw Unsupported{"atom outside integer difference logic: " + render(f), f};
        const int x = node(d->x);
        const int y = node(d->y);
        auto key = std::make_tuple(x, y, d->bound);
        auto it = theory_index_.find(key);
        if (it != theory_index_.end()) return it->second + 1;
        int v = new_var();
        theory_[v] = Atom{x, y, d->bound, f};
        theory_index_.emplace(key, v);
        return v + 1;
      }
      case Formula::Kind::And:
      case Formula::Kind::Or: {
        std::vector<int> kids;
        for (const auto& o : f.operands()) kids.push_back(encode(o));
        int v = new_var() + 1;
        if (f.kind() == Formula::Kind::And) {
          for (int k : kids) clauses_.push_back({-v, k});
        } else {
          std::vector<int> c{-v};
          c.insert(c.end(), kids.begin(), kids.end());
          clauses_.push_back(std::move(c));
        }
        return v;
      }
      case Formula::Kind::Implies: throw std::logic_error("solver input is not in negation normal form");
    }
    return 0;
  }

  int lit_value(int lit) const {
    int v = value_[var_of(lit)];
    return lit > 0 ? v : -v;
  }

  void assign(int lit) {
    value_[var_of(lit)] = lit > 0 ? 1 : -1;
    trail_.push_back(lit);
  }

  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& clause : clauses_) {
        int unassigned = 0;
        int last = 0;
        bool satisfied = false;
        for (int lit : clause) {
          int v = lit_value(lit);
          if (v > 0) {
            satisfied = true;
            break;
          }
          if (v == 0) {
            ++unassigned;
            last = lit;
          }
        }
        if (satisfied) continue;
        if (unassigned == 0) return false;
        if (unassigned == 1) {
          assign(last);
          changed = true;
        }
      }
    }
    return true;
  }

  bool backtrack() {
    while (!decisions_.empty() && decisions_.back().flipped) {
      undo_to(decisions_.back().trail_size);
      decisions_.pop_back();
    }
    if (decisions_.empty()) return false;
    Decision& d = decisions_.back();
    undo_to(d.trail_size);
    d.flipped = true;
    d.lit = -d.lit;
    assign(d.lit);
    return true;
  }

  void undo_to(std::size_t size) {
    while (trail_.size() > size) {
      value_[var_of(trail_.back())] = 0;
      trail_.pop_back();
    }
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (int v = 0; v < vars_; ++v) {
      if (!theory_[v] || value_[v] == 0) continue;
      const Atom& a = *theory_[v];
      if (value_[v] > 0) {
        out.push_back({a.y, a.x, a.bound, v + 1});
      } else {
        out.push_back({a.x, a.y, -a.bound - 1, -(v + 1)});
      }
    }
    return out;
  }

  // Bellman-Ford from a virtual source joined to every node with weight 0.
  // Returns a node on a negative cycle, or -1.
  int bellman_ford(std::vector<std::int64_t>& dist, std::vector<int>& pred) const {
    const std::vector<Edge> es = edges();
    const int n = static_cast<int>(node_symbols_.size());
    dist.assign(n, 0);
    pred.assign(n, -1);
    int touched = -1;
    for (int round = 0; round < n; ++round) {
      touched = -1;
      for (std::size_t i = 0; i < es.size(); ++i) {
        const Edge& e = es[i];
        if (dist[e.from] + e.weight < dist[e.to]) {
          dist[e.to] = dist[e.from] + e.weight;
          pred[e.to] = static_cast<int>(i);
          touched = e.to;
        }
      }
      if (touched < 0) return -1;
    }
    return touched;
  }

  bool theory_consistent(std::vector<int>* cycle_lits) const {
    std::vector<std::int64_t> dist;
    std::vector<int> pred;
    int v = bellman_ford(dist, pred);
    if (v < 0) return true;
    const std::vector<Edge> es = edges();
    for (std::size_t i = 0; i < node_symbols_.size(); ++i) v = es[pred[v]].from;
    int u = v;
    do {
      const Edge& e = es[pred[u]];
      cycle_lits->push_back(e.lit);
      u = e.from;
    } while (u != v);
    std::reverse(cycle_lits->begin(), cycle_lits->end());
    return false;
  }

  std::uint64_t seed_;
  int vars_ = 0;
  int root_ = 0;
  std::vector<std::optional<Atom>> theory_;
  std::map<std::tuple<int, int, std::int64_t>, int> theory_index_;
  std::map<Symbol, int> bool_vars_;
  std::map<Symbol, int> nodes_;
  std::vector<Symbol> node_symbols_;
  std::vector<std::vector<int>> clauses_;
  std::vector<int> value_;
  std::vector<int> order_;
  std::vector<int> trail_;
  std::vector<Decision> decisions_;
  std::vector<int> cycle_;
};

// Sat search on `query`; the model is completed over `original`'s symbols
// and must satisfy it.
Verdict solve(const Formula& original, const SolverOptions& options) {
  const Formula normalized = normalize(original);
  Verdict v;
  try {
    Search search(normalized, options.seed);
    if (!search.run()) {
      v.kind = Verdict::Kind::Unsat;
      auto [cycle, weight] = search.cycle();
      v.cycle = std::move(cycle);
      v.cycle_weight = weight;
      return v;
    }
    v.kind = Verdict::Kind::Sat;
    v.model = search.model();
  } catch (const Unsupported& u) {
    v.kind = Verdict::Kind::Unsupported;
    v.reason = u.reason;
    v.offending_atom = u.atom;
    return v;
  }
  for (const Symbol& s : symbols(original)) {
    if (s.kind != Symbol::Kind::Zero) v.model.emplace(s, 0);
  }
  if (!evaluate(original, v.model)) throw std::logic_error("solver self-check failed: model does not satisfy formula");
  return v;
}

}  // namespace

Verdict check_sat(const Formula& f, const SolverOptions& options) { return solve(f, options); }

Verdict check_valid(const Formula& f, const SolverOptions& options) {
  Verdict v = solve(Formula::negate(f), options);
  switch (v.kind) {
    case Verdict::Kind::Unsat: v.kind = Verdict::Kind::Valid; break;
    case Verdict::Kind::Sat:
      v.kind = Verdict::Kind::Invalid;
      if (evaluate(f, v.model)) throw std::logic_error("solver self-check failed: counterexample satisfies formula");
      break;
    default: break;
  }
  return v;
}

std::string EpochLabels::label(const Epoch& e) const {
  auto it = names.find(e);
  if (it != names.end()) return it->second;
  switch (e.kind) {
    case Epoch::Kind::Old: return "pre-state";
    case Epoch::Kind::Current: return "post-state";
    case Epoch::Kind::Snapshot: return "snapshot " + std::to_string(e.index);
  }
  return e.str();
}

std::string explain(const Verdict& verdict, const EpochLabels& labels) {
  std::ostringstream out;
  switch (verdict.kind) {
    case Verdict::Kind::Valid:
    case Verdict::Kind::Unsupported:
      throw std::invalid_argument("explain: " + to_string(verdict.kind) + " verdicts carry nothing to explain");
    case Verdict::Kind::Unsat: {
      if (verdict.cycle.empty()) {
        out << "unsatisfiable after case analysis; no single negative cycle\n";
        return out.str();
      }
      out << "negative cycle (weight " << verdict.cycle_weight << "):\n";
      for (const auto& a : verdict.cycle) out << "  " << render(a) << "\n";
      return out.str();
    }
    case Verdict::Kind::Sat:
    case Verdict::Kind::Invalid: break;
  }
  std::map<Epoch, std::vector<std::string>> by_epoch;
  std::vector<std::string> auxiliary;
  for (const auto& [s, value] : verdict.model) {
    std::string shown = s.sort == Sort::Bool ? (value ? "True" : "False") : std::to_string(value);
    if (s.kind == Symbol::Kind::Aux) {
      auxiliary.push_back(s.name + " = " + shown);
      continue;
    }
    if (s.kind == Symbol::Kind::Zero) continue;
    Symbol plain = s;
    plain.epoch = Epoch::current();
    for (auto& e : plain.actual_epochs) {
      if (e) e = Epoch::current();
    }
    by_epoch[s.epoch].push_back(plain.render() + " = " + shown);
  }
  std::size_t width = 9;  // "auxiliary"
  for (const auto& [e, _] : by_epoch) width = std::max(width, labels.label(e).size());
  auto row = [&](const std::string& label, const std::vector<std::string>& cells) {
    out << "  " << label << ":" << std::string(width - label.size() + 1, ' ');
    for (std::size_t i = 0; i < cells.size(); ++i) out << (i ? ", " : "") << cells[i];
    out << "\n";
  };
  for (const auto& [e, cells] : by_epoch) row(labels.label(e), cells);
  if (!auxiliary.empty()) row("auxiliary", auxiliary);
  return out.str();
}

namespace {

std::string smt_name(const Symbol& s) { return "|" + s.render() + "|"; }

std::string smt_int(std::int64_t v) { return v < 0 ? "(- " + std::to_string(-v) + ")" : std::to_string(v); }

std::string smt_term(const Term& t) {
  switch (t.kind()) {
    case Term::Kind::Literal: return smt_int(t.value());
    case Term::Kind::Variable:
      return t.symbol().kind == Symbol::Kind::Zero ? "0" : smt_name(t.symbol());
    case Term::Kind::Sum: return "(+ " + smt_term(t.lhs()) + " " + smt_term(t.rhs()) + ")";
    case Term::Kind::Negation: return "(- " + smt_term(t.lhs()) + ")";
  }
  return "0";
}

std::string smt_formula(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Constant: return f.value() ? "true" : "false";
    case Formula::Kind::Atom: return smt_name(f.symbol());
    case Formula::Kind::Compare: {
      if (auto d = as_difference(f)) {
        const bool zx = d->x.kind == Symbol::Kind::Zero;
        const bool zy = d->y.kind == Symbol::Kind::Zero;
        if (zy) return "(<= " + smt_name(d->x) + " " + smt_int(d->bound) + ")";
        if (zx) return "(>= " + smt_name(d->y) + " " + smt_int(-d->bound) + ")";
        return "(<= (- " + smt_name(d->x) + " " + smt_name(d->y) + ") " + smt_int(d->bound) + ")";
      }
      // Not reached for normalized input except general linear atoms.
      return "(<= " + smt_term(f.lhs()) + " " + smt_term(f.rhs()) + ")";
    }
    case Formula::Kind::Not: return "(not " + smt_formula(f.operands().front()) + ")";
    case Formula::Kind::And:
    case Formula::Kind::Or: {
      std::string out = f.kind() == Formula::Kind::And ? "(and" : "(or";
      for (const auto& o : f.operands()) out += " " + smt_formula(o);
      return out + ")";
    }
    case Formula::Kind::Implies:
      return "(=> " + smt_formula(f.operands()[0]) + " " + smt_formula(f.operands()[1]) + ")";
  }
  return "true";
}

bool all_difference(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Compare: return as_difference(f).has_value();
    case Formula::Kind::Constant:
    case Formula::Kind::Atom: return true;
    default:
      return std::all_of(f.operands().begin(), f.operands().end(), [](const Formula& o) { return all_difference(o); });
  }
}

}  // namespace

std::string to_smtlib(const Formula& f, const std::string& comment) {
  const Formula n = normalize(f);
  std::ostringstream out;
  std::istringstream lines(comment);
  for (std::string line; std::getline(lines, line);) out << "; " << line << "\n";
  out << "(set-logic " << (all_difference(n) ? "QF_IDL" : "QF_LIA") << ")\n";
  for (const Symbol& s : symbols(n)) {
    if (s.kind == Symbol::Kind::Zero) continue;
    out << "(declare-fun " << smt_name(s) << " () " << (s.sort == Sort::Bool ? "Bool" : "Int") << ")\n";
  }
  out << "(assert " << smt_formula(n) << ")\n";
  out << "(check-sat)\n";
  return out.str();
}

}  // namespace sreq
