#pragma once

// Random difference-logic formulas with a brute-force oracle, and random
// loop-free bodies with a concrete interpreter. Both oracles work on the
// generator's own structures and never call into the library.

#include <algorithm>
#include <climits>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "sreq/logic.hpp"

namespace gen {

using sreq::CompareOp;
using sreq::Formula;
using sreq::Symbol;
using sreq::Term;

inline bool holds(std::int64_t lhs, CompareOp op, std::int64_t rhs) {
  switch (op) {
    case CompareOp::Eq: return lhs == rhs;
    case CompareOp::Ne: return lhs != rhs;
    case CompareOp::Lt: return lhs < rhs;
    case CompareOp::Le: return lhs <= rhs;
    case CompareOp::Gt: return lhs > rhs;
    case CompareOp::Ge: return lhs >= rhs;
  }
  return false;
}

inline CompareOp random_op(std::mt19937_64& rng) {
  return static_cast<CompareOp>(std::uniform_int_distribution<int>(0, 5)(rng));
}

// ---------------------------------------------------------------------------
// Difference logic

/// x - y op c, with y == -1 meaning the constant zero.
struct DlAtom {
  int x = 0;
  int y = -1;
  CompareOp op = CompareOp::Le;
  std::int64_t c = 0;
};

struct DlNode {
  enum class Kind { Atom, Not, And, Or, Implies, Iff } kind = Kind::Atom;
  int atom = 0;
  std::vector<int> kids;
};

struct DlFormula {
  int vars = 0;
  std::vector<DlAtom> atoms;
  std::vector<DlNode> nodes;
  int root = 0;
  Formula formula = Formula::truth();
  std::vector<Symbol> symbols;

  bool eval_mask(std::uint32_t mask, int node) const {
    const DlNode& n = nodes[node];
    switch (n.kind) {
      case DlNode::Kind::Atom: return (mask >> n.atom) & 1u;
      case DlNode::Kind::Not: return !eval_mask(mask, n.kids[0]);
      case DlNode::Kind::And:
        for (int k : n.kids) {
          if (!eval_mask(mask, k)) return false;
        }
        return true;
      case DlNode::Kind::Or:
        for (int k : n.kids) {
          if (eval_mask(mask, k)) return true;
        }
        return false;
      case DlNode::Kind::Implies: return !eval_mask(mask, n.kids[0]) || eval_mask(mask, n.kids[1]);
      case DlNode::Kind::Iff: return eval_mask(mask, n.kids[0]) == eval_mask(mask, n.kids[1]);
    }
    return false;
  }

  bool eval(const std::vector<std::int64_t>& values) const {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      const DlAtom& a = atoms[i];
      std::int64_t diff = values[a.x] - (a.y < 0 ? 0 : values[a.y]);
      if (holds(diff, a.op, a.c)) mask |= 1u << i;
    }
    return eval_mask(mask, root);
  }

  /// Small-model bound: a satisfiable conjunction of difference constraints
  /// with |bound| <= C over n variables has a solution within [-nC, nC]
  /// (strict comparisons tighten a bound by one, hence C = max|c| + 1).
  std::int64_t bound() const {
    std::int64_t c = 0;
    for (const auto& a : atoms) c = std::max<std::int64_t>(c, a.c < 0 ? -a.c : a.c);
    return vars * (c + 1);
  }

  /// Exhaustive search over [-bound, bound]^vars; fills `witness`.
  bool brute_force_sat(std::vector<std::int64_t>* witness = nullptr) const {
    const std::int64_t b = bound();
    std::vector<std::uint8_t> table(std::size_t{1} << atoms.size());
    for (std::uint32_t m = 0; m < table.size(); ++m) table[m] = eval_mask(m, root);
    // Atoms are charged to the deepest variable they mention.
    std::vector<std::vector<int>> by_level(vars);
    for (std::size_t i = 0; i < atoms.size(); ++i) by_level[std::max(atoms[i].x, atoms[i].y)].push_back(int(i));
    std::vector<std::int64_t> v(vars, -b);
    std::function<bool(int, std::uint32_t)> go = [&](int level, std::uint32_t mask) -> bool {
      if (level == vars) return table[mask];
      for (v[level] = -b; v[level] <= b; ++v[level]) {
        std::uint32_t m = mask;
        for (int i : by_level[level]) {
          const DlAtom& a = atoms[i];
          if (holds(v[a.x] - (a.y < 0 ? 0 : v[a.y]), a.op, a.c)) m |= 1u << i;
        }
        if (go(level + 1, m)) return true;
      }
      return false;
    };
    bool sat = go(0, 0);
    if (sat && witness) *witness = v;
    return sat;
  }
};

/// `max_vars` integer symbols, up to `max_atoms` atoms with |c| <= max_const.
inline DlFormula random_dl(std::mt19937_64& rng, int max_vars = 4, int max_atoms = 12, int max_const = 8) {
  DlFormula f;
  f.vars = std::uniform_int_distribution<int>(1, max_vars)(rng);
  for (int i = 0; i < f.vars; ++i) {
    f.symbols.push_back(Symbol::state("Current", std::string(1, char('p' + i)), sreq::Sort::Int, sreq::Epoch::current()));
  }
  const int n_atoms = std::uniform_int_distribution<int>(1, max_atoms)(rng);
  std::uniform_int_distribution<int> var(0, f.vars - 1);
  std::uniform_int_distribution<std::int64_t> cst(-max_const, max_const);
  std::vector<Formula> atom_formulas;
  for (int i = 0; i < n_atoms; ++i) {
    DlAtom a;
    a.x = var(rng);
    a.y = std::bernoulli_distribution(0.3)(rng) ? -1 : var(rng);
    if (a.y == a.x) a.y = -1;
    a.op = random_op(rng);
    a.c = cst(rng);
    f.atoms.push_back(a);
    // Several surface shapes of the same atom exercise normalization.
    Term x = Term::variable(f.symbols[a.x]);
    Term c = Term::literal(a.c);
    Formula af = Formula::truth();
    if (a.y < 0) {
      af = std::bernoulli_distribution(0.5)(rng) ? Formula::compare(a.op, x, c)
                                                 : Formula::compare(a.op, Term::sum(x, Term::neg(c)), Term::literal(0));
    } else {
      Term y = Term::variable(f.symbols[a.y]);
      switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0: af = Formula::compare(a.op, Term::difference(x, y), c); break;
        case 1: af = Formula::compare(a.op, x, Term::sum(y, c)); break;
        default: af = Formula::compare(a.op, Term::sum(x, Term::neg(c)), y); break;
      }
    }
    atom_formulas.push_back(af);
  }
  // Random boolean skeleton over the atoms; each atom used at least once.
  std::vector<int> pool;
  std::vector<Formula> built;
  for (int i = 0; i < n_atoms; ++i) {
    f.nodes.push_back({DlNode::Kind::Atom, i, {}});
    pool.push_back(int(f.nodes.size()) - 1);
    built.push_back(atom_formulas[i]);
  }
  std::vector<Formula> by_node = built;
  while (pool.size() > 1 || std::bernoulli_distribution(0.15)(rng)) {
    std::shuffle(pool.begin(), pool.end(), rng);
    int kind = std::uniform_int_distribution<int>(0, 9)(rng);
    DlNode n;
    Formula nf = Formula::truth();
    if (kind == 0 || pool.size() == 1) {
      n.kind = DlNode::Kind::Not;
      n.kids = {pool.back()};
      nf = Formula::negate(by_node[pool.back()]);
      pool.pop_back();
    } else {
      int a = pool.back();
      pool.pop_back();
      int b = pool.back();
      pool.pop_back();
      n.kids = {a, b};
      if (kind <= 4) {
        n.kind = DlNode::Kind::And;
        nf = Formula::conj(by_node[a], by_node[b]);
      } else if (kind <= 7) {
        n.kind = DlNode::Kind::Or;
        nf = Formula::disj(by_node[a], by_node[b]);
      } else if (kind == 8) {
        n.kind = DlNode::Kind::Implies;
        nf = Formula::implies(by_node[a], by_node[b]);
      } else {
        n.kind = DlNode::Kind::Iff;
        nf = Formula::iff(by_node[a], by_node[b]);
      }
    }
    f.nodes.push_back(n);
    by_node.push_back(nf);
    pool.push_back(int(f.nodes.size()) - 1);
    if (f.nodes.size() > 64) break;
  }
  while (pool.size() > 1) {  // leftovers after the cap
    int a = pool.back();
    pool.pop_back();
    int b = pool.back();
    pool.pop_back();
    f.nodes.push_back({DlNode::Kind::And, 0, {a, b}});
    by_node.push_back(Formula::conj(by_node[a], by_node[b]));
    pool.push_back(int(f.nodes.size()) - 1);
  }
  f.root = pool.front();
  f.formula = by_node[f.root];
  return f;
}

// ---------------------------------------------------------------------------
// Loop-free bodies over three integer attributes

inline const char* kAttr[3] = {"a", "b", "c"};

/// x op y + c, or x op c when y == -1.
struct Cond {
  int x = 0;
  int y = -1;
  CompareOp op = CompareOp::Lt;
  std::int64_t c = 0;

  bool eval(const std::int64_t* s) const { return holds(s[x], op, (y < 0 ? 0 : s[y]) + c); }
};

inline std::string op_text(CompareOp op) { return std::string(sreq::spelling(op)); }

inline std::string term_text(const std::string& base, std::int64_t c) {
  if (base.empty()) return std::to_string(c);
  if (c == 0) return base;
  return base + (c > 0 ? " + " : " - ") + std::to_string(c > 0 ? c : -c);
}

inline std::string cond_text(const Cond& c, const char* prefix = "") {
  return std::string(prefix) + kAttr[c.x] + " " + op_text(c.op) + " " +
         term_text(c.y < 0 ? "" : std::string(prefix) + kAttr[c.y], c.c);
}

struct Stmt {
  enum class Kind { Assign, If } kind = Kind::Assign;
  int target = 0;
  int source = -1;  // -1: constant only
  std::int64_t k = 0;
  Cond cond;
  std::vector<Stmt> then_branch;
  std::vector<Stmt> else_branch;
};

inline void execute(const std::vector<Stmt>& body, std::int64_t* s) {
  for (const auto& st : body) {
    if (st.kind == Stmt::Kind::Assign) {
      s[st.target] = (st.source < 0 ? 0 : s[st.source]) + st.k;
    } else {
      execute(st.cond.eval(s) ? st.then_branch : st.else_branch, s);
    }
  }
}

inline void body_text(const std::vector<Stmt>& body, std::ostringstream& out, int depth) {
  const std::string pad(6 + 2 * depth, ' ');
  for (const auto& st : body) {
    if (st.kind == Stmt::Kind::Assign) {
      out << pad << kAttr[st.target] << " := " << term_text(st.source < 0 ? "" : kAttr[st.source], st.k) << "\n";
    } else {
      out << pad << "if " << cond_text(st.cond) << " then\n";
      body_text(st.then_branch, out, depth + 1);
      if (!st.else_branch.empty()) {
        out << pad << "else\n";
        body_text(st.else_branch, out, depth + 1);
      }
      out << pad << "end\n";
    }
  }
}

/// Postcondition clause `[old-cond implies] cur-or-old x op cur-or-old y + c`.
struct PostClause {
  bool guarded = false;
  Cond guard;  // over old values
  Cond atom;
  bool x_old = false;
  bool y_old = false;

  bool eval(const std::int64_t* pre, const std::int64_t* post) const {
    if (guarded && !guard.eval(pre)) return true;
    std::int64_t lhs = (x_old ? pre : post)[atom.x];
    std::int64_t rhs = (atom.y < 0 ? 0 : (y_old ? pre : post)[atom.y]) + atom.c;
    return holds(lhs, atom.op, rhs);
  }

  std::string text() const {
    std::string lhs = std::string(x_old ? "old " : "") + kAttr[atom.x];
    std::string rhs = term_text(atom.y < 0 ? "" : std::string(y_old ? "old " : "") + kAttr[atom.y], atom.c);
    std::string s = lhs + " " + op_text(atom.op) + " " + rhs;
    return guarded ? cond_text(guard, "old ") + " implies " + s : s;
  }
};

struct Program {
  std::vector<Cond> pre;  // on top of 0 <= x <= 60
  std::vector<Stmt> body;
  std::vector<PostClause> post;

  std::string source() const {
    std::ostringstream out;
    out << "class SUBJECT\nfeature\n  a, b, c: INTEGER\n\n  run\n    require\n";
    for (const char* x : kAttr) out << "      0 <= " << x << "\n      " << x << " <= 60\n";
    for (const auto& p : pre) out << "      " << cond_text(p) << "\n";
    out << "    do\n";
    body_text(body, out, 0);
    out << "    ensure\n";
    for (const auto& p : post) out << "      " << p.text() << "\n";
    out << "    end\nend\n";
    return out.str();
  }

  bool pre_holds(const std::int64_t* s) const {
    for (int i = 0; i < 3; ++i) {
      if (s[i] < 0 || s[i] > 60) return false;
    }
    for (const auto& p : pre) {
      if (!p.eval(s)) return false;
    }
    return true;
  }
};

inline Cond random_cond(std::mt19937_64& rng, std::int64_t max_const = 60) {
  Cond c;
  c.x = std::uniform_int_distribution<int>(0, 2)(rng);
  c.y = std::bernoulli_distribution(0.5)(rng) ? -1 : std::uniform_int_distribution<int>(0, 2)(rng);
  if (c.y == c.x) c.y = -1;
  c.op = random_op(rng);
  c.c = c.y < 0 ? std::uniform_int_distribution<std::int64_t>(0, max_const)(rng)
                : std::uniform_int_distribution<std::int64_t>(-max_const / 3, max_const / 3)(rng);
  return c;
}

inline std::vector<Stmt> random_body(std::mt19937_64& rng, int depth = 0) {
  std::vector<Stmt> body;
  const int n = std::uniform_int_distribution<int>(depth == 0 ? 1 : 0, 3)(rng);
  for (int i = 0; i < n; ++i) {
    Stmt s;
    if (depth < 2 && std::bernoulli_distribution(0.3)(rng)) {
      s.kind = Stmt::Kind::If;
      s.cond = random_cond(rng);
      s.then_branch = random_body(rng, depth + 1);
      if (std::bernoulli_distribution(0.6)(rng)) s.else_branch = random_body(rng, depth + 1);
    } else {
      s.target = std::uniform_int_distribution<int>(0, 2)(rng);
      s.source = std::bernoulli_distribution(0.7)(rng) ? std::uniform_int_distribution<int>(0, 2)(rng) : -1;
      s.k = s.source < 0 ? std::uniform_int_distribution<std::int64_t>(0, 60)(rng)
                         : std::uniform_int_distribution<std::int64_t>(-10, 10)(rng);
    }
    body.push_back(std::move(s));
  }
  return body;
}

/// Moves the clause constant to the edge of what the body reaches on the
/// even grid, give or take one, so that proofs and near misses are common.
inline void tighten(const Program& p, PostClause& clause, std::mt19937_64& rng) {
  std::int64_t lo = INT64_MAX;
  std::int64_t hi = INT64_MIN;
  for (std::int64_t a = 0; a <= 60; a += 2) {
    for (std::int64_t b = 0; b <= 60; b += 2) {
      for (std::int64_t c = 0; c <= 60; c += 2) {
        std::int64_t pre[3] = {a, b, c};
        if (!p.pre_holds(pre) || (clause.guarded && !clause.guard.eval(pre))) continue;
        std::int64_t post[3] = {a, b, c};
        execute(p.body, post);
        std::int64_t d = (clause.x_old ? pre : post)[clause.atom.x] -
                         (clause.atom.y < 0 ? 0 : (clause.y_old ? pre : post)[clause.atom.y]);
        lo = std::min(lo, d);
        hi = std::max(hi, d);
      }
    }
  }
  if (lo > hi) return;
  const std::int64_t nudge = std::uniform_int_distribution<int>(-1, 2)(rng) > 0 ? 0 : std::uniform_int_distribution<int>(-1, 1)(rng);
  switch (clause.atom.op) {
    case CompareOp::Le: clause.atom.c = hi + nudge; break;
    case CompareOp::Lt: clause.atom.c = hi + 1 + nudge; break;
    case CompareOp::Ge: clause.atom.c = lo + nudge; break;
    case CompareOp::Gt: clause.atom.c = lo - 1 + nudge; break;
    case CompareOp::Eq: clause.atom.c = hi + (lo == hi ? 0 : nudge); break;
    case CompareOp::Ne: clause.atom.c = hi + 1 + nudge; break;
  }
}

inline Program random_program(std::mt19937_64& rng) {
  Program p;
  if (std::bernoulli_distribution(0.4)(rng)) p.pre.push_back(random_cond(rng));
  p.body = random_body(rng);
  const int n_post = std::uniform_int_distribution<int>(1, 3)(rng);
  for (int i = 0; i < n_post; ++i) {
    PostClause c;
    c.guarded = std::bernoulli_distribution(0.4)(rng);
    c.guard = random_cond(rng);
    c.atom = random_cond(rng);
    c.x_old = std::bernoulli_distribution(0.2)(rng);
    c.y_old = std::bernoulli_distribution(0.5)(rng);
    if (std::bernoulli_distribution(0.6)(rng)) tighten(p, c, rng);
    p.post.push_back(c);
  }
  return p;
}

}  // namespace gen
