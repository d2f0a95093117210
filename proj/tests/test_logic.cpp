#include <doctest.h>

#include <random>

#include "sreq/logic.hpp"
#include "support/generators.hpp"

using namespace sreq;

namespace {

Symbol cur(const std::string& n) { return Symbol::state("Current", n, Sort::Int, Epoch::current()); }
Symbol old(const std::string& n) { return Symbol::state("Current", n, Sort::Int, Epoch::old()); }
Term v(const Symbol& s) { return Term::variable(s); }
Term lit(std::int64_t k) { return Term::literal(k); }

Model random_model(std::mt19937_64& rng, const std::set<Symbol>& syms) {
  Model m;
  std::uniform_int_distribution<std::int64_t> d(-20, 20);
  for (const auto& s : syms) {
    if (s.kind == Symbol::Kind::Zero) continue;
    m[s] = s.sort == Sort::Bool ? d(rng) > 0 : d(rng);
  }
  return m;
}

}  // namespace

TEST_CASE("smart constructors fold constants") {
  CHECK(render(Term::sum(lit(2), lit(3))) == "5");
  CHECK(render(Term::neg(Term::neg(v(cur("x"))))) == "x");
  CHECK(Formula::conj(Formula::truth(), Formula::compare(CompareOp::Lt, v(cur("x")), lit(1))).kind() ==
        Formula::Kind::Compare);
  CHECK(Formula::disj(Formula::truth(), Formula::compare(CompareOp::Lt, v(cur("x")), lit(1))).kind() ==
        Formula::Kind::Constant);
  CHECK(Formula::implies(Formula::falsity(), Formula::falsity()) == Formula::truth());
  CHECK(Formula::negate(Formula::compare(CompareOp::Lt, v(cur("x")), lit(1))) ==
        Formula::compare(CompareOp::Ge, v(cur("x")), lit(1)));
}

TEST_CASE("canonical rendering uses contract syntax") {
  auto f = Formula::implies(Formula::compare(CompareOp::Lt, v(old("second")), lit(59)),
                            Formula::compare(CompareOp::Eq, v(cur("second")), Term::sum(v(old("second")), lit(1))));
  CHECK(render(f) == "old second < 59 implies second = old second + 1");
  auto g = Formula::compare(CompareOp::Le, v(Symbol::state("clock", "hour", Sort::Int, Epoch::snapshot(2))), lit(3));
  CHECK(render(g) == "clock.hour@2 <= 3");
  CHECK(render(Formula::conj(Formula::disj(Formula::atom(Symbol::aux("p", Sort::Bool)),
                                           Formula::atom(Symbol::aux("q", Sort::Bool))),
                             Formula::atom(Symbol::aux("r", Sort::Bool)))) == "(p or q) and r");
}

TEST_CASE("evaluate reports unbound symbols") {
  try {
    evaluate(Formula::compare(CompareOp::Lt, v(cur("x")), lit(1)), Model{});
    FAIL("expected LogicError");
  } catch (const LogicError& e) {
    CHECK(e.kind() == LogicError::Kind::UnboundSymbol);
  }
}

TEST_CASE("linearize collects coefficients") {
  Linear l = linearize(Term::sum(Term::sum(v(cur("x")), v(cur("x"))), Term::neg(Term::sum(v(cur("y")), lit(4)))));
  CHECK(l.constant == -4);
  CHECK(l.coefficients.at(cur("x")) == 2);
  CHECK(l.coefficients.at(cur("y")) == -1);
}

TEST_CASE("normalize yields difference atoms") {
  auto f = Formula::compare(CompareOp::Ne, v(cur("x")), Term::sum(v(cur("y")), lit(2)));
  auto n = normalize(f);
  CHECK(n.kind() == Formula::Kind::Or);
  for (const auto& part : n.operands()) {
    auto d = as_difference(part);
    REQUIRE(d.has_value());
  }
  CHECK_FALSE(as_difference(normalize(
                  Formula::compare(CompareOp::Le, Term::sum(v(cur("x")), v(cur("y"))), lit(3))))
                  .has_value());
}

TEST_CASE("property: normalize preserves meaning") {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 300; ++i) {
    auto f = gen::random_dl(rng, 4, 8, 8);
    auto n = normalize(f.formula);
    CHECK(normalize(n) == n);
    for (int k = 0; k < 10; ++k) {
      Model m = random_model(rng, symbols(f.formula));
      REQUIRE(evaluate(f.formula, m) == evaluate(n, m));
    }
  }
}

TEST_CASE("property: epoch renaming commutes with substitution") {
  std::mt19937_64 rng(2);
  const std::map<Epoch, Epoch> to_old = {{Epoch::current(), Epoch::old()}};
  for (int i = 0; i < 200; ++i) {
    auto f = gen::random_dl(rng, 3, 6, 8);
    const Symbol target = f.symbols[0];
    const Symbol source = f.symbols.back();
    const std::int64_t k = std::uniform_int_distribution<std::int64_t>(-5, 5)(rng);
    Substitution s{{target, Term::sum(v(source), lit(k))}};
    Symbol target_old = target;
    target_old.epoch = Epoch::old();
    Symbol source_old = source;
    source_old.epoch = Epoch::old();
    Substitution s_old{{target_old, Term::sum(v(source_old), lit(k))}};
    const Formula lhs = rename_epochs(substitute(f.formula, s), to_old);
    const Formula rhs = substitute(rename_epochs(f.formula, to_old), s_old);
    REQUIRE(render(lhs) == render(rhs));
    for (int j = 0; j < 5; ++j) {
      Model m = random_model(rng, symbols(lhs));
      REQUIRE(evaluate(lhs, m) == evaluate(rhs, m));
    }
  }
}

TEST_CASE("substitution agrees with evaluation under the updated model") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    auto f = gen::random_dl(rng, 3, 6, 8);
    const Symbol x = f.symbols[0];
    const std::int64_t k = std::uniform_int_distribution<std::int64_t>(-5, 5)(rng);
    const Term replacement = Term::sum(v(f.symbols.back()), lit(k));
    Model m = random_model(rng, std::set<Symbol>(f.symbols.begin(), f.symbols.end()));
    Model updated = m;
    updated[x] = evaluate(replacement, m);
    REQUIRE(evaluate(substitute(f.formula, x, replacement), m) == evaluate(f.formula, updated));
  }
}

TEST_CASE("conjuncts splits nested conjunctions only") {
  auto a = Formula::compare(CompareOp::Lt, v(cur("x")), lit(1));
  auto b = Formula::compare(CompareOp::Gt, v(cur("y")), lit(1));
  auto c = Formula::atom(Symbol::aux("p", Sort::Bool));
  CHECK(conjuncts(Formula::conj({a, Formula::conj(b, c)})).size() == 3);
  CHECK(conjuncts(Formula::disj(a, b)).size() == 1);
  CHECK(atom_count(Formula::conj({a, Formula::disj(b, c)})) == 3);
}
