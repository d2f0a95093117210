#include <doctest.h>

#include <random>

#include "sreq/solver.hpp"
#include "support/generators.hpp"

using namespace sreq;

namespace {

Symbol var(const std::string& n) { return Symbol::state("Current", n, Sort::Int, Epoch::current()); }
Term v(const std::string& n) { return Term::variable(var(n)); }
Term lit(std::int64_t k) { return Term::literal(k); }
Formula le(Term a, Term b) { return Formula::compare(CompareOp::Le, std::move(a), std::move(b)); }
Formula lt(Term a, Term b) { return Formula::compare(CompareOp::Lt, std::move(a), std::move(b)); }

}  // namespace

TEST_CASE("a strict cycle is unsatisfiable and explained") {
  auto f = Formula::conj(lt(v("x"), v("y")), lt(v("y"), v("x")));
  Verdict r = check_sat(f);
  REQUIRE(r.kind == Verdict::Kind::Unsat);
  CHECK(r.cycle.size() == 2);
  CHECK(r.cycle_weight < 0);
  CHECK(explain(r).find("negative cycle") != std::string::npos);
}

TEST_CASE("cycle weight is the sum of its bounds") {
  auto f = Formula::conj({le(Term::difference(v("x"), v("y")), lit(3)), le(Term::difference(v("y"), v("z")), lit(-5)),
                          le(Term::difference(v("z"), v("x")), lit(1))});
  Verdict r = check_sat(f);
  REQUIRE(r.kind == Verdict::Kind::Unsat);
  CHECK(r.cycle_weight == -1);
}

TEST_CASE("satisfiable conjunctions get checked models") {
  auto f = Formula::conj({le(Term::difference(v("x"), v("y")), lit(3)), le(lit(10), v("x")), lt(v("y"), lit(20))});
  Verdict r = check_sat(f);
  REQUIRE(r.kind == Verdict::Kind::Sat);
  CHECK(evaluate(f, r.model));
}

TEST_CASE("propositions mix with difference atoms") {
  auto p = Formula::atom(Symbol::aux("p", Sort::Bool));
  CHECK(check_sat(Formula::conj(p, Formula::negate(p))).kind == Verdict::Kind::Unsat);
  auto f = Formula::conj(Formula::implies(p, lt(v("x"), lit(0))), Formula::implies(Formula::negate(p), lt(lit(5), v("x"))));
  Verdict r = check_sat(Formula::conj(f, le(v("x"), lit(3))));
  REQUIRE(r.kind == Verdict::Kind::Sat);
  CHECK(r.model.at(Symbol::aux("p", Sort::Bool)) == 1);
}

TEST_CASE("validity and counterexamples") {
  CHECK(check_valid(Formula::implies(lt(v("x"), v("y")), le(v("x"), v("y")))).kind == Verdict::Kind::Valid);
  auto f = Formula::implies(le(v("x"), v("y")), lt(v("x"), v("y")));
  Verdict r = check_valid(f);
  REQUIRE(r.kind == Verdict::Kind::Invalid);
  CHECK_FALSE(evaluate(f, r.model));
  CHECK(r.model.at(var("x")) == r.model.at(var("y")));
  CHECK(explain(r).find("post-state") != std::string::npos);
}

TEST_CASE("explain refuses verdicts without evidence") {
  Verdict valid = check_valid(Formula::truth());
  CHECK_THROWS_AS(explain(valid), std::invalid_argument);
}

TEST_CASE("non-difference atoms are unsupported") {
  Verdict r = check_sat(le(Term::sum(v("x"), v("y")), lit(3)));
  CHECK(r.kind == Verdict::Kind::Unsupported);
  CHECK(r.offending_atom.has_value());
  CHECK_FALSE(r.reason.empty());
}

TEST_CASE("SMT-LIB export") {
  auto f = Formula::conj(lt(v("x"), v("y")), lt(v("y"), lit(3)));
  const std::string s = to_smtlib(f, "two lines\nof comment");
  CHECK(s.find("; two lines\n; of comment\n") == 0);
  CHECK(s.find("(set-logic QF_IDL)") != std::string::npos);
  CHECK(s.find("(declare-fun |x| () Int)") != std::string::npos);
  CHECK(s.find("(check-sat)") != std::string::npos);
  CHECK(to_smtlib(le(Term::sum(v("x"), v("y")), lit(3))).find("QF_LIA") != std::string::npos);
}

TEST_CASE("property: agreement with brute force on small formulas") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    auto f = gen::random_dl(rng, 3, 8, 6);
    const bool expected = f.brute_force_sat();
    Verdict r = check_sat(f.formula);
    CAPTURE(render(f.formula));
    REQUIRE((r.kind == Verdict::Kind::Sat) == expected);
    if (expected) CHECK(evaluate(f.formula, r.model));
  }
}

TEST_CASE("property: the decision seed never changes a verdict") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    auto f = gen::random_dl(rng);
    const auto base = check_sat(f.formula, {0}).kind;
    for (std::uint64_t seed : {1ull, 7ull, 123456789ull}) REQUIRE(check_sat(f.formula, {seed}).kind == base);
  }
}
