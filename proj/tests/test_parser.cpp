#include <doctest.h>

#include "sreq/lexer.hpp"
#include "sreq/parser.hpp"
#include "support/fixtures.hpp"

using namespace sreq;

namespace {

ExprPtr parse_post(const std::string& expr) {
  const std::string text = "class T\nfeature\n  x, y: INTEGER\n  p, q, r: BOOLEAN\n  run\n    do\n    ensure\n      " +
                           expr + "\n    end\nend\n";
  auto unit = parse_source(text, "t.sreq");
  return unit.classes.at(0).commands.at(0).postcondition.at(0).expr;
}

}  // namespace

TEST_CASE("lexer keeps comments as tokens and tracks positions") {
  auto tokens = lex("x := 1 -- set x\n  y", "f.sreq");
  REQUIRE(tokens.size() >= 5);
  CHECK(tokens[0].kind == TokenKind::Identifier);
  bool saw_comment = false;
  for (const auto& t : tokens) saw_comment = saw_comment || t.kind == TokenKind::Comment;
  CHECK(saw_comment);
}

TEST_CASE("illegal characters are reported with their location") {
  try {
    parse_source(fixtures::read("errors/illegal_character.sreq"), "bad.sreq");
    FAIL("expected an error");
  } catch (const DiagnosticError& e) {
    CHECK(e.diagnostic().kind == DiagnosticKind::IllegalCharacter);
    CHECK(e.diagnostic().location.file == "bad.sreq");
    CHECK(e.diagnostic().location.line == 3);
  }
}

TEST_CASE("a missing end is a syntax error") {
  CHECK_THROWS_AS(parse_source("class T\nfeature\n  x: INTEGER\n", "t.sreq"), DiagnosticError);
}

TEST_CASE("operator precedence: implies < or < and < comparison < additive") {
  CHECK(print_expr(*parse_post("p implies q or r and x < y + 1")) == "p implies q or r and x < y + 1");
  auto e = parse_post("p implies q or r and x < y + 1");
  REQUIRE(e->kind == Expr::Kind::Binary);
  CHECK(e->binary == BinaryOp::Implies);
  CHECK(e->rhs->binary == BinaryOp::Or);
  CHECK(e->rhs->rhs->binary == BinaryOp::And);
  CHECK(e->rhs->rhs->rhs->binary == BinaryOp::Lt);
  CHECK(e->rhs->rhs->rhs->rhs->binary == BinaryOp::Add);
}

TEST_CASE("implies associates to the right") {
  auto e = parse_post("p implies q implies r");
  CHECK(e->binary == BinaryOp::Implies);
  CHECK(e->lhs->kind == Expr::Kind::Name);
  CHECK(e->rhs->binary == BinaryOp::Implies);
}

TEST_CASE("parentheses survive printing only where needed") {
  CHECK(print_expr(*parse_post("(x + 1) - (y - 2) = 0")) == "x + 1 - (y - 2) = 0");
  CHECK(print_expr(*parse_post("(p implies q) implies r")) == "(p implies q) implies r");
}

TEST_CASE("normalize_comment strips hyphens and joins lines") {
  CHECK(normalize_comment({"-- increments current second if it is", "--   smaller than 59."}) ==
        "increments current second if it is smaller than 59.");
  CHECK(normalize_comment({}).empty());
}

TEST_CASE("driver comments join the feature-clause header") {
  auto unit = parse_source(fixtures::read("clock/clock_requirements.sreq"), "reqs.sreq");
  const auto& rc = unit.requirement_classes.at(0);
  CHECK(rc.header_comment == "A clock tick:");
  REQUIRE(rc.drivers.size() == 8);
  CHECK(rc.drivers[0].comment == "increments current second if it is smaller than 59.");
  CHECK(extract_comment(rc.drivers[0]) == "A clock tick increments current second if it is smaller than 59.");
  CHECK(rc.drivers[1].leading_comment.empty());
  CHECK(extract_comment(rc.drivers[1]) == "resets current second to 0 if it equals 59.");
  CHECK(rc.drivers[0].modify_set == std::vector<std::string>{"clock"});
  CHECK(rc.drivers[0].precondition.size() == 2);  // modify lifted out
}

TEST_CASE("hidden implementations have no body") {
  auto unit = parse_source(fixtures::read("clock/clock_contract.sreq"), "clock.sreq");
  const auto& tick = unit.classes.at(0).commands.at(0);
  CHECK_FALSE(tick.body.has_value());
  auto implemented = parse_source(fixtures::read("clock/clock_implemented.sreq"), "implemented.sreq");
  REQUIRE(implemented.classes.at(0).commands.at(0).body.has_value());
  CHECK(implemented.classes.at(0).commands.at(0).body->size() == 1);
}

TEST_CASE("print then parse is the identity on every fixture") {
  for (const char* f : {"clock/clock_contract.sreq", "clock/clock_requirements.sreq", "clock/clock_implemented.sreq",
                        "clock/extended_clock_requirements.sreq", "increments/stage_d.sreq", "train/train.sreq",
                        "train/train_requirements.sreq", "clock/double_tick_requirements.sreq"}) {
    CAPTURE(f);
    Project once;
    add_unit(once, parse_source(fixtures::read(f), f));
    const std::string printed = print_project(once);
    Project twice;
    add_unit(twice, parse_source(printed, f));
    CHECK(print_project(twice) == printed);
    CHECK(twice.driver_count() == once.driver_count());
    CHECK(twice.classes.size() == once.classes.size());
  }
}
