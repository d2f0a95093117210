#include <doctest.h>

#include "sreq/inference.hpp"
#include "support/fixtures.hpp"

using namespace sreq;

namespace {

std::shared_ptr<const Project> with_requirements(const std::string& reqs) {
  return fixtures::load_texts({{"clock.sreq", fixtures::read("clock/clock_contract.sreq")}, {"r.sreq", reqs}});
}

std::string one_driver(const std::string& args, const std::string& pre, const std::string& post) {
  return "deferred class R\nfeature\n  req (" + args + ")\n      -- x.\n    require\n      modify (clock)\n" + pre +
         "    do\n      clock.tick\n    ensure\n" + post + "    end\nend\n";
}

}  // namespace

TEST_CASE("clock requirements infer the tick postcondition") {
  auto p = fixtures::load({"clock/clock_contract.sreq", "clock/clock_requirements.sreq"});
  auto r = infer_contract(*p->find_requirement_class("CLOCK_REQUIREMENTS"), *p, "CLOCK.tick");
  CHECK(r.target == "CLOCK.tick");
  REQUIRE(r.assertions.size() == 8);
  CHECK(r.failures.empty());
  CHECK(r.assertions[0].rendering == "old second < 59 implies second = old second + 1");
  CHECK(r.assertions[3].rendering == "old second = 59 and old minute = 59 implies minute = 0");
  CHECK(r.assertions[7].rendering == "old second < 59 implies hour = old hour");
}

TEST_CASE("a binding written the other way round is still dropped") {
  auto p = with_requirements(one_driver("clock: CLOCK; s: INTEGER", "      s = clock.second\n",
                                        "      clock.second = s - 1\n"));
  auto a = infer_assertion(p->find_requirement_class("R")->drivers[0], *p);
  CHECK(a.rendering == "second = old second - 1");
}

TEST_CASE("an unbound auxiliary is reported") {
  auto p = with_requirements(one_driver("clock: CLOCK; n: INTEGER", "      clock.second < n\n",
                                        "      clock.second = 0\n"));
  try {
    infer_assertion(p->find_requirement_class("R")->drivers[0], *p);
    FAIL("expected InferenceError");
  } catch (const InferenceError& e) {
    CHECK(e.kind() == InferenceError::Kind::UnboundAuxiliary);
    CHECK(e.reasons()[0].find("'n'") != std::string::npos);
  }
}

TEST_CASE("an auxiliary in a non-equation postcondition is rejected") {
  auto p = with_requirements(one_driver("clock: CLOCK; s: INTEGER", "      clock.second = s\n",
                                        "      clock.second <= s + 1\n"));
  CHECK_THROWS_AS(infer_assertion(p->find_requirement_class("R")->drivers[0], *p), InferenceError);
}

TEST_CASE("multi-call drivers do not match the pattern") {
  auto p = fixtures::load(
      {"clock/clock_contract.sreq", "clock/clock_requirements.sreq", "clock/double_tick_requirements.sreq"});
  auto r = infer_contract(*p->find_requirement_class("DOUBLE_TICK_REQUIREMENTS"), *p, "tick");
  CHECK(r.assertions.size() == 8);
  REQUIRE(r.failures.size() == 1);
  CHECK(r.failures[0].driver == "req_double");
  CHECK(r.failures[0].kind == InferenceError::Kind::PatternMismatch);
}

TEST_CASE("unknown targets and unrelated drivers") {
  auto p = fixtures::load({"clock/clock_contract.sreq", "clock/clock_requirements.sreq"});
  const auto& rc = *p->find_requirement_class("CLOCK_REQUIREMENTS");
  CHECK_THROWS_AS(infer_contract(rc, *p, "reset"), DiagnosticError);
  CHECK_THROWS_AS(infer_contract(rc, *p, "TRAIN.tick"), DiagnosticError);

  auto empty = fixtures::load_texts({{"clock.sreq", fixtures::read("clock/clock_contract.sreq")},
                                     {"e.sreq", "deferred class EMPTY\nfeature\nend\n"}});
  auto r = infer_contract(*empty->find_requirement_class("EMPTY"), *empty, "tick");
  CHECK(r.assertions.empty());
  CHECK(r.failures.empty());
}

TEST_CASE("a driver without a precondition infers a bare consequent") {
  auto p = with_requirements(one_driver("clock: CLOCK", "", "      clock.second >= 0\n"));
  CHECK(infer_assertion(p->find_requirement_class("R")->drivers[0], *p).rendering == "second >= 0");
}
