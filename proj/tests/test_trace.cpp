#include <doctest.h>

#include "sreq/trace.hpp"
#include "support/fixtures.hpp"

using namespace sreq;

namespace {

std::vector<std::string> names(const std::vector<ImpactRow>& rows) {
  std::vector<std::string> out;
  for (const auto& r : rows) out.push_back(r.driver.name);
  return out;
}

void check_transpose(const TraceMatrix& m) {
  for (const auto& [d, fs] : m.down) {
    for (const auto& f : fs) REQUIRE(m.up.at(f).count(d) == 1);
  }
  for (const auto& [f, ds] : m.up) {
    for (const auto& d : ds) REQUIRE(m.down.at(d).count(f) == 1);
  }
}

}  // namespace

TEST_CASE("hour is constrained by req_6, req_7 and req_8") {
  auto p = fixtures::load({"clock/clock_contract.sreq", "clock/clock_requirements.sreq"});
  CHECK(names(impact(*p, "CLOCK.hour")) == std::vector<std::string>{"req_6", "req_7", "req_8"});
  CHECK(impact(*p, "CLOCK.tick").size() == 8);
}

TEST_CASE("the extended project traces all eleven drivers to tick") {
  auto p = fixtures::load(
      {"increments/stage_e.sreq", "clock/clock_requirements.sreq", "clock/extended_clock_requirements.sreq"});
  auto rows = impact(*p, "CLOCK.tick");
  REQUIRE(rows.size() == 11);
  CHECK(rows[8].driver.name == "req_9");  // numeric order
  CHECK(rows[10].driver.name == "req_11");
  const TraceMatrix m = build_matrix(*p);
  CHECK(m.down.size() == 11);  // inherited drivers appear once
  check_transpose(m);
}

TEST_CASE("impact joins known verdicts") {
  auto p = fixtures::load(
      {"increments/stage_b.sreq", "clock/clock_requirements.sreq", "clock/extended_clock_requirements.sreq"});
  std::map<DriverRef, Status> verdicts;
  for (const auto& o : verify_requirement_class(*p->find_requirement_class("EXTENDED_CLOCK_REQUIREMENTS"), *p)) {
    verdicts[{o.owner.substr(0, o.owner.rfind('.')), o.name}] = o.status;
  }
  auto rows = impact(*p, "CLOCK.day", verdicts);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].driver.name == "req_9");
  CHECK(rows[0].verdict == Status::Proved);
  CHECK(rows[1].verdict == Status::Failed);
  CHECK(rows[2].verdict == Status::Failed);
  CHECK_FALSE(impact(*p, "CLOCK.day").front().verdict.has_value());
}

TEST_CASE("unknown features") {
  auto p = fixtures::load({"clock/clock_contract.sreq", "clock/clock_requirements.sreq"});
  CHECK_THROWS_AS(impact(*p, "CLOCK.day"), UnknownFeature);
  CHECK_THROWS_AS(impact(*p, "WATCH.tick"), UnknownFeature);
  CHECK_THROWS_AS(impact(*p, "tick"), UnknownFeature);
}

TEST_CASE("query applications and contract-free bodies are traced") {
  auto p = fixtures::load({"train/train.sreq", "train/train_requirements.sreq"});
  const TraceMatrix m = build_matrix(*p);
  const std::set<FeatureRef> want = {{"TRACK_SEGMENT", "speed_limit"}, {"TRAIN", "on"}, {"TRAIN", "speed"}};
  CHECK(m.down.at({"TRAIN_REQUIREMENTS", "maintain_track_segment_speed_limit"}) == want);
  CHECK(m.down.at({"TRAIN_REQUIREMENTS", "maintain_track_segment_speed_limit_without_contract"}) == want);
  check_transpose(m);
}

TEST_CASE("an empty project has an empty matrix") {
  auto p = fixtures::load_texts({{"c.sreq", "class C\nfeature\n  x: INTEGER\nend\n"}});
  const TraceMatrix m = build_matrix(*p);
  CHECK(m.down.empty());
  CHECK(m.up.empty());
}

TEST_CASE("property: comment edits leave the matrix alone") {
  const std::string reqs = fixtures::read("clock/clock_requirements.sreq");
  std::string edited = reqs;
  for (std::size_t at = edited.find("-- "); at != std::string::npos; at = edited.find("-- ", at + 8)) {
    edited.insert(at + 3, "(edited) ");
  }
  REQUIRE(edited != reqs);
  auto a = fixtures::load_texts({{"c.sreq", fixtures::read("clock/clock_contract.sreq")}, {"r.sreq", reqs}});
  auto b = fixtures::load_texts({{"c.sreq", fixtures::read("clock/clock_contract.sreq")}, {"r.sreq", edited}});
  const TraceMatrix ma = build_matrix(*a);
  const TraceMatrix mb = build_matrix(*b);
  CHECK(ma.down == mb.down);
  CHECK(ma.up == mb.up);
}

TEST_CASE("driver references order digits numerically") {
  CHECK(DriverRef{"R", "req_9"} < DriverRef{"R", "req_10"});
  CHECK_FALSE(DriverRef{"R", "req_10"} < DriverRef{"R", "req_9"});
  CHECK(DriverRef{"A", "req_10"} < DriverRef{"B", "req_1"});
  CHECK_FALSE(DriverRef{"R", "x"} < DriverRef{"R", "x"});
}
