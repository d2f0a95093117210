#include <doctest.h>

#include <sstream>

#include "sreq/docgen.hpp"
#include "sreq/resolve.hpp"
#include "support/fixtures.hpp"

using namespace sreq;

namespace {

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

}  // namespace

TEST_CASE("the clock document") {
  auto p = fixtures::load({"clock/clock_contract.sreq", "clock/clock_requirements.sreq"});
  const auto& rc = *p->find_requirement_class("CLOCK_REQUIREMENTS");
  const std::string text = generate(rc, *p, DocFormat::Text);
  CHECK(text.find("A clock tick:\n  (REQ1) Increments current second if it is smaller than 59.\n") != std::string::npos);
  CHECK(text.find("(REQ3) Increments current minute if the time is HH:MM:59 for MM smaller than 59.") !=
        std::string::npos);
  const std::string md = generate(rc, *p, DocFormat::Markdown);
  CHECK(md.rfind("# CLOCK_REQUIREMENTS\n", 0) == 0);
  CHECK(md.find("- **(REQ8)** Keeps current hour if current second is smaller than 59.") != std::string::npos);
  CHECK(generate(rc, *p, DocFormat::Text) == text);  // deterministic
}

TEST_CASE("the extended document lists inherited requirements first") {
  auto p = fixtures::load(
      {"increments/stage_e.sreq", "clock/clock_requirements.sreq", "clock/extended_clock_requirements.sreq"});
  auto doc = build_document(*p->find_requirement_class("EXTENDED_CLOCK_REQUIREMENTS"), *p);
  REQUIRE(doc.items.size() == 11);
  CHECK(doc.header == "A clock tick:");
  CHECK(doc.items[0].driver == "req_1");
  CHECK(doc.items[8].label == "REQ9");
  CHECK(doc.items[8].text == "Increments current day at 23:59:59, if it is not Sunday.");
  CHECK(doc.items[9].text == "Resets current day to Monday after a clock tick at 23:59:59 on Sunday.");
  CHECK_FALSE(doc.description.empty());
}

TEST_CASE("verdict badges") {
  auto p = fixtures::load({"clock/clock_contract.sreq", "clock/clock_requirements.sreq"});
  const auto& rc = *p->find_requirement_class("CLOCK_REQUIREMENTS");
  std::map<std::string, Status> v;
  for (const auto& o : verify_requirement_class(rc, *p)) v[o.name] = o.status;
  const std::string text = generate(rc, *p, DocFormat::Text, v);
  CHECK(text.find("(REQ8) [FAILED] Keeps current hour") != std::string::npos);
  CHECK(text.find("(REQ1) [PROVED] Increments") != std::string::npos);
  CHECK(generate(rc, *p, DocFormat::Markdown, v).find("`FAILED`") != std::string::npos);
}

TEST_CASE("missing comments and empty classes") {
  auto p = fixtures::load_texts(
      {{"c.sreq", fixtures::read("clock/clock_contract.sreq")},
       {"r.sreq",
        "deferred class QUIET\nfeature\n  req (clock: CLOCK)\n    require\n      modify (clock)\n    do\n"
        "      clock.tick\n    end\nend\n\ndeferred class EMPTY\nfeature\nend\n"}});
  auto doc = build_document(*p->find_requirement_class("QUIET"), *p);
  REQUIRE(doc.items.size() == 1);
  CHECK(doc.items[0].text == "(no description)");
  CHECK(doc.warnings.size() == 1);
  auto empty = build_document(*p->find_requirement_class("EMPTY"), *p);
  CHECK(empty.items.empty());
  CHECK(generate(*p->find_requirement_class("EMPTY"), *p, DocFormat::Text) == "EMPTY\n\n");
}

TEST_CASE("property: every comment word survives in its item") {
  for (const auto& files : std::vector<std::vector<std::string>>{
           {"clock/clock_contract.sreq", "clock/clock_requirements.sreq"},
           {"increments/stage_e.sreq", "clock/clock_requirements.sreq", "clock/extended_clock_requirements.sreq"},
           {"train/train.sreq", "train/train_requirements.sreq"}}) {
    std::vector<std::filesystem::path> paths;
    for (const auto& f : files) paths.push_back(fixtures::path(f));
    auto p = load_sources(paths).project;
    REQUIRE(p);
    for (const auto& rc : p->requirement_classes) {
      auto doc = build_document(rc, *p);
      auto flat = flatten_requirements(*p, rc);
      for (std::size_t i = 0; i < flat.size(); ++i) {
        auto source = words(flat[i].comment);
        auto item = words(doc.items[i].text);
        REQUIRE(item.size() == source.size());
        for (std::size_t w = 0; w < source.size(); ++w) {
          CAPTURE(source[w]);
          if (w == 0) {
            // Only the initial letter may be capitalized.
            CHECK(item[w].substr(1) == source[w].substr(1));
          } else if (w + 1 == source.size()) {
            CHECK(item[w].rfind(source[w], 0) == 0);  // a closing period may be added
          } else {
            CHECK(item[w] == source[w]);
          }
        }
      }
    }
  }
}
