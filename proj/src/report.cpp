#include "sreq/report.hpp"

namespace sreq {

using nlohmann::json;

void to_json(json& j, const Report& r) {
  j = json{{"schema_version", r.schema_version},
           {"tool_version", r.tool_version},
           {"command", r.command},
           {"payload", r.payload}};
  if (r.timing) j["timing"] = *r.timing;
}

void from_json(const json& j, Report& r) {
  j.at("schema_version").get_to(r.schema_version);
  if (r.schema_version != kSchemaVersion) {
    throw json::other_error::create(501, "unsupported schema_version " + std::to_string(r.schema_version), &j);
  }
  j.at("tool_version").get_to(r.tool_version);
  j.at("command").get_to(r.command);
  r.payload = j.at("payload");
  if (auto t = j.find("timing"); t != j.end()) {
    r.timing = *t;
  } else {
    r.timing.reset();
  }
}

std::string render_report(const Report& r) { return json(r).dump(2) + "\n"; }

Report parse_report(const std::string& text) { return json::parse(text).get<Report>(); }

json diagnostic_json(const Diagnostic& d) {
  return json{{"kind", std::string(to_string(d.kind))},
              {"message", d.message},
              {"file", d.location.file},
              {"line", d.location.line},
              {"column", d.location.column}};
}

json outcome_json(const VerificationOutcome& o, bool timing) {
  json j{{"owner", o.owner},
         {"name", o.name},
         {"comment", o.comment},
         {"status", to_string(o.status)},
         {"detail", o.detail},
         {"assumptions", o.assumptions},
         {"notes", o.notes}};
  if (o.counterexample) {
    json model = json::object();
    for (const auto& [sym, value] : *o.counterexample) model[sym.render()] = value;
    j["counterexample"] = model;
  } else {
    j["counterexample"] = nullptr;
  }
  if (timing) j["elapsed_ms"] = o.elapsed_ms;
  return j;
}

json inference_json(const InferenceReport& r) {
  json assertions = json::array();
  for (const auto& a : r.assertions) {
    assertions.push_back({{"owner", a.owner}, {"driver", a.driver}, {"assertion", a.rendering}});
  }
  json failures = json::array();
  for (const auto& f : r.failures) {
    failures.push_back(
        {{"owner", f.owner}, {"driver", f.driver}, {"kind", to_string(f.kind)}, {"reasons", f.reasons}});
  }
  return json{{"target", r.target}, {"assertions", assertions}, {"failures", failures}, {"notes", r.notes}};
}

json matrix_json(const TraceMatrix& m) {
  json down = json::object();
  for (const auto& [d, fs] : m.down) {
    json row = json::array();
    for (const auto& f : fs) row.push_back(f.str());
    down[d.str()] = row;
  }
  json up = json::object();
  for (const auto& [f, ds] : m.up) {
    json row = json::array();
    for (const auto& d : ds) row.push_back(d.str());
    up[f.str()] = row;
  }
  return json{{"down", down}, {"up", up}};
}

json document_json(const RequirementsDocument& d) {
  json items = json::array();
  for (const auto& it : d.items) {
    json item{{"label", it.label}, {"driver", it.driver}, {"text", it.text}};
    item["verdict"] = it.verdict ? json(to_string(*it.verdict)) : json(nullptr);
    items.push_back(item);
  }
  return json{{"title", d.title},
              {"description", d.description},
              {"header", d.header},
              {"items", items},
              {"warnings", d.warnings}};
}

}  // namespace sreq
