#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sreq/docgen.hpp"
#include "sreq/inference.hpp"
#include "sreq/source.hpp"
#include "sreq/trace.hpp"
#include "sreq/vcgen.hpp"

namespace sreq {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "0.1.0";

/// Machine-readable result of one CLI command. Timing lives in its own
/// member and is left out unless asked for, so reports of identical runs
/// are byte-identical.
struct Report {
  int schema_version = kSchemaVersion;
  std::string tool_version = kToolVersion;
  std::string command;
  nlohmann::json payload = nlohmann::json::object();
  std::optional<nlohmann::json> timing;

  bool operator==(const Report&) const = default;
};

void to_json(nlohmann::json& j, const Report& r);
/// Throws nlohmann::json::exception on a malformed report or a schema
/// version this build does not know.
void from_json(const nlohmann::json& j, Report& r);

std::string render_report(const Report& r);
Report parse_report(const std::string& text);

nlohmann::json diagnostic_json(const Diagnostic& d);
nlohmann::json outcome_json(const VerificationOutcome& o, bool timing = false);
nlohmann::json inference_json(const InferenceReport& r);
nlohmann::json matrix_json(const TraceMatrix& m);
nlohmann::json document_json(const RequirementsDocument& d);

}  // namespace sreq
