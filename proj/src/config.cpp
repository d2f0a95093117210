#include "sreq/config.hpp"

#include <glob.h>

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

namespace sreq {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T number(const std::string& key, const std::string& value, int line) {
  T out{};
  auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || end != value.data() + value.size()) {
    throw ConfigError("line " + std::to_string(line) + ": " + key + " expects a non-negative integer, got '" +
                      value + "'");
  }
  return out;
}

}  // namespace

ProjectConfig parse_config(const std::string& text, const std::filesystem::path& base) {
  ProjectConfig cfg;
  cfg.base = base;
  std::istringstream in(text);
  std::string raw;
  for (int line = 1; std::getline(in, raw); ++line) {
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string content = trim(raw);
    if (content.empty()) continue;
    auto eq = content.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line) + ": expected key = value");
    const std::string key = trim(content.substr(0, eq));
    const std::string value = trim(content.substr(eq + 1));
    if (key == "source" || key == "sources") {
      std::istringstream words(value);
      for (std::string w; words >> w;) cfg.sources.push_back(w);
    } else if (key == "requirement_class") {
      cfg.requirement_class = value;
    } else if (key == "seed") {
      cfg.seed = number<std::uint64_t>(key, value, line);
    } else if (key == "jobs") {
      cfg.jobs = number<unsigned>(key, value, line);
    } else if (key == "report") {
      cfg.report = value;
    } else {
      throw ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'");
    }
  }
  if (cfg.sources.empty()) throw ConfigError("no source files configured");
  return cfg;
}

std::vector<std::filesystem::path> expand_sources(const ProjectConfig& config) {
  std::vector<std::filesystem::path> out;
  std::set<std::filesystem::path> seen;
  auto add = [&](const std::filesystem::path& p) {
    if (seen.insert(p.lexically_normal()).second) out.push_back(p);
  };
  for (const auto& pattern : config.sources) {
    const std::filesystem::path full = config.base / pattern;  // an absolute pattern replaces the base
    glob_t g{};
    if (::glob(full.string().c_str(), 0, nullptr, &g) == 0) {
      std::vector<std::string> hits(g.gl_pathv, g.gl_pathv + g.gl_pathc);
      std::sort(hits.begin(), hits.end());
      for (const auto& h : hits) add(h);
    } else {
      add(full);
    }
    ::globfree(&g);
  }
  return out;
}

}  // namespace sreq
