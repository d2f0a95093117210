#pragma once

#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <stdexcept>
#include <string>

#include "sreq/workspace.hpp"

namespace fixtures {

inline std::filesystem::path path(const std::string& relative) { return std::filesystem::path(SREQ_FIXTURES) / relative; }

inline std::string read(const std::string& relative) {
  std::ifstream f(path(relative), std::ios::binary);
  if (!f) throw std::runtime_error("missing fixture " + relative);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

/// Loads fixture files; throws when they do not resolve cleanly.
inline std::shared_ptr<const sreq::Project> load(std::initializer_list<std::string> relative) {
  std::vector<std::filesystem::path> paths;
  for (const auto& r : relative) paths.push_back(path(r));
  sreq::Resolution r = sreq::load_sources(paths);
  if (!r.ok()) {
    std::string msg;
    for (const auto& d : r.diagnostics) msg += d.str() + "\n";
    throw std::runtime_error(msg);
  }
  return r.project;
}

/// Same, from (name, text) pairs.
inline std::shared_ptr<const sreq::Project> load_texts(const std::vector<std::pair<std::string, std::string>>& units) {
  sreq::Resolution r = sreq::load_texts(units);
  if (!r.ok()) {
    std::string msg;
    for (const auto& d : r.diagnostics) msg += d.str() + "\n";
    throw std::runtime_error(msg);
  }
  return r.project;
}

inline std::string replace(std::string text, const std::string& from, const std::string& to) {
  auto at = text.find(from);
  if (at == std::string::npos) throw std::runtime_error("fixture edit did not apply: " + from);
  return text.replace(at, from.size(), to);
}

}  // namespace fixtures
