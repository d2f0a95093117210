#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sreq {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Flat `key = value` file; `#` starts a comment. `source` may repeat and
/// takes whitespace-separated globs, relative to the config's directory.
struct ProjectConfig {
  std::vector<std::string> sources;
  std::string requirement_class;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> jobs;
  std::string report;
  std::filesystem::path base;
};

/// Throws ConfigError on unknown keys, malformed lines, bad numbers or a
/// config without sources.
ProjectConfig parse_config(const std::string& text, const std::filesystem::path& base = {});

/// Expands the source globs in order, dropping duplicates. A glob matching
/// nothing is kept as a literal path so the caller reports it as missing.
std::vector<std::filesystem::path> expand_sources(const ProjectConfig& config);

}  // namespace sreq
