#pragma once

#include <filesystem>
#include <vector>

#include "sreq/resolve.hpp"

namespace sreq {

/// Reads, parses and resolves a set of `.sreq` files. Syntax errors become
/// diagnostics (the first per file); an unreadable file throws
/// DiagnosticError with kind IoError.
Resolution load_sources(const std::vector<std::filesystem::path>& paths);

/// Same, from in-memory (name, text) pairs.
Resolution load_texts(const std::vector<std::pair<std::string, std::string>>& units);

}  // namespace sreq
