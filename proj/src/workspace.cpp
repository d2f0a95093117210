#include "sreq/workspace.hpp"

#include <fstream>
#include <sstream>

#include "sreq/parser.hpp"

namespace sreq {

Resolution load_texts(const std::vector<std::pair<std::string, std::string>>& units) {
  Project project;
  std::vector<Diagnostic> syntax;
  for (const auto& [name, text] : units) {
    try {
      add_unit(project, parse_source(text, name));
    } catch (const DiagnosticError& e) {
      syntax.push_back(e.diagnostic());
    }
  }
  if (!syntax.empty()) {
    Resolution r;
    r.diagnostics = std::move(syntax);
    return r;
  }
  return resolve(std::move(project));
}

Resolution load_sources(const std::vector<std::filesystem::path>& paths) {
  std::vector<std::pair<std::string, std::string>> units;
  for (const auto& p : paths) {
    std::ifstream in(p, std::ios::binary);
    if (!in) {
      throw DiagnosticError(Diagnostic{DiagnosticKind::IoError, "cannot read " + p.string(), {p.string(), 0, 0}});
    }
    std::ostringstream text;
    text << in.rdbuf();
    units.emplace_back(p.string(), text.str());
  }
  return load_texts(units);
}

}  // namespace sreq
