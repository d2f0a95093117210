#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sreq/model.hpp"
#include "sreq/vcgen.hpp"

namespace sreq {

enum class DocFormat { Text, Markdown };

struct DocItem {
  std::string label;  // REQ1, REQ2, ... by position
  std::string driver;
  std::string text;
  std::optional<Status> verdict;
};

struct RequirementsDocument {
  std::string title;
  std::string description;
  std::string header;
  std::vector<DocItem> items;
  std::vector<std::string> warnings;
};

/// One item per flattened driver. Verdicts are keyed by driver name.
RequirementsDocument build_document(const RequirementClass& rc, const Project& project,
                                    const std::map<std::string, Status>& verdicts = {});

std::string render_document(const RequirementsDocument& doc, DocFormat format);

inline std::string generate(const RequirementClass& rc, const Project& project, DocFormat format,
                            const std::map<std::string, Status>& verdicts = {}) {
  return render_document(build_document(rc, project, verdicts), format);
}

}  // namespace sreq
