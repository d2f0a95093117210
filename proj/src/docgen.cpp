#include "sreq/docgen.hpp"

#include <cctype>
#include <sstream>

#include "sreq/resolve.hpp"

namespace sreq {

namespace {

// A requirement reads as a sentence: capital first letter, closing period.
std::string sentence(std::string text) {
  if (text.empty()) return text;
  text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
  char last = text.back();
  if (last != '.' && last != '!' && last != '?') text += '.';
  return text;
}

std::string header_of(const RequirementClass& rc, const Project& project) {
  const RequirementClass* c = &rc;
  for (std::size_t hops = 0; c && hops <= project.requirement_classes.size(); ++hops) {
    if (!c->header_comment.empty()) return c->header_comment;
    c = c->parent ? project.find_requirement_class(*c->parent) : nullptr;
  }
  return {};
}

}  // namespace

RequirementsDocument build_document(const RequirementClass& rc, const Project& project,
                                    const std::map<std::string, Status>& verdicts) {
  RequirementsDocument doc;
  doc.title = rc.name;
  doc.description = rc.description;
  doc.header = header_of(rc, project);
  std::size_t n = 0;
  for (const auto& d : flatten_requirements(project, rc)) {
    DocItem item;
    item.label = "REQ" + std::to_string(++n);
    item.driver = d.name;
    if (d.comment.empty()) {
      item.text = "(no description)";
      doc.warnings.push_back(d.owner + "." + d.name + " has no comment");
    } else {
      item.text = sentence(d.comment);
    }
    if (auto v = verdicts.find(d.name); v != verdicts.end()) item.verdict = v->second;
    doc.items.push_back(std::move(item));
  }
  return doc;
}

std::string render_document(const RequirementsDocument& doc, DocFormat format) {
  std::ostringstream out;
  if (format == DocFormat::Markdown) {
    out << "# " << doc.title << "\n\n";
    if (!doc.description.empty()) out << doc.description << "\n\n";
    if (!doc.header.empty()) out << doc.header << "\n\n";
    for (const auto& item : doc.items) {
      out << "- **(" << item.label << ")** ";
      if (item.verdict) out << "`" << to_string(*item.verdict) << "` ";
      out << item.text << " <sub>" << item.driver << "</sub>\n";
    }
  } else {
    out << doc.title << "\n";
    if (!doc.description.empty()) out << doc.description << "\n";
    out << "\n";
    if (!doc.header.empty()) out << doc.header << "\n";
    for (const auto& item : doc.items) {
      out << "  (" << item.label << ") ";
      if (item.verdict) out << "[" << to_string(*item.verdict) << "] ";
      out << item.text << "\n";
    }
  }
  return out.str();
}

}  // namespace sreq
