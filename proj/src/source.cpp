#include "sreq/source.hpp"

#include <sstream>

namespace sreq {

std::string SourceLocation::str() const {
  std::ostringstream out;
  out << (file.empty() ? "<input>" : file) << ':' << line << ':' << column;
  return out.str();
}

std::string_view to_string(DiagnosticKind kind) {
  switch (kind) {
    case DiagnosticKind::IllegalCharacter: return "IllegalCharacter";
    case DiagnosticKind::SyntaxError: return "SyntaxError";
    case DiagnosticKind::UnknownName: return "UnknownName";
    case DiagnosticKind::DuplicateName: return "DuplicateName";
    case DiagnosticKind::TypeMismatch: return "TypeMismatch";
    case DiagnosticKind::NonSelfContainedDriver: return "NonSelfContainedDriver";
    case DiagnosticKind::MisplacedConstruct: return "MisplacedConstruct";
    case DiagnosticKind::InheritanceCycle: return "InheritanceCycle";
    case DiagnosticKind::DuplicateDriverName: return "DuplicateDriverName";
    case DiagnosticKind::IoError: return "IoError";
  }
  return "Unknown";
}

std::string Diagnostic::str() const {
  return location.str() + ": " + std::string(to_string(kind)) + ": " + message;
}

DiagnosticError::DiagnosticError(Diagnostic diagnostic)
    : std::runtime_error(diagnostic.str()), diagnostic_(std::move(diagnostic)) {}

}  // namespace sreq
