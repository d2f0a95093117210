#pragma once

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sreq {

struct SourceLocation {
  std::string file;
  int line = 0;
  int column = 0;

  auto operator<=>(const SourceLocation&) const = default;
  std::string str() const;
};

enum class DiagnosticKind {
  IllegalCharacter,
  SyntaxError,
  UnknownName,
  DuplicateName,
  TypeMismatch,
  NonSelfContainedDriver,
  MisplacedConstruct,
  InheritanceCycle,
  DuplicateDriverName,
  IoError,
};

std::string_view to_string(DiagnosticKind kind);

struct Diagnostic {
  DiagnosticKind kind;
  std::string message;
  SourceLocation location;

  bool operator==(const Diagnostic&) const = default;
  /// `file:line:col: Kind: message`
  std::string str() const;
};

/// Thrown by the lexer and parser; carries the first diagnostic of a unit.
class DiagnosticError : public std::runtime_error {
 public:
  explicit DiagnosticError(Diagnostic diagnostic);
  const Diagnostic& diagnostic() const noexcept { return diagnostic_; }

 private:
  Diagnostic diagnostic_;
};

}  // namespace sreq
