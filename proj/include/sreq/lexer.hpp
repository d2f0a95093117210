#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "sreq/source.hpp"

namespace sreq {

enum class TokenKind {
  Identifier,
  Integer,
  Comment,
  // keywords
  KwClass,
  KwDeferred,
  KwFrozen,
  KwFeature,
  KwRequire,
  KwDo,
  KwEnsure,
  KwEnd,
  KwInherit,
  KwNote,
  KwOld,
  KwImplies,
  KwAnd,
  KwOr,
  KwNot,
  KwIf,
  KwThen,
  KwElseif,
  KwElse,
  KwCheck,
  KwModify,
  KwResult,
  KwCurrent,
  KwTrue,
  KwFalse,
  // operators and punctuation
  Assign,     // :=
  Equal,      // =
  NotEqual,   // /=
  Less,       // <
  LessEq,     // <=
  Greater,    // >
  GreaterEq,  // >=
  Plus,
  Minus,
  Dot,
  LParen,
  RParen,
  Colon,
  Semicolon,
  Comma,
  EndOfFile,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string lexeme;
  int line = 1;
  int column = 1;
  /// First token on its source line.
  bool line_start = false;
};

/// Splits contract-language text into tokens. Comments (`--` to end of line)
/// are kept as `Comment` tokens whose lexeme excludes the leading hyphens.
/// The result never contains `EndOfFile`; throws DiagnosticError on an
/// illegal character.
std::vector<Token> lex(std::string_view text, const std::string& file = {});

}  // namespace sreq
