#include "sreq/lexer.hpp"

#include <cctype>
#include <limits>
#include <unordered_map>

namespace sreq {

namespace {

const std::unordered_map<std::string_view, TokenKind>& keywords() {
  static const std::unordered_map<std::string_view, TokenKind> table = {
      {"class", TokenKind::KwClass},     {"deferred", TokenKind::KwDeferred},
      {"frozen", TokenKind::KwFrozen},   {"feature", TokenKind::KwFeature},
      {"require", TokenKind::KwRequire}, {"do", TokenKind::KwDo},
      {"ensure", TokenKind::KwEnsure},   {"end", TokenKind::KwEnd},
      {"inherit", TokenKind::KwInherit}, {"note", TokenKind::KwNote},
      {"old", TokenKind::KwOld},         {"implies", TokenKind::KwImplies},
      {"and", TokenKind::KwAnd},         {"or", TokenKind::KwOr},
      {"not", TokenKind::KwNot},         {"if", TokenKind::KwIf},
      {"then", TokenKind::KwThen},       {"elseif", TokenKind::KwElseif},
      {"else", TokenKind::KwElse},       {"check", TokenKind::KwCheck},
      {"modify", TokenKind::KwModify},   {"Result", TokenKind::KwResult},
      {"Current", TokenKind::KwCurrent}, {"true", TokenKind::KwTrue},
      {"True", TokenKind::KwTrue},       {"false", TokenKind::KwFalse},
      {"False", TokenKind::KwFalse},
  };
  return table;
}

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

}  // namespace

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Identifier: return "identifier";
    case TokenKind::Integer: return "integer";
    case TokenKind::Comment: return "comment";
    case TokenKind::KwClass: return "'class'";
    case TokenKind::KwDeferred: return "'deferred'";
    case TokenKind::KwFrozen: return "'frozen'";
    case TokenKind::KwFeature: return "'feature'";
    case TokenKind::KwRequire: return "'require'";
    case TokenKind::KwDo: return "'do'";
    case TokenKind::KwEnsure: return "'ensure'";
    case TokenKind::KwEnd: return "'end'";
    case TokenKind::KwInherit: return "'inherit'";
    case TokenKind::KwNote: return "'note'";
    case TokenKind::KwOld: return "'old'";
    case TokenKind::KwImplies: return "'implies'";
    case TokenKind::KwAnd: return "'and'";
    case TokenKind::KwOr: return "'or'";
    case TokenKind::KwNot: return "'not'";
    case TokenKind::KwIf: return "'if'";
    case TokenKind::KwThen: return "'then'";
    case TokenKind::KwElseif: return "'elseif'";
    case TokenKind::KwElse: return "'else'";
    case TokenKind::KwCheck: return "'check'";
    case TokenKind::KwModify: return "'modify'";
    case TokenKind::KwResult: return "'Result'";
    case TokenKind::KwCurrent: return "'Current'";
    case TokenKind::KwTrue: return "'True'";
    case TokenKind::KwFalse: return "'False'";
    case TokenKind::Assign: return "':='";
    case TokenKind::Equal: return "'='";
    case TokenKind::NotEqual: return "'/='";
    case TokenKind::Less: return "'<'";
    case TokenKind::LessEq: return "'<='";
    case TokenKind::Greater: return "'>'";
    case TokenKind::GreaterEq: return "'>='";
    case TokenKind::Plus: return "'+'";
    case TokenKind::Minus: return "'-'";
    case TokenKind::Dot: return "'.'";
    case TokenKind::LParen: return "'('";
    case TokenKind::RParen: return "')'";
    case TokenKind::Colon: return "':'";
    case TokenKind::Semicolon: return "';'";
    case TokenKind::Comma: return "','";
    case TokenKind::EndOfFile: return "end of file";
  }
  return "?";
}

std::vector<Token> lex(std::string_view text, const std::string& file) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  int line = 1;
  int column = 1;
  int last_token_line = 0;

  auto push = [&](TokenKind kind, std::string lexeme, int tline, int tcol) {
    tokens.push_back(Token{kind, std::move(lexeme), tline, tcol, tline != last_token_line});
    last_token_line = tline;
  };
  auto fail = [&](const std::string& message) {
    throw DiagnosticError(Diagnostic{DiagnosticKind::IllegalCharacter, message,
                                     SourceLocation{file, line, column}});
  };

  while (pos < text.size()) {
    const char c = text[pos];
    if (c == '\n') {
      ++line;
      column = 1;
      ++pos;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
      ++pos;
      ++column;
      continue;
    }
    const int tline = line;
    const int tcol = column;

    if (c == '-' && pos + 1 < text.size() && text[pos + 1] == '-') {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      std::string body(text.substr(pos + 2, end - pos - 2));
      if (!body.empty() && body.back() == '\r') body.pop_back();
      // Comments may carry arbitrary UTF-8; column tracking counts bytes.
      column += static_cast<int>(end - pos);
      pos = end;
      push(TokenKind::Comment, std::move(body), tline, tcol);
      continue;
    }
    if (is_ident_start(c)) {
      std::size_t end = pos;
      while (end < text.size() && is_ident_char(text[end])) ++end;
      std::string word(text.substr(pos, end - pos));
      column += static_cast<int>(end - pos);
      pos = end;
      auto it = keywords().find(word);
      push(it == keywords().end() ? TokenKind::Identifier : it->second, std::move(word), tline,
           tcol);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      std::size_t end = pos;
      while (end < text.size() && std::isdigit(static_cast<unsigned char>(text[end])) != 0) ++end;
      std::string digits(text.substr(pos, end - pos));
      if (digits.size() > 18) fail("integer literal out of range: " + digits);
      column += static_cast<int>(end - pos);
      pos = end;
      push(TokenKind::Integer, std::move(digits), tline, tcol);
      continue;
    }

    auto next = [&](char expected) { return pos + 1 < text.size() && text[pos + 1] == expected; };
    TokenKind kind = TokenKind::EndOfFile;
    std::size_t width = 1;
    switch (c) {
      case ':':
        if (next('=')) {
          kind = TokenKind::Assign;
          width = 2;
        } else {
          kind = TokenKind::Colon;
        }
        break;
      case '=': kind = TokenKind::Equal; break;
      case '/':
        if (!next('=')) fail("illegal character '/'");
        kind = TokenKind::NotEqual;
        width = 2;
        break;
      case '<':
        if (next('=')) {
          kind = TokenKind::LessEq;
          width = 2;
        } else {
          kind = TokenKind::Less;
        }
        break;
      case '>':
        if (next('=')) {
          kind = TokenKind::GreaterEq;
          width = 2;
        } else {
          kind = TokenKind::Greater;
        }
        break;
      case '+': kind = TokenKind::Plus; break;
      case '-': kind = TokenKind::Minus; break;
      case '.': kind = TokenKind::Dot; break;
      case '(': kind = TokenKind::LParen; break;
      case ')': kind = TokenKind::RParen; break;
      case ';': kind = TokenKind::Semicolon; break;
      case ',': kind = TokenKind::Comma; break;
      default: {
        std::string shown = (static_cast<unsigned char>(c) < 0x80) ? std::string(1, c)
                                                                    : std::string("non-ASCII byte");
        fail("illegal character '" + shown + "'");
      }
    }
    push(kind, std::string(text.substr(pos, width)), tline, tcol);
    pos += width;
    column += static_cast<int>(width);
  }
  return tokens;
}

}  // namespace sreq
