#pragma once

#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sreq/lexer.hpp"
#include "sreq/model.hpp"

namespace sreq {

using ParsedClass = std::variant<ContractedClass, RequirementClass>;

struct ParsedUnit {
  std::vector<ContractedClass> classes;
  std::vector<RequirementClass> requirement_classes;
};

/// Parses exactly one class declaration from a token sequence (as returned
/// by lex(), comments included). A deferred class becomes a RequirementClass
/// whose routines are specification drivers.
ParsedClass parse_class(std::span<const Token> tokens, const std::string& file = {});

/// Parses every class in a `.sreq` unit. Stops at the first error.
ParsedUnit parse_source(std::string_view text, const std::string& file = {});

/// Appends the classes of a unit to a project and records their locations.
void add_unit(Project& project, ParsedUnit unit);

/// Strips comment hyphens and collapses the lines into one single-spaced line.
std::string normalize_comment(const std::vector<std::string>& lines);

/// The natural-language text of a driver. A leading header ending in ':'
/// ("A clock tick:") is joined with the driver's own comment.
std::string extract_comment(const SpecificationDriver& driver);

/// Source rendering; parse(print(x)) is structurally identical to x.
std::string print_expr(const Expr& expr);
std::string print_class(const ContractedClass& cls);
std::string print_class(const RequirementClass& cls);
std::string print_project(const Project& project);

}  // namespace sreq
