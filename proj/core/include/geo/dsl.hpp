#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "geo/construction.hpp"

namespace geo::dsl {

enum class ErrorKind {
  Syntax,
  UnknownToolset,
  UnknownTool,
  Arity,
  UndefinedIdentifier,
  TypeMismatch,
  DuplicateId,
  BadParam,
  Macro,
};

std::string_view to_string(ErrorKind k);

/// Diagnostic anchored at a 1-based line and column of the source.
struct ParseError {
  size_t line = 0;
  size_t column = 0;
  std::string expected;
  std::string found;
  std::string message;
  ErrorKind kind = ErrorKind::Syntax;
};

/// "line:col: message"
std::string format(const ParseError& e);

struct ParseResult {
  std::optional<cons::Figure> figure;
  std::vector<ParseError> errors;
  bool ok() const { return figure.has_value(); }
};

/// Parses a `.geo` source. Never throws; all diagnostics are collected in
/// one pass with recovery at line granularity.
ParseResult parse(std::string_view src);

/// Parses or throws MalformedFigure carrying the first diagnostic.
cons::Figure parse_or_throw(std::string_view src);

/// Header, then macro definitions in definition order, then steps.
/// Numbers are written with 17 significant digits.
std::string serialize(const cons::Figure& fig);

/// Folds a numeric literal such as "-sqrt(3)/2" or "2*pi".
std::optional<double> parse_number(std::string_view text);

}  // namespace geo::dsl
