#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace ruleshell {

/// 1-based position of a token in the source text. Columns count code points.
struct Span
{
  int line = 1;
  int column = 1;

  friend auto operator<=>(const Span &, const Span &) = default;
};

enum class Severity { error, warning };

/// A positioned message from the lexer, parser, or linter.
///
/// Codes are stable tags: E0xx come from parsing, E1xx/W2xx from lint.
struct Diagnostic
{
  Severity severity = Severity::error;
  std::string code;
  std::string message;
  Span span;
  /// Parameter or section the message concerns, when there is one.
  std::optional<std::string> subject;

  bool is_error() const { return severity == Severity::error; }
};

Diagnostic make_error(std::string code, std::string message, Span span);
Diagnostic make_warning(std::string code, std::string message, Span span);

/// Renders `file:line:col: CODE message`.
std::string render(const Diagnostic & d, std::string_view file);

bool has_errors(const std::vector<Diagnostic> & diagnostics);

}  // namespace ruleshell
