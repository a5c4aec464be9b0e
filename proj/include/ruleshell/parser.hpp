#pragma once

#include <string_view>
#include <variant>
#include <vector>

#include "ruleshell/diagnostic.hpp"
#include "ruleshell/model.hpp"

namespace ruleshell {

/// The knowledge base holds every item that parsed; if `diagnostics`
/// contains an error the KB must not be consulted.
struct ParseResult
{
  KnowledgeBase kb;
  std::vector<Diagnostic> diagnostics;  ///< sorted by position

  bool ok() const { return !has_errors(diagnostics); }
};

/// Parses a `.kb` source. After a syntax error the parser skips to the next
/// `title`, `parameter` or `section` keyword and carries on.
ParseResult parse_kb(std::string_view source);

/// Parses a standalone condition; the whole input must be consumed. On
/// failure returns the first diagnostic.
std::variant<ConditionPtr, Diagnostic> parse_condition(std::string_view source);

/// Nesting limit for parenthesised conditions.
inline constexpr int kMaxConditionNesting = 256;

}  // namespace ruleshell
