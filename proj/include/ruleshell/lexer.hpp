#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ruleshell/diagnostic.hpp"

namespace ruleshell {

enum class TokenKind { keyword, identifier, string, number, punctuation, end_of_input };

struct Token
{
  TokenKind kind = TokenKind::end_of_input;
  /// Source spelling for keywords, identifiers, numbers and punctuation;
  /// the decoded (unescaped) value for strings.
  std::string lexeme;
  Span span;

  bool is(TokenKind k, std::string_view text) const { return kind == k && lexeme == text; }
  bool is_keyword(std::string_view text) const { return is(TokenKind::keyword, text); }
  bool is_punct(std::string_view text) const { return is(TokenKind::punctuation, text); }
};

struct LexResult
{
  /// Never includes a trailing end_of_input token.
  std::vector<Token> tokens;
  std::vector<Diagnostic> diagnostics;
  Span end;  ///< position just past the last character
};

bool is_keyword(std::string_view word);
bool is_identifier(std::string_view word);

/// Splits `source` into tokens. Invalid UTF-8 is replaced by U+FFFD before
/// lexing. Lexing continues after errors.
LexResult tokenize(std::string_view source);

/// Decodes UTF-8 into code points, replacing each invalid sequence with U+FFFD.
std::u32string decode_utf8(std::string_view bytes);
void append_utf8(std::string & out, char32_t cp);

/// Full-match parse of a number literal (`-?digits[.digits][e[+-]digits]`).
/// Returns false if the text is not a number or is not finite.
bool parse_number(std::string_view text, double & out);

}  // namespace ruleshell
