#include "ruleshell/lexer.hpp"

#include <array>
#include <charconv>
#include <cmath>

namespace ruleshell {

namespace {

constexpr char32_t kReplacement = 0xFFFD;

constexpr std::array<std::string_view, 21> kKeywords = {
  "title", "parameter", "question", "values", "section", "if",      "always",
  "do",    "advice",    "goto",     "set",    "stop",    "and",     "or",
  "not",   "true",      "false",    "boolean", "text",   "number",  "category",
};

bool is_alpha(char32_t c) { return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z'); }
bool is_digit(char32_t c) { return c >= '0' && c <= '9'; }
bool is_ident_char(char32_t c) { return is_alpha(c) || is_digit(c) || c == '_'; }
bool is_space(char32_t c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

class Lexer
{
public:
  explicit Lexer(std::u32string text) : text_(std::move(text)) {}

  LexResult run()
  {
    if (!text_.empty() && text_[0] == 0xFEFF) {
      advance();
    }
    while (!at_end()) {
      char32_t c = peek();
      if (is_space(c)) {
        advance();
      } else if (c == '#') {
        while (!at_end() && peek() != '\n') {
          advance();
        }
      } else if (is_alpha(c)) {
        lex_word();
      } else if (is_digit(c) || (c == '-' && is_digit(peek(1)))) {
        lex_number();
      } else if (c == '"') {
        lex_string();
      } else if (!lex_punct()) {
        lex_illegal();
      }
    }
    result_.end = here();
    return std::move(result_);
  }

private:
  bool at_end() const { return pos_ >= text_.size(); }
  char32_t peek(std::size_t ahead = 0) const
  {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : U'\0';
  }

  char32_t advance()
  {
    char32_t c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      column_ = 1;
    } else {
      ++column_;
    }
    return c;
  }

  Span here() const { return Span{line_, column_}; }

  void push(TokenKind kind, std::string lexeme, Span span)
  {
    result_.tokens.push_back(Token{kind, std::move(lexeme), span});
  }

  void error(std::string code, std::string message, Span span)
  {
    result_.diagnostics.push_back(make_error(std::move(code), std::move(message), span));
  }

  void lex_word()
  {
    Span start = here();
    std::string word;
    while (!at_end() && is_ident_char(peek())) {
      word.push_back(static_cast<char>(advance()));
    }
    TokenKind kind = is_keyword(word) ? TokenKind::keyword : TokenKind::identifier;
    push(kind, std::move(word), start);
  }

  void lex_number()
  {
    Span start = here();
    std::string spelling;
    if (peek() == '-') {
      spelling.push_back(static_cast<char>(advance()));
    }
    while (is_digit(peek())) {
      spelling.push_back(static_cast<char>(advance()));
    }
    if (peek() == '.' && is_digit(peek(1))) {
      spelling.push_back(static_cast<char>(advance()));
      while (is_digit(peek())) {
        spelling.push_back(static_cast<char>(advance()));
      }
    }
    if ((peek() == 'e' || peek() == 'E') &&
        (is_digit(peek(1)) || ((peek(1) == '+' || peek(1) == '-') && is_digit(peek(2))))) {
      spelling.push_back(static_cast<char>(advance()));
      if (peek() == '+' || peek() == '-') {
        spelling.push_back(static_cast<char>(advance()));
      }
      while (is_digit(peek())) {
        spelling.push_back(static_cast<char>(advance()));
      }
    }
    double value = 0;
    if (!parse_number(spelling, value)) {
      error("E011", "number literal '" + spelling + "' is out of range", start);
      return;
    }
    push(TokenKind::number, std::move(spelling), start);
  }

  void lex_string()
  {
    Span start = here();
    advance();  // opening quote
    std::string value;
    while (true) {
      if (at_end() || peek() == '\n') {
        error("E010", "unterminated string", start);
        return;
      }
      Span char_span = here();
      char32_t c = advance();
      if (c == '"') {
        break;
      }
      if (c != '\\') {
        append_utf8(value, c);
        continue;
      }
      if (at_end() || peek() == '\n') {
        error("E010", "unterminated string", start);
        return;
      }
      char32_t e = advance();
      switch (e) {
        case '"': value.push_back('"'); break;
        case '\\': value.push_back('\\'); break;
        case 'n': value.push_back('\n'); break;
        default:
          error("E011", "invalid escape sequence in string", char_span);
          append_utf8(value, e);
          break;
      }
    }
    push(TokenKind::string, std::move(value), start);
  }

  bool lex_punct()
  {
    static constexpr std::array<std::string_view, 13> kPunct = {
      ":=", "<>", "<=", ">=", ":", ",", "{", "}", "(", ")", "=", "<", ">",
    };
    for (std::string_view p : kPunct) {
      bool match = true;
      for (std::size_t i = 0; i < p.size(); ++i) {
        if (peek(i) != static_cast<char32_t>(p[i])) {
          match = false;
          break;
        }
      }
      if (match) {
        Span start = here();
        for (std::size_t i = 0; i < p.size(); ++i) {
          advance();
        }
        push(TokenKind::punctuation, std::string(p), start);
        return true;
      }
    }
    return false;
  }

  // A run of characters that cannot start any token yields one diagnostic.
  void lex_illegal()
  {
    Span start = here();
    std::string run;
    auto starts_token = [this](char32_t c) {
      return is_space(c) || is_alpha(c) || is_digit(c) || c == '#' || c == '"' ||
             std::u32string_view(U":,{}()=<>").find(c) != std::u32string_view::npos ||
             (c == '-' && is_digit(peek(1)));
    };
    do {
      append_utf8(run, advance());
    } while (!at_end() && !starts_token(peek()));
    error("E011", "illegal character" + std::string(run.size() > 1 ? "s" : "") + " '" + run + "'",
          start);
  }

  std::u32string text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  LexResult result_;
};

}  // namespace

bool is_keyword(std::string_view word)
{
  for (std::string_view k : kKeywords) {
    if (k == word) {
      return true;
    }
  }
  return false;
}

bool is_identifier(std::string_view word)
{
  if (word.empty() || !is_alpha(static_cast<unsigned char>(word[0]))) {
    return false;
  }
  for (char c : word) {
    if (!is_ident_char(static_cast<unsigned char>(c))) {
      return false;
    }
  }
  return !is_keyword(word);
}

LexResult tokenize(std::string_view source)
{
  return Lexer(decode_utf8(source)).run();
}

std::u32string decode_utf8(std::string_view bytes)
{
  std::u32string out;
  out.reserve(bytes.size());
  std::size_t i = 0;
  const std::size_t n = bytes.size();
  auto byte = [&](std::size_t k) { return static_cast<unsigned char>(bytes[k]); };
  while (i < n) {
    unsigned char b0 = byte(i);
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    }
    int len = 0;
    char32_t cp = 0;
    char32_t min = 0;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
      min = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
      min = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
      min = 0x10000;
    } else {
      out.push_back(kReplacement);
      ++i;
      continue;
    }
    int consumed = 1;
    bool ok = true;
    for (; consumed < len; ++consumed) {
      if (i + consumed >= n || (byte(i + consumed) & 0xC0) != 0x80) {
        ok = false;
        break;
      }
      cp = (cp << 6) | (byte(i + consumed) & 0x3F);
    }
    if (ok && (cp < min || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF))) {
      ok = false;
    }
    out.push_back(ok ? cp : kReplacement);
    i += consumed;
  }
  return out;
}

void append_utf8(std::string & out, char32_t cp)
{
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool parse_number(std::string_view text, double & out)
{
  std::size_t i = 0;
  auto digits = [&] {
    std::size_t start = i;
    while (i < text.size() && text[i] >= '0' && text[i] <= '9') {
      ++i;
    }
    return i > start;
  };
  if (i < text.size() && text[i] == '-') {
    ++i;
  }
  if (!digits()) {
    return false;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    if (!digits()) {
      return false;
    }
  }
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      ++i;
    }
    if (!digits()) {
      return false;
    }
  }
  if (i != text.size()) {
    return false;
  }
  double value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return false;
  }
  out = value;
  return true;
}

}  // namespace ruleshell
