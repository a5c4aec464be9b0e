#include "ruleshell/parser.hpp"

#include <algorithm>
#include <set>

#include "ruleshell/lexer.hpp"

namespace ruleshell {

namespace {

struct SyntaxError
{
  Diagnostic diagnostic;
};

std::string describe(const Token & t)
{
  switch (t.kind) {
    case TokenKind::end_of_input: return "end of input";
    case TokenKind::string: return "string";
    case TokenKind::number: return "number '" + t.lexeme + "'";
    case TokenKind::keyword: return "keyword '" + t.lexeme + "'";
    case TokenKind::identifier: return "identifier '" + t.lexeme + "'";
    case TokenKind::punctuation: return "'" + t.lexeme + "'";
  }
  return "token";
}

bool is_item_start(const Token & t)
{
  return t.is_keyword("title") || t.is_keyword("parameter") || t.is_keyword("section");
}

class Parser
{
public:
  explicit Parser(LexResult lexed) : tokens_(std::move(lexed.tokens))
  {
    tokens_.push_back(Token{TokenKind::end_of_input, "", lexed.end});
  }

  ParseResult parse_kb()
  {
    KnowledgeBase::Builder builder;
    while (!at_end()) {
      if (!is_item_start(peek())) {
        diagnostics_.push_back(
          make_error("E001", "expected 'title', 'parameter' or 'section', found " + describe(peek()),
                     peek().span));
        synchronize();
        continue;
      }
      try {
        parse_item(builder);
      } catch (const SyntaxError & e) {
        diagnostics_.push_back(e.diagnostic);
        synchronize();
      }
    }
    return ParseResult{std::move(builder).build(), std::move(diagnostics_)};
  }

  ConditionPtr parse_whole_condition()
  {
    ConditionPtr c = parse_condition();
    if (!at_end()) {
      fail("expected end of condition, found " + describe(peek()));
    }
    return c;
  }

private:
  const Token & peek() const { return tokens_[pos_]; }
  bool at_end() const { return peek().kind == TokenKind::end_of_input; }

  const Token & advance()
  {
    const Token & t = tokens_[pos_];
    if (!at_end()) {
      ++pos_;
    }
    return t;
  }

  [[noreturn]] void fail(std::string message) const { fail_at(std::move(message), peek().span); }

  [[noreturn]] static void fail_at(std::string message, Span span)
  {
    throw SyntaxError{make_error("E001", std::move(message), span)};
  }

  const Token & expect_keyword(std::string_view kw)
  {
    if (!peek().is_keyword(kw)) {
      fail("expected '" + std::string(kw) + "', found " + describe(peek()));
    }
    return advance();
  }

  const Token & expect_punct(std::string_view p)
  {
    if (!peek().is_punct(p)) {
      fail("expected '" + std::string(p) + "', found " + describe(peek()));
    }
    return advance();
  }

  const Token & expect(TokenKind kind, std::string_view what)
  {
    if (peek().kind != kind) {
      fail("expected " + std::string(what) + ", found " + describe(peek()));
    }
    return advance();
  }

  // Skips at least one token, then up to the next top-level keyword.
  void synchronize()
  {
    if (!at_end()) {
      advance();
    }
    while (!at_end() && !is_item_start(peek())) {
      advance();
    }
  }

  void report(std::optional<Diagnostic> d)
  {
    if (d) {
      diagnostics_.push_back(std::move(*d));
    }
  }

  void parse_item(KnowledgeBase::Builder & builder)
  {
    const Token & kw = advance();
    if (kw.is_keyword("title")) {
      const Token & s = expect(TokenKind::string, "title string");
      report(builder.set_title(s.lexeme, kw.span));
    } else if (kw.is_keyword("parameter")) {
      report(builder.add_parameter(parse_parameter()));
    } else {
      report(builder.add_section(parse_section()));
    }
  }

  Parameter parse_parameter()
  {
    Parameter p;
    const Token & name = expect(TokenKind::identifier, "parameter name");
    p.name = name.lexeme;
    p.span = name.span;
    expect_punct(":");
    const Token & type = peek();
    if (type.is_keyword("boolean")) {
      p.type = ParamType::boolean;
    } else if (type.is_keyword("text")) {
      p.type = ParamType::text;
    } else if (type.is_keyword("number")) {
      p.type = ParamType::number;
    } else if (type.is_keyword("category")) {
      p.type = ParamType::category;
    } else {
      fail("expected parameter type (boolean, text, number or category), found " + describe(type));
    }
    advance();
    if (peek().is_keyword("question")) {
      advance();
      p.question = expect(TokenKind::string, "question string").lexeme;
    }
    if (peek().is_keyword("values")) {
      const Token & values_kw = advance();
      if (p.type != ParamType::category) {
        fail_at("values are only allowed for category parameters", values_kw.span);
      }
      std::set<std::string> seen;
      do {
        const Token & v = expect(TokenKind::identifier, "category value");
        if (!seen.insert(v.lexeme).second) {
          auto d = make_error("E002", "duplicate value '" + v.lexeme + "'", v.span);
          d.subject = p.name;
          throw SyntaxError{std::move(d)};
        }
        p.values.push_back(v.lexeme);
      } while (peek().is_punct(",") && (advance(), true));
    }
    if (p.type == ParamType::category && p.values.empty()) {
      fail_at("category parameter '" + p.name + "' needs a 'values' list", p.span);
    }
    return p;
  }

  Section parse_section()
  {
    Section s;
    const Token & name = expect(TokenKind::identifier, "section name");
    s.name = name.lexeme;
    s.span = name.span;
    expect_punct("{");
    while (!peek().is_punct("}")) {
      s.rules.push_back(parse_rule());
    }
    advance();
    return s;
  }

  Rule parse_rule()
  {
    Rule r;
    r.span = peek().span;
    if (peek().is_keyword("always")) {
      r.condition = Condition::make_true(advance().span);
    } else if (peek().is_keyword("if")) {
      advance();
      r.condition = parse_condition();
    } else {
      fail("expected 'if', 'always' or '}', found " + describe(peek()));
    }
    expect_keyword("do");
    r.actions.push_back(parse_action());
    while (peek().is_punct(",")) {
      advance();
      r.actions.push_back(parse_action());
    }
    return r;
  }

  Action parse_action()
  {
    const Token & kw = peek();
    if (kw.is_keyword("advice")) {
      advance();
      const Token & text = expect(TokenKind::string, "advice text");
      if (text.lexeme.empty()) {
        fail_at("advice text must not be empty", text.span);
      }
      return Action{AdviceAction{text.lexeme}, kw.span};
    }
    if (kw.is_keyword("goto")) {
      advance();
      const Token & target = expect(TokenKind::identifier, "section name");
      return Action{GotoAction{target.lexeme}, target.span};
    }
    if (kw.is_keyword("set")) {
      advance();
      const Token & param = expect(TokenKind::identifier, "parameter name");
      expect_punct(":=");
      Literal value = parse_literal();
      return Action{SetAction{param.lexeme, std::move(value)}, param.span};
    }
    if (kw.is_keyword("stop")) {
      advance();
      return Action{StopAction{}, kw.span};
    }
    fail("expected action (advice, goto, set or stop), found " + describe(kw));
  }

  Literal parse_literal()
  {
    const Token & t = peek();
    switch (t.kind) {
      case TokenKind::string: advance(); return Literal::make_text(t.lexeme, t.span);
      case TokenKind::number: {
        advance();
        double v = 0;
        parse_number(t.lexeme, v);  // validated by the lexer
        return Literal::make_number(v, t.span);
      }
      case TokenKind::identifier: advance(); return Literal::make_ident(t.lexeme, t.span);
      default: break;
    }
    if (t.is_keyword("true") || t.is_keyword("false")) {
      advance();
      return Literal::make_bool(t.lexeme == "true", t.span);
    }
    fail("expected literal, found " + describe(t));
  }

  ConditionPtr parse_condition()
  {
    ConditionPtr lhs = parse_conjunction();
    while (peek().is_keyword("or")) {
      advance();
      lhs = Condition::make_or(std::move(lhs), parse_conjunction());
    }
    return lhs;
  }

  ConditionPtr parse_conjunction()
  {
    ConditionPtr lhs = parse_negation();
    while (peek().is_keyword("and")) {
      advance();
      lhs = Condition::make_and(std::move(lhs), parse_negation());
    }
    return lhs;
  }

  ConditionPtr parse_negation()
  {
    if (peek().is_keyword("not")) {
      Span span = advance().span;
      return Condition::make_not(parse_atom(), span);
    }
    return parse_atom();
  }

  ConditionPtr parse_atom()
  {
    const Token & t = peek();
    if (t.is_keyword("true")) {
      advance();
      return Condition::make_true(t.span);
    }
    if (t.is_keyword("false")) {
      advance();
      return Condition::make_false(t.span);
    }
    if (t.is_punct("(")) {
      if (depth_ >= kMaxConditionNesting) {
        fail("condition nested too deeply");
      }
      advance();
      ++depth_;
      ConditionPtr inner = parse_condition();
      --depth_;
      expect_punct(")");
      return inner;
    }
    if (t.kind != TokenKind::identifier) {
      fail("expected condition, found " + describe(t));
    }
    advance();
    static constexpr std::pair<std::string_view, CompareOp> kOps[] = {
      {"=", CompareOp::eq},  {"<>", CompareOp::ne}, {"<", CompareOp::lt},
      {"<=", CompareOp::le}, {">", CompareOp::gt},  {">=", CompareOp::ge},
    };
    for (const auto & [spelling, op] : kOps) {
      if (peek().is_punct(spelling)) {
        advance();
        return Condition::make_compare(t.lexeme, op, parse_literal(), t.span);
      }
    }
    return Condition::make_ref(t.lexeme, t.span);
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int depth_ = 0;
  std::vector<Diagnostic> diagnostics_;
};

void sort_by_position(std::vector<Diagnostic> & diagnostics)
{
  std::stable_sort(diagnostics.begin(), diagnostics.end(),
                   [](const Diagnostic & a, const Diagnostic & b) { return a.span < b.span; });
}

}  // namespace

ParseResult parse_kb(std::string_view source)
{
  LexResult lexed = tokenize(source);
  std::vector<Diagnostic> lex_diagnostics = std::move(lexed.diagnostics);
  ParseResult result = Parser(std::move(lexed)).parse_kb();
  result.diagnostics.insert(result.diagnostics.end(), lex_diagnostics.begin(),
                            lex_diagnostics.end());
  sort_by_position(result.diagnostics);
  return result;
}

std::variant<ConditionPtr, Diagnostic> parse_condition(std::string_view source)
{
  LexResult lexed = tokenize(source);
  if (!lexed.diagnostics.empty()) {
    return lexed.diagnostics.front();
  }
  try {
    return Parser(std::move(lexed)).parse_whole_condition();
  } catch (const SyntaxError & e) {
    return e.diagnostic;
  }
}

}  // namespace ruleshell
