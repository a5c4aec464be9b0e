#include "ruleshell/format.hpp"

#include <charconv>

namespace ruleshell {

namespace {

// Binding strength; an operand is parenthesised when its own level is lower
// than the level its position requires.
enum Level { kOr = 1, kAnd = 2, kNot = 3, kAtom = 4 };

int level_of(const Condition & c)
{
  switch (c.kind) {
    case Condition::Kind::disjunction: return kOr;
    case Condition::Kind::conjunction: return kAnd;
    case Condition::Kind::negation: return kNot;
    default: return kAtom;
  }
}

void write_condition(std::string & out, const Condition & c, int required)
{
  bool parens = level_of(c) < required;
  if (parens) {
    out += '(';
  }
  switch (c.kind) {
    case Condition::Kind::always_true: out += "true"; break;
    case Condition::Kind::always_false: out += "false"; break;
    case Condition::Kind::param_ref: out += c.param; break;
    case Condition::Kind::compare:
      out += c.param;
      out += ' ';
      out += to_string(c.op);
      out += ' ';
      out += format_literal(c.literal);
      break;
    case Condition::Kind::negation:
      out += "not ";
      write_condition(out, *c.lhs, kAtom);
      break;
    case Condition::Kind::conjunction:
      write_condition(out, *c.lhs, kAnd);
      out += " and ";
      write_condition(out, *c.rhs, kNot);
      break;
    case Condition::Kind::disjunction:
      write_condition(out, *c.lhs, kOr);
      out += " or ";
      write_condition(out, *c.rhs, kAnd);
      break;
  }
  if (parens) {
    out += ')';
  }
}

void write_parenthesized(std::string & out, const Condition & c)
{
  switch (c.kind) {
    case Condition::Kind::negation:
      out += "(not ";
      write_parenthesized(out, *c.lhs);
      out += ')';
      break;
    case Condition::Kind::conjunction:
    case Condition::Kind::disjunction:
      out += '(';
      write_parenthesized(out, *c.lhs);
      out += c.kind == Condition::Kind::conjunction ? " and " : " or ";
      write_parenthesized(out, *c.rhs);
      out += ')';
      break;
    default: write_condition(out, c, kAtom); break;
  }
}

std::string format_action(const Action & a)
{
  return std::visit(
    [](const auto & x) -> std::string {
      using T = std::decay_t<decltype(x)>;
      if constexpr (std::is_same_v<T, AdviceAction>) {
        return "advice " + quote_string(x.text);
      } else if constexpr (std::is_same_v<T, GotoAction>) {
        return "goto " + x.target;
      } else if constexpr (std::is_same_v<T, SetAction>) {
        return "set " + x.param + " := " + format_literal(x.value);
      } else {
        return "stop";
      }
    },
    a.value);
}

}  // namespace

std::string format_condition(const Condition & c)
{
  std::string out;
  write_condition(out, c, kOr);
  return out;
}

std::string format_condition_parenthesized(const Condition & c)
{
  std::string out;
  write_parenthesized(out, c);
  return out;
}

std::string quote_string(std::string_view s)
{
  std::string out = "\"";
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      default: out += ch; break;
    }
  }
  out += '"';
  return out;
}

std::string format_number(double v)
{
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

std::string format_literal(const Literal & l)
{
  switch (l.kind) {
    case Literal::Kind::text: return quote_string(l.text);
    case Literal::Kind::number: return format_number(l.number);
    case Literal::Kind::ident: return l.text;
    case Literal::Kind::boolean: return l.boolean ? "true" : "false";
  }
  return {};
}

std::string format_kb(const KnowledgeBase & kb)
{
  std::vector<std::string> blocks;
  if (!kb.title().empty()) {
    blocks.push_back("title " + quote_string(kb.title()) + "\n");
  }
  for (const Parameter & p : kb.parameters()) {
    std::string b = "parameter " + p.name + ": " + std::string(to_string(p.type)) + "\n";
    if (p.question) {
      b += "  question " + quote_string(*p.question) + "\n";
    }
    if (!p.values.empty()) {
      b += "  values ";
      for (std::size_t i = 0; i < p.values.size(); ++i) {
        b += (i ? ", " : "") + p.values[i];
      }
      b += "\n";
    }
    blocks.push_back(std::move(b));
  }
  for (const Section & s : kb.sections()) {
    std::string b = "section " + s.name + " {\n";
    for (const Rule & r : s.rules) {
      b += "  ";
      b += r.condition->kind == Condition::Kind::always_true
             ? std::string("always")
             : "if " + format_condition(*r.condition);
      b += " do ";
      for (std::size_t i = 0; i < r.actions.size(); ++i) {
        b += (i ? ", " : "") + format_action(r.actions[i]);
      }
      b += "\n";
    }
    b += "}\n";
    blocks.push_back(std::move(b));
  }
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) {
      out += '\n';
    }
    out += blocks[i];
  }
  return out;
}

}  // namespace ruleshell
