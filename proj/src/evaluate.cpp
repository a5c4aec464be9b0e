#include "ruleshell/evaluate.hpp"

#include <algorithm>
#include <cctype>

#include "ruleshell/format.hpp"
#include "ruleshell/lexer.hpp"

namespace ruleshell {

std::string to_text(const Value & v)
{
  if (const bool * b = std::get_if<bool>(&v)) {
    return *b ? "true" : "false";
  }
  if (const double * d = std::get_if<double>(&v)) {
    return format_number(*d);
  }
  return std::get<std::string>(v);
}

Value to_value(const Literal & lit)
{
  switch (lit.kind) {
    case Literal::Kind::text:
    case Literal::Kind::ident: return lit.text;
    case Literal::Kind::number: return lit.number;
    case Literal::Kind::boolean: return lit.boolean;
  }
  return false;
}

bool compare(const Value & value, CompareOp op, const Literal & lit)
{
  Value rhs = to_value(lit);
  if (value.index() != rhs.index()) {
    return false;
  }
  if (const double * d = std::get_if<double>(&value)) {
    double r = std::get<double>(rhs);
    switch (op) {
      case CompareOp::eq: return *d == r;
      case CompareOp::ne: return *d != r;
      case CompareOp::lt: return *d < r;
      case CompareOp::le: return *d <= r;
      case CompareOp::gt: return *d > r;
      case CompareOp::ge: return *d >= r;
    }
  }
  switch (op) {
    case CompareOp::eq: return value == rhs;
    case CompareOp::ne: return value != rhs;
    default: return false;
  }
}

TriState evaluate_condition(const Condition & cond, const Bindings & bindings)
{
  switch (cond.kind) {
    case Condition::Kind::always_true: return TriState::of(true);
    case Condition::Kind::always_false: return TriState::of(false);
    case Condition::Kind::param_ref: {
      auto it = bindings.find(cond.param);
      if (it == bindings.end()) {
        return TriState::unknown(cond.param);
      }
      const bool * b = std::get_if<bool>(&it->second);
      return TriState::of(b && *b);
    }
    case Condition::Kind::compare: {
      auto it = bindings.find(cond.param);
      if (it == bindings.end()) {
        return TriState::unknown(cond.param);
      }
      return TriState::of(compare(it->second, cond.op, cond.literal));
    }
    case Condition::Kind::negation: {
      TriState inner = evaluate_condition(*cond.lhs, bindings);
      return inner.is_unknown() ? inner : TriState::of(inner.is_false());
    }
    case Condition::Kind::conjunction: {
      TriState left = evaluate_condition(*cond.lhs, bindings);
      if (!left.is_true()) {
        return left;
      }
      return evaluate_condition(*cond.rhs, bindings);
    }
    case Condition::Kind::disjunction: {
      TriState left = evaluate_condition(*cond.lhs, bindings);
      if (!left.is_false()) {
        return left;
      }
      return evaluate_condition(*cond.rhs, bindings);
    }
  }
  return TriState::of(false);
}

namespace {

std::string_view trim(std::string_view s)
{
  auto is_ws = [](char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; };
  while (!s.empty() && is_ws(s.front())) {
    s.remove_prefix(1);
  }
  while (!s.empty() && is_ws(s.back())) {
    s.remove_suffix(1);
  }
  return s;
}

std::string lower(std::string_view s)
{
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

}  // namespace

std::optional<Value> parse_answer(const Parameter & p, std::string_view raw)
{
  switch (p.type) {
    case ParamType::boolean: {
      std::string word = lower(trim(raw));
      if (word == "true" || word == "yes") {
        return Value{true};
      }
      if (word == "false" || word == "no") {
        return Value{false};
      }
      return std::nullopt;
    }
    case ParamType::number: {
      double v = 0;
      if (!parse_number(trim(raw), v)) {
        return std::nullopt;
      }
      return Value{v};
    }
    case ParamType::category: {
      std::string_view word = trim(raw);
      if (!p.allows(word)) {
        return std::nullopt;
      }
      return Value{std::string(word)};
    }
    case ParamType::text: return Value{std::string(raw)};
  }
  return std::nullopt;
}

}  // namespace ruleshell
