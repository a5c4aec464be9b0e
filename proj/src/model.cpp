#include "ruleshell/model.hpp"

#include <algorithm>
#include <type_traits>

namespace ruleshell {

std::string_view to_string(ParamType t)
{
  switch (t) {
    case ParamType::boolean: return "boolean";
    case ParamType::text: return "text";
    case ParamType::number: return "number";
    case ParamType::category: return "category";
  }
  return "?";
}

std::string_view to_string(CompareOp op)
{
  switch (op) {
    case CompareOp::eq: return "=";
    case CompareOp::ne: return "<>";
    case CompareOp::lt: return "<";
    case CompareOp::le: return "<=";
    case CompareOp::gt: return ">";
    case CompareOp::ge: return ">=";
  }
  return "?";
}

bool is_ordering(CompareOp op)
{
  return op != CompareOp::eq && op != CompareOp::ne;
}

Literal Literal::make_text(std::string s, Span sp)
{
  Literal l;
  l.kind = Kind::text;
  l.text = std::move(s);
  l.span = sp;
  return l;
}

Literal Literal::make_number(double v, Span sp)
{
  Literal l;
  l.kind = Kind::number;
  l.number = v;
  l.span = sp;
  return l;
}

Literal Literal::make_ident(std::string s, Span sp)
{
  Literal l;
  l.kind = Kind::ident;
  l.text = std::move(s);
  l.span = sp;
  return l;
}

Literal Literal::make_bool(bool b, Span sp)
{
  Literal l;
  l.kind = Kind::boolean;
  l.boolean = b;
  l.span = sp;
  return l;
}

Literal::Kind literal_kind_for(ParamType t)
{
  switch (t) {
    case ParamType::boolean: return Literal::Kind::boolean;
    case ParamType::text: return Literal::Kind::text;
    case ParamType::number: return Literal::Kind::number;
    case ParamType::category: return Literal::Kind::ident;
  }
  return Literal::Kind::boolean;
}

ConditionPtr Condition::make_true(Span sp)
{
  auto c = std::make_shared<Condition>();
  c->kind = Kind::always_true;
  c->span = sp;
  return c;
}

ConditionPtr Condition::make_false(Span sp)
{
  auto c = std::make_shared<Condition>();
  c->kind = Kind::always_false;
  c->span = sp;
  return c;
}

ConditionPtr Condition::make_ref(std::string name, Span sp)
{
  auto c = std::make_shared<Condition>();
  c->kind = Kind::param_ref;
  c->param = std::move(name);
  c->span = sp;
  return c;
}

ConditionPtr Condition::make_compare(std::string name, CompareOp op, Literal lit, Span sp)
{
  auto c = std::make_shared<Condition>();
  c->kind = Kind::compare;
  c->param = std::move(name);
  c->op = op;
  c->literal = std::move(lit);
  c->span = sp;
  return c;
}

ConditionPtr Condition::make_not(ConditionPtr operand, Span sp)
{
  auto c = std::make_shared<Condition>();
  c->kind = Kind::negation;
  c->lhs = std::move(operand);
  c->span = sp;
  return c;
}

ConditionPtr Condition::make_and(ConditionPtr l, ConditionPtr r)
{
  auto c = std::make_shared<Condition>();
  c->kind = Kind::conjunction;
  c->span = l->span;
  c->lhs = std::move(l);
  c->rhs = std::move(r);
  return c;
}

ConditionPtr Condition::make_or(ConditionPtr l, ConditionPtr r)
{
  auto c = std::make_shared<Condition>();
  c->kind = Kind::disjunction;
  c->span = l->span;
  c->lhs = std::move(l);
  c->rhs = std::move(r);
  return c;
}

bool Parameter::allows(std::string_view value) const
{
  return std::find(values.begin(), values.end(), value) != values.end();
}

const Parameter * KnowledgeBase::find_parameter(std::string_view name) const
{
  auto it = parameter_index_.find(std::string(name));
  return it == parameter_index_.end() ? nullptr : &parameters_[it->second];
}

const Section * KnowledgeBase::find_section(std::string_view name) const
{
  auto it = section_index_.find(std::string(name));
  return it == section_index_.end() ? nullptr : &sections_[it->second];
}

std::optional<Diagnostic> KnowledgeBase::Builder::check_name_free(const std::string & name,
                                                                  Span span) const
{
  if (kb_.parameter_index_.count(name)) {
    auto d = make_error("E002", "duplicate name '" + name + "' (already a parameter)", span);
    d.subject = name;
    return d;
  }
  if (kb_.section_index_.count(name)) {
    auto d = make_error("E002", "duplicate name '" + name + "' (already a section)", span);
    d.subject = name;
    return d;
  }
  return std::nullopt;
}

std::optional<Diagnostic> KnowledgeBase::Builder::set_title(std::string title, Span span)
{
  if (has_title_) {
    return make_error("E002", "duplicate title", span);
  }
  has_title_ = true;
  kb_.title_ = std::move(title);
  return std::nullopt;
}

std::optional<Diagnostic> KnowledgeBase::Builder::add_parameter(Parameter p)
{
  if (auto d = check_name_free(p.name, p.span)) {
    return d;
  }
  kb_.parameter_index_.emplace(p.name, kb_.parameters_.size());
  kb_.parameters_.push_back(std::move(p));
  return std::nullopt;
}

std::optional<Diagnostic> KnowledgeBase::Builder::add_section(Section s)
{
  if (auto d = check_name_free(s.name, s.span)) {
    return d;
  }
  kb_.section_index_.emplace(s.name, kb_.sections_.size());
  kb_.sections_.push_back(std::move(s));
  return std::nullopt;
}

KnowledgeBase KnowledgeBase::Builder::build() &&
{
  return std::move(kb_);
}

const Parameter * lookup_parameter(const KnowledgeBase & kb, std::string_view name)
{
  return kb.find_parameter(name);
}

const Section * lookup_section(const KnowledgeBase & kb, std::string_view name)
{
  return kb.find_section(name);
}

bool same_structure(const Literal & a, const Literal & b)
{
  if (a.kind != b.kind) {
    return false;
  }
  switch (a.kind) {
    case Literal::Kind::text:
    case Literal::Kind::ident: return a.text == b.text;
    case Literal::Kind::number: return a.number == b.number;
    case Literal::Kind::boolean: return a.boolean == b.boolean;
  }
  return false;
}

bool same_structure(const Condition & a, const Condition & b)
{
  if (a.kind != b.kind) {
    return false;
  }
  switch (a.kind) {
    case Condition::Kind::always_true:
    case Condition::Kind::always_false: return true;
    case Condition::Kind::param_ref: return a.param == b.param;
    case Condition::Kind::compare:
      return a.param == b.param && a.op == b.op && same_structure(a.literal, b.literal);
    case Condition::Kind::negation: return same_structure(*a.lhs, *b.lhs);
    case Condition::Kind::conjunction:
    case Condition::Kind::disjunction:
      return same_structure(*a.lhs, *b.lhs) && same_structure(*a.rhs, *b.rhs);
  }
  return false;
}

namespace {

bool same_action(const Action & a, const Action & b)
{
  if (a.value.index() != b.value.index()) {
    return false;
  }
  return std::visit(
    [&](const auto & x) {
      using T = std::decay_t<decltype(x)>;
      const auto & y = std::get<T>(b.value);
      if constexpr (std::is_same_v<T, AdviceAction>) {
        return x.text == y.text;
      } else if constexpr (std::is_same_v<T, GotoAction>) {
        return x.target == y.target;
      } else if constexpr (std::is_same_v<T, SetAction>) {
        return x.param == y.param && same_structure(x.value, y.value);
      } else {
        return true;
      }
    },
    a.value);
}

bool same_rule(const Rule & a, const Rule & b)
{
  return same_structure(*a.condition, *b.condition) &&
         std::equal(a.actions.begin(), a.actions.end(), b.actions.begin(), b.actions.end(),
                    same_action);
}

}  // namespace

bool same_structure(const KnowledgeBase & a, const KnowledgeBase & b)
{
  auto same_param = [](const Parameter & x, const Parameter & y) {
    return x.name == y.name && x.type == y.type && x.question == y.question &&
           x.values == y.values;
  };
  auto same_section = [](const Section & x, const Section & y) {
    return x.name == y.name &&
           std::equal(x.rules.begin(), x.rules.end(), y.rules.begin(), y.rules.end(), same_rule);
  };
  return a.title() == b.title() &&
         std::equal(a.parameters().begin(), a.parameters().end(), b.parameters().begin(),
                    b.parameters().end(), same_param) &&
         std::equal(a.sections().begin(), a.sections().end(), b.sections().begin(),
                    b.sections().end(), same_section);
}

}  // namespace ruleshell
