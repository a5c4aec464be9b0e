#include "ruleshell/lint.hpp"

#include <algorithm>

namespace ruleshell {

namespace {

std::string_view describe(Literal::Kind k)
{
  switch (k) {
    case Literal::Kind::text: return "text";
    case Literal::Kind::number: return "number";
    case Literal::Kind::ident: return "category value";
    case Literal::Kind::boolean: return "boolean";
  }
  return "?";
}

class Linter
{
public:
  explicit Linter(const KnowledgeBase & kb) : kb_(kb) {}

  std::vector<Finding> run()
  {
    if (!kb_.find_section(kStartSection)) {
      error("E100", "missing start section", Span{1, 1}, std::string(kStartSection));
    }
    for (const Section & s : kb_.sections()) {
      for (const Rule & r : s.rules) {
        check_condition(*r.condition);
        for (const Action & a : r.actions) {
          check_action(a);
        }
      }
    }

    std::set<std::string> reachable = reachable_sections(kb_);
    for (const Section & s : kb_.sections()) {
      if (s.name != kStartSection && !reachable.count(s.name)) {
        warning("W200", "section '" + s.name + "' is unreachable from start", s.span, s.name);
      }
      if (s.rules.empty()) {
        warning("W202", "section '" + s.name + "' has no rules", s.span, s.name);
      }
    }
    for (const Parameter & p : kb_.parameters()) {
      if (!referenced_.count(p.name)) {
        warning("W201", "parameter '" + p.name + "' is never referenced", p.span, p.name);
      }
    }

    std::stable_sort(findings_.begin(), findings_.end(), [](const Finding & a, const Finding & b) {
      if (a.span != b.span) {
        return a.span < b.span;
      }
      return a.code < b.code;
    });
    return std::move(findings_);
  }

private:
  void error(std::string code, std::string message, Span span, std::string subject)
  {
    Finding f = make_error(std::move(code), std::move(message), span);
    f.subject = std::move(subject);
    findings_.push_back(std::move(f));
  }

  void warning(std::string code, std::string message, Span span, std::string subject)
  {
    Finding f = make_warning(std::move(code), std::move(message), span);
    f.subject = std::move(subject);
    findings_.push_back(std::move(f));
  }

  const Parameter * resolve(const std::string & name, Span span)
  {
    referenced_.insert(name);
    const Parameter * p = kb_.find_parameter(name);
    if (!p) {
      error("E102", "undefined parameter '" + name + "'", span, name);
    }
    return p;
  }

  // Literal must match the parameter's type; category literals must be declared.
  void check_literal(const Parameter & p, const Literal & lit)
  {
    Literal::Kind expected = literal_kind_for(p.type);
    if (lit.kind != expected) {
      error("E103",
            "parameter '" + p.name + "' is " + std::string(to_string(p.type)) + " but the value is " +
              std::string(describe(lit.kind)),
            lit.span, p.name);
      return;
    }
    if (p.type == ParamType::category && !p.allows(lit.text)) {
      error("E104", "'" + lit.text + "' is not a declared value of '" + p.name + "'", lit.span,
            p.name);
    }
  }

  void check_condition(const Condition & c)
  {
    switch (c.kind) {
      case Condition::Kind::always_true:
      case Condition::Kind::always_false: break;
      case Condition::Kind::param_ref:
        if (const Parameter * p = resolve(c.param, c.span); p && p->type != ParamType::boolean) {
          error("E103",
                "'" + c.param + "' is " + std::string(to_string(p->type)) +
                  " and cannot be used as a condition on its own",
                c.span, c.param);
        }
        break;
      case Condition::Kind::compare:
        if (const Parameter * p = resolve(c.param, c.span)) {
          if (is_ordering(c.op) && p->type != ParamType::number) {
            error("E103",
                  "operator '" + std::string(to_string(c.op)) + "' needs a number parameter, '" +
                    c.param + "' is " + std::string(to_string(p->type)),
                  c.span, c.param);
          }
          check_literal(*p, c.literal);
        }
        break;
      case Condition::Kind::negation: check_condition(*c.lhs); break;
      case Condition::Kind::conjunction:
      case Condition::Kind::disjunction:
        check_condition(*c.lhs);
        check_condition(*c.rhs);
        break;
    }
  }

  void check_action(const Action & a)
  {
    if (const auto * g = std::get_if<GotoAction>(&a.value)) {
      if (!kb_.find_section(g->target)) {
        error("E101", "goto to undefined section '" + g->target + "'", a.span, g->target);
      }
    } else if (const auto * s = std::get_if<SetAction>(&a.value)) {
      if (const Parameter * p = resolve(s->param, a.span)) {
        check_literal(*p, s->value);
      }
    }
  }

  const KnowledgeBase & kb_;
  std::set<std::string> referenced_;
  std::vector<Finding> findings_;
};

}  // namespace

std::vector<Finding> lint(const KnowledgeBase & kb)
{
  return Linter(kb).run();
}

std::set<std::string> reachable_sections(const KnowledgeBase & kb)
{
  std::set<std::string> reached;
  if (!kb.find_section(kStartSection)) {
    return reached;
  }
  std::vector<const Section *> work{kb.find_section(kStartSection)};
  reached.insert(std::string(kStartSection));
  while (!work.empty()) {
    const Section * s = work.back();
    work.pop_back();
    for (const Rule & r : s->rules) {
      for (const Action & a : r.actions) {
        const auto * g = std::get_if<GotoAction>(&a.value);
        if (!g) {
          continue;
        }
        const Section * target = kb.find_section(g->target);
        if (target && reached.insert(target->name).second) {
          work.push_back(target);
        }
      }
    }
  }
  return reached;
}

}  // namespace ruleshell
