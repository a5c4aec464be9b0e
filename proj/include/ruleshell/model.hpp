#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <variant>
#include <vector>

#include "ruleshell/diagnostic.hpp"

namespace ruleshell {

enum class ParamType { boolean, text, number, category };

std::string_view to_string(ParamType t);

//===----------------------------------------------------------------------===//
// Literals and conditions
//===----------------------------------------------------------------------===//

struct Literal
{
  enum class Kind { text, number, ident, boolean };

  Kind kind = Kind::boolean;
  std::string text;  ///< payload of text and ident literals
  double number = 0.0;
  bool boolean = false;
  Span span;

  static Literal make_text(std::string s, Span sp = {});
  static Literal make_number(double v, Span sp = {});
  static Literal make_ident(std::string s, Span sp = {});
  static Literal make_bool(bool b, Span sp = {});
};

/// The literal kind a parameter of type `t` must be compared with or set to.
Literal::Kind literal_kind_for(ParamType t);

enum class CompareOp { eq, ne, lt, le, gt, ge };

std::string_view to_string(CompareOp op);
bool is_ordering(CompareOp op);

struct Condition;
using ConditionPtr = std::shared_ptr<const Condition>;

/// Boolean expression over parameters. Nodes are immutable and shared.
struct Condition
{
  enum class Kind { always_true, always_false, param_ref, compare, negation, conjunction, disjunction };

  Kind kind = Kind::always_true;
  std::string param;          ///< param_ref, compare
  CompareOp op = CompareOp::eq;  ///< compare
  Literal literal;            ///< compare
  ConditionPtr lhs;           ///< negation operand; left of and/or
  ConditionPtr rhs;           ///< right of and/or
  Span span;                  ///< first token of the node

  static ConditionPtr make_true(Span sp = {});
  static ConditionPtr make_false(Span sp = {});
  static ConditionPtr make_ref(std::string name, Span sp = {});
  static ConditionPtr make_compare(std::string name, CompareOp op, Literal lit, Span sp = {});
  static ConditionPtr make_not(ConditionPtr operand, Span sp = {});
  static ConditionPtr make_and(ConditionPtr l, ConditionPtr r);
  static ConditionPtr make_or(ConditionPtr l, ConditionPtr r);
};

//===----------------------------------------------------------------------===//
// Rules and sections
//===----------------------------------------------------------------------===//

struct AdviceAction
{
  std::string text;
};

struct GotoAction
{
  std::string target;
};

struct SetAction
{
  std::string param;
  Literal value;
};

struct StopAction
{
};

struct Action
{
  std::variant<AdviceAction, GotoAction, SetAction, StopAction> value;
  Span span;  ///< the target/parameter name for goto/set, the keyword otherwise
};

/// An if-do pair. Unconditional rules carry the `true` condition.
struct Rule
{
  ConditionPtr condition;
  std::vector<Action> actions;
  Span span;
};

struct Section
{
  std::string name;
  std::vector<Rule> rules;
  Span span;
};

struct Parameter
{
  std::string name;
  ParamType type = ParamType::boolean;
  std::optional<std::string> question;
  /// Declared values, in order. Non-empty exactly for category parameters.
  std::vector<std::string> values;
  Span span;

  bool allows(std::string_view value) const;
};

//===----------------------------------------------------------------------===//
// Knowledge base
//===----------------------------------------------------------------------===//

/// Title, parameters and sections. Immutable once built; every name is unique
/// across both parameters and sections.
class KnowledgeBase
{
public:
  class Builder;

  KnowledgeBase() = default;

  const std::string & title() const { return title_; }
  const std::vector<Parameter> & parameters() const { return parameters_; }
  const std::vector<Section> & sections() const { return sections_; }

  const Parameter * find_parameter(std::string_view name) const;
  const Section * find_section(std::string_view name) const;

  bool empty() const { return title_.empty() && parameters_.empty() && sections_.empty(); }

private:
  std::string title_;
  std::vector<Parameter> parameters_;
  std::vector<Section> sections_;
  std::unordered_map<std::string, std::size_t> parameter_index_;
  std::unordered_map<std::string, std::size_t> section_index_;
};

/// The only way to construct a non-empty KnowledgeBase. Rejected items are
/// reported as E002 diagnostics and left out of the result.
class KnowledgeBase::Builder
{
public:
  std::optional<Diagnostic> set_title(std::string title, Span span = {});
  std::optional<Diagnostic> add_parameter(Parameter p);
  std::optional<Diagnostic> add_section(Section s);

  KnowledgeBase build() &&;

private:
  std::optional<Diagnostic> check_name_free(const std::string & name, Span span) const;

  KnowledgeBase kb_;
  bool has_title_ = false;
};

/// Exact, case-sensitive lookup. nullptr when no such parameter exists.
const Parameter * lookup_parameter(const KnowledgeBase & kb, std::string_view name);
const Section * lookup_section(const KnowledgeBase & kb, std::string_view name);

// Structural equality: spans are ignored.
bool same_structure(const Literal & a, const Literal & b);
bool same_structure(const Condition & a, const Condition & b);
bool same_structure(const KnowledgeBase & a, const KnowledgeBase & b);

}  // namespace ruleshell
