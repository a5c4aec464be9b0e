#pragma once

#include <map>
#include <optional>
#include <string>
#include <variant>

#include "ruleshell/model.hpp"

namespace ruleshell {

/// A bound parameter value. Text and category values are both strings; the
/// parameter's declared type tells them apart.
using Value = std::variant<bool, double, std::string>;

using Bindings = std::map<std::string, Value, std::less<>>;

/// Canonical spelling of a value, as used in transcripts.
std::string to_text(const Value & v);

/// Converts a literal into the value it denotes.
Value to_value(const Literal & lit);

/// Result of evaluating a condition against partial bindings.
struct TriState
{
  enum class Kind { known_true, known_false, unknown };

  Kind kind = Kind::known_false;
  /// For `unknown`: the leftmost parameter the evaluation needs.
  std::string demanded;

  static TriState of(bool b) { return TriState{b ? Kind::known_true : Kind::known_false, {}}; }
  static TriState unknown(std::string param) { return TriState{Kind::unknown, std::move(param)}; }

  bool is_true() const { return kind == Kind::known_true; }
  bool is_false() const { return kind == Kind::known_false; }
  bool is_unknown() const { return kind == Kind::unknown; }

  friend bool operator==(const TriState &, const TriState &) = default;
};

/// Left-to-right, short-circuit evaluation. `and` stops at the first false
/// operand, `or` at the first true one; the first unbound parameter met is
/// reported as demanded. With complete bindings the result is never unknown.
TriState evaluate_condition(const Condition & cond, const Bindings & bindings);

/// Compares a bound value with a literal. Values of a different kind than
/// the literal never compare true.
bool compare(const Value & value, CompareOp op, const Literal & lit);

/// Parses a user's answer for a parameter: booleans accept true/false/yes/no
/// in any case, numbers use the literal grammar, category answers must be a
/// declared value exactly, text is taken verbatim. nullopt if invalid.
std::optional<Value> parse_answer(const Parameter & p, std::string_view raw);

}  // namespace ruleshell
