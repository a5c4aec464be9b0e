#pragma once

#include <string>

#include "ruleshell/model.hpp"

namespace ruleshell {

/// Canonical source text for a knowledge base. Re-parsing the output yields a
/// structurally identical KB, and formatting is idempotent.
std::string format_kb(const KnowledgeBase & kb);

/// Condition with the minimum parentheses the grammar needs.
std::string format_condition(const Condition & c);

/// Condition with every binary and negated subterm parenthesised.
std::string format_condition_parenthesized(const Condition & c);

std::string format_literal(const Literal & l);
std::string quote_string(std::string_view s);
std::string format_number(double v);

}  // namespace ruleshell
