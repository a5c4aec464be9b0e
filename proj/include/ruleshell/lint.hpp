#pragma once

#include <set>
#include <string>
#include <vector>

#include "ruleshell/diagnostic.hpp"
#include "ruleshell/model.hpp"

namespace ruleshell {

/// A lint result. Same shape as a parser diagnostic; `subject` names the
/// parameter or section concerned.
using Finding = Diagnostic;

/// Static checks, ordered by position then code:
///
///   E100 missing start section
///   E101 goto to an undefined section
///   E102 reference to an undefined parameter
///   E103 type mismatch
///   E104 category literal not among the declared values
///   W200 unreachable section
///   W201 parameter never referenced
///   W202 section with no rules
std::vector<Finding> lint(const KnowledgeBase & kb);

/// Sections reachable from `start` over goto edges, ignoring conditions.
/// Empty when there is no `start` section.
std::set<std::string> reachable_sections(const KnowledgeBase & kb);

inline constexpr std::string_view kStartSection = "start";

}  // namespace ruleshell
