#pragma once

#include <memory>
#include <string_view>

#include "ruleshell/model.hpp"

namespace ruleshell {

/// Source text of the bundled Sanjeevani knowledge base (kbs/sanjeevani.kb).
std::string_view builtin_kb_source();

/// The bundled knowledge base, parsed once. It parses and lints clean.
std::shared_ptr<const KnowledgeBase> builtin_kb();

inline constexpr std::string_view kBuiltinKbName = "sanjeevani";

}  // namespace ruleshell
