#include "ruleshell/builtin.hpp"

#include <stdexcept>

#include "ruleshell/parser.hpp"

namespace ruleshell {

std::string_view builtin_kb_source()
{
  static constexpr std::string_view kSource =
#include "builtin_kb.inc"
    ;
  return kSource;
}

std::shared_ptr<const KnowledgeBase> builtin_kb()
{
  static const std::shared_ptr<const KnowledgeBase> kb = [] {
    ParseResult r = parse_kb(builtin_kb_source());
    if (!r.ok()) {
      throw std::logic_error("bundled knowledge base does not parse");
    }
    return std::make_shared<const KnowledgeBase>(std::move(r.kb));
  }();
  return kb;
}

}  // namespace ruleshell
