#pragma once

#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>

#include "ruleshell/parser.hpp"

namespace ruleshell::testing {

inline std::string source_path(const std::string & relative)
{
  return std::string(RULESHELL_SOURCE_DIR) + "/" + relative;
}

inline std::string read_text(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open " + path);
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

/// Parses source that is expected to be free of parse errors.
inline std::shared_ptr<const KnowledgeBase> kb_from(std::string_view source)
{
  ParseResult r = parse_kb(source);
  if (!r.ok()) {
    throw std::runtime_error("test KB does not parse: " + r.diagnostics.front().message);
  }
  return std::make_shared<const KnowledgeBase>(std::move(r.kb));
}

}  // namespace ruleshell::testing
