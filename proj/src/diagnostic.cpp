#include "ruleshell/diagnostic.hpp"

#include <algorithm>

namespace ruleshell {

Diagnostic make_error(std::string code, std::string message, Span span)
{
  return Diagnostic{Severity::error, std::move(code), std::move(message), span, std::nullopt};
}

Diagnostic make_warning(std::string code, std::string message, Span span)
{
  return Diagnostic{Severity::warning, std::move(code), std::move(message), span, std::nullopt};
}

std::string render(const Diagnostic & d, std::string_view file)
{
  std::string out(file);
  out += ':';
  out += std::to_string(d.span.line);
  out += ':';
  out += std::to_string(d.span.column);
  out += ": ";
  out += d.code;
  out += ' ';
  out += d.message;
  return out;
}

bool has_errors(const std::vector<Diagnostic> & diagnostics)
{
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic & d) { return d.is_error(); });
}

}  // namespace ruleshell
