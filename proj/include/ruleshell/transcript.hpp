#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace ruleshell {

enum class FinishReason { completed, stopped, error };

std::string_view to_string(FinishReason r);

struct SectionEnter
{
  std::string section;
};

struct SectionExit
{
  std::string section;
};

struct QuestionAsked
{
  std::string param;
  std::string prompt;
};

struct AnswerGiven
{
  std::string param;
  std::string value;  ///< canonical spelling of the bound value
};

struct AdviceGiven
{
  std::string text;
  std::string section;
  int rule_index = 0;
};

struct Finished
{
  FinishReason reason = FinishReason::completed;
  std::string detail;  ///< set for errors only
};

/// Emitted by scripted runs, e.g. for answers left over at the end.
struct Warning
{
  std::string message;
};

using Event =
  std::variant<SectionEnter, SectionExit, QuestionAsked, AnswerGiven, AdviceGiven, Finished, Warning>;

using Transcript = std::vector<Event>;

/// Fields of the canonical line for an event, tag first, unescaped:
///   ENTER section | EXIT section | QUESTION param prompt | ANSWER param value
///   ADVICE section rule text | FINISHED reason [detail] | WARNING message
std::vector<std::string> event_fields(const Event & e);

/// Canonical transcript text: one event per line, fields separated by a tab,
/// every line ending in '\n'. Backslash, tab, CR and LF inside fields are
/// written as \\, \t, \r and \n.
std::string render_transcript(const Transcript & t);

std::string escape_field(std::string_view s);

}  // namespace ruleshell
