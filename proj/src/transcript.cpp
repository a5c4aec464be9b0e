#include "ruleshell/transcript.hpp"

namespace ruleshell {

std::string_view to_string(FinishReason r)
{
  switch (r) {
    case FinishReason::completed: return "completed";
    case FinishReason::stopped: return "stopped";
    case FinishReason::error: return "error";
  }
  return "?";
}

std::vector<std::string> event_fields(const Event & e)
{
  struct Visitor
  {
    std::vector<std::string> operator()(const SectionEnter & x) const { return {"ENTER", x.section}; }
    std::vector<std::string> operator()(const SectionExit & x) const { return {"EXIT", x.section}; }
    std::vector<std::string> operator()(const QuestionAsked & x) const
    {
      return {"QUESTION", x.param, x.prompt};
    }
    std::vector<std::string> operator()(const AnswerGiven & x) const
    {
      return {"ANSWER", x.param, x.value};
    }
    std::vector<std::string> operator()(const AdviceGiven & x) const
    {
      return {"ADVICE", x.section, std::to_string(x.rule_index), x.text};
    }
    std::vector<std::string> operator()(const Finished & x) const
    {
      std::vector<std::string> f{"FINISHED", std::string(to_string(x.reason))};
      if (!x.detail.empty()) {
        f.push_back(x.detail);
      }
      return f;
    }
    std::vector<std::string> operator()(const Warning & x) const { return {"WARNING", x.message}; }
  };
  return std::visit(Visitor{}, e);
}

std::string escape_field(std::string_view s)
{
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '\\': out += "\\\\"; break;
      case '\t': out += "\\t"; break;
      case '\r': out += "\\r"; break;
      case '\n': out += "\\n"; break;
      default: out += c; break;
    }
  }
  return out;
}

std::string render_transcript(const Transcript & t)
{
  std::string out;
  for (const Event & e : t) {
    std::vector<std::string> fields = event_fields(e);
    for (std::size_t i = 0; i < fields.size(); ++i) {
      if (i) {
        out += '\t';
      }
      out += escape_field(fields[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace ruleshell
