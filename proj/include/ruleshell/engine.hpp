#pragma once

#include <memory>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ruleshell/evaluate.hpp"
#include "ruleshell/lint.hpp"
#include "ruleshell/model.hpp"
#include "ruleshell/transcript.hpp"

namespace ruleshell {

inline constexpr std::size_t kMaxStackDepth = 64;

/// Thrown when consultation is attempted on a KB with error findings.
class LintGateFailed : public std::runtime_error
{
public:
  explicit LintGateFailed(std::vector<Finding> findings);

  const std::vector<Finding> & findings() const { return findings_; }

private:
  std::vector<Finding> findings_;
};

struct Question
{
  std::string param;
  std::string prompt;  ///< the parameter's question, else "Value of <name>?"
  ParamType type = ParamType::boolean;
  std::vector<std::string> values;  ///< declared values, category only
};

/// One fully evaluated rule condition, for "why" traces.
struct ExplainEntry
{
  std::string section;
  int rule_index = 0;
  ConditionPtr condition;
  bool outcome = false;
  /// Number of transcript events recorded when the rule was decided.
  std::size_t transcript_position = 0;
};

/// Outcome of submit_answer.
struct AnswerResult
{
  enum class Kind { accepted, invalid_answer, session_finished };

  Kind kind = Kind::accepted;
  std::string message;
  /// For invalid category answers, the declared values.
  std::vector<std::string> allowed;

  bool ok() const { return kind == Kind::accepted; }
};

/// A consultation over one knowledge base.
///
/// Execution starts at the first rule of `start`. Rules in a section run in
/// order and every rule whose condition holds fires. A condition that needs an
/// unbound parameter suspends the session with a question; once answered the
/// condition is re-evaluated from its root. `goto` calls the target section and
/// resumes after the goto when the target's rules are exhausted.
///
/// Sessions are values: copying one forks the consultation. Not thread-safe;
/// distinct sessions may share a KB across threads.
class Session
{
public:
  /// Throws LintGateFailed if lint reports errors.
  explicit Session(std::shared_ptr<const KnowledgeBase> kb);

  bool finished() const { return finish_.has_value(); }
  /// The pending question, or nullptr once finished.
  const Question * pending_question() const { return pending_ ? &*pending_ : nullptr; }
  /// Set once finished.
  const std::optional<Finished> & finish() const { return finish_; }

  /// Binds the answer to the pending question and runs until the next
  /// question or the end. Invalid answers leave the session untouched.
  AnswerResult submit_answer(std::string_view raw);

  /// Ends an unanswered session with an error, e.g. when a script runs dry.
  void abort(std::string detail);

  const KnowledgeBase & kb() const { return *kb_; }
  const Bindings & bindings() const { return bindings_; }
  const Transcript & transcript() const { return transcript_; }
  const std::vector<ExplainEntry> & explain() const { return explain_; }
  std::size_t stack_depth() const { return stack_.size(); }

  /// Advice texts emitted so far, in order.
  std::vector<std::string> advice() const;

private:
  struct Frame
  {
    const Section * section = nullptr;
    std::size_t rule_index = 0;
    std::size_t action_index = 0;
    bool firing = false;  ///< condition of the current rule held
  };

  void run();
  void enter(const Section & s);
  void finish(FinishReason reason, std::string detail = {});
  Question make_question(const Parameter & p) const;

  std::shared_ptr<const KnowledgeBase> kb_;
  Bindings bindings_;
  std::set<std::string> asked_;
  std::vector<Frame> stack_;
  std::optional<Question> pending_;
  std::optional<Finished> finish_;
  Transcript transcript_;
  std::vector<ExplainEntry> explain_;
};

/// Lint-gates `kb` and runs until the first question or the end.
Session start_session(std::shared_ptr<const KnowledgeBase> kb);

/// Replays `answers` in order. Running out of answers with a question pending
/// finishes with an error; an invalid answer does too. Answers left over after
/// the end are reported with one Warning event.
Transcript run_scripted(std::shared_ptr<const KnowledgeBase> kb,
                        std::span<const std::string> answers);

}  // namespace ruleshell
