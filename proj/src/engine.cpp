#include "ruleshell/engine.hpp"

namespace ruleshell {

namespace {

std::string summarize(const std::vector<Finding> & findings)
{
  std::string msg = "knowledge base has lint errors:";
  for (const Finding & f : findings) {
    if (f.is_error()) {
      msg += " " + f.code;
    }
  }
  return msg;
}

}  // namespace

LintGateFailed::LintGateFailed(std::vector<Finding> findings)
: std::runtime_error(summarize(findings)), findings_(std::move(findings))
{
}

Session::Session(std::shared_ptr<const KnowledgeBase> kb) : kb_(std::move(kb))
{
  std::vector<Finding> findings = lint(*kb_);
  if (has_errors(findings)) {
    throw LintGateFailed(std::move(findings));
  }
  enter(*kb_->find_section(kStartSection));
  run();
}

std::vector<std::string> Session::advice() const
{
  std::vector<std::string> out;
  for (const Event & e : transcript_) {
    if (const auto * a = std::get_if<AdviceGiven>(&e)) {
      out.push_back(a->text);
    }
  }
  return out;
}

Question Session::make_question(const Parameter & p) const
{
  Question q;
  q.param = p.name;
  q.prompt = p.question ? *p.question : "Value of " + p.name + "?";
  q.type = p.type;
  q.values = p.values;
  return q;
}

void Session::enter(const Section & s)
{
  stack_.push_back(Frame{&s, 0, 0, false});
  transcript_.push_back(SectionEnter{s.name});
}

void Session::finish(FinishReason reason, std::string detail)
{
  pending_.reset();
  finish_ = Finished{reason, std::move(detail)};
  transcript_.push_back(*finish_);
}

void Session::abort(std::string detail)
{
  if (!finished()) {
    finish(FinishReason::error, std::move(detail));
  }
}

AnswerResult Session::submit_answer(std::string_view raw)
{
  if (finished()) {
    return AnswerResult{AnswerResult::Kind::session_finished, "the consultation has finished", {}};
  }
  const Parameter & p = *kb_->find_parameter(pending_->param);
  std::optional<Value> value = parse_answer(p, raw);
  if (!value) {
    AnswerResult r{AnswerResult::Kind::invalid_answer, {}, {}};
    switch (p.type) {
      case ParamType::boolean: r.message = "expected yes, no, true or false"; break;
      case ParamType::number: r.message = "expected a number"; break;
      case ParamType::category:
        r.message = "expected one of the declared values of '" + p.name + "'";
        r.allowed = p.values;
        break;
      case ParamType::text: break;
    }
    return r;
  }
  transcript_.push_back(AnswerGiven{p.name, to_text(*value)});
  bindings_.insert_or_assign(p.name, std::move(*value));
  pending_.reset();
  run();
  return AnswerResult{};
}

void Session::run()
{
  while (!stack_.empty()) {
    Frame & frame = stack_.back();
    const Section & section = *frame.section;

    if (frame.rule_index >= section.rules.size()) {
      transcript_.push_back(SectionExit{section.name});
      stack_.pop_back();
      continue;
    }
    const Rule & rule = section.rules[frame.rule_index];
    const int rule_index = static_cast<int>(frame.rule_index);

    if (!frame.firing) {
      TriState t = evaluate_condition(*rule.condition, bindings_);
      if (t.is_unknown()) {
        // Lint guarantees the parameter exists; ask-once holds because an
        // asked parameter is bound before execution resumes.
        const Parameter & p = *kb_->find_parameter(t.demanded);
        asked_.insert(p.name);
        pending_ = make_question(p);
        transcript_.push_back(QuestionAsked{pending_->param, pending_->prompt});
        return;
      }
      explain_.push_back(
        ExplainEntry{section.name, rule_index, rule.condition, t.is_true(), transcript_.size()});
      if (t.is_false()) {
        ++frame.rule_index;
        continue;
      }
      frame.firing = true;
      frame.action_index = 0;
    }

    if (frame.action_index >= rule.actions.size()) {
      ++frame.rule_index;
      frame.firing = false;
      frame.action_index = 0;
      continue;
    }
    const Action & action = rule.actions[frame.action_index++];

    if (const auto * a = std::get_if<AdviceAction>(&action.value)) {
      transcript_.push_back(AdviceGiven{a->text, section.name, rule_index});
    } else if (const auto * s = std::get_if<SetAction>(&action.value)) {
      bindings_.insert_or_assign(s->param, to_value(s->value));
    } else if (const auto * g = std::get_if<GotoAction>(&action.value)) {
      if (stack_.size() >= kMaxStackDepth) {
        finish(FinishReason::error, "stack depth " + std::to_string(kMaxStackDepth) + " exceeded");
        return;
      }
      // `frame` is invalidated by the push.
      enter(*kb_->find_section(g->target));
    } else {
      finish(FinishReason::stopped);
      return;
    }
  }
  finish(FinishReason::completed);
}

Session start_session(std::shared_ptr<const KnowledgeBase> kb)
{
  return Session(std::move(kb));
}

Transcript run_scripted(std::shared_ptr<const KnowledgeBase> kb,
                        std::span<const std::string> answers)
{
  Session session(std::move(kb));
  std::size_t next = 0;
  while (!session.finished()) {
    if (next == answers.size()) {
      session.abort("answers exhausted");
      break;
    }
    const std::string & raw = answers[next++];
    const std::string param = session.pending_question()->param;
    AnswerResult r = session.submit_answer(raw);
    if (r.kind == AnswerResult::Kind::invalid_answer) {
      session.abort("invalid answer '" + raw + "' for '" + param + "': " + r.message);
    }
  }
  Transcript t = session.transcript();
  if (next < answers.size()) {
    t.push_back(Warning{std::to_string(answers.size() - next) + " unused answer(s) ignored"});
  }
  return t;
}

}  // namespace ruleshell
