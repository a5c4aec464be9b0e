#include "ruleshell/service.hpp"

#include <fstream>
#include <random>
#include <sstream>

#include "ruleshell/builtin.hpp"
#include "ruleshell/parser.hpp"

namespace ruleshell {

using nlohmann::json;

KbRegistry load_registry(const std::filesystem::path & dir, std::ostream & log)
{
  KbRegistry registry;
  std::error_code ec;
  if (std::filesystem::is_directory(dir, ec)) {
    for (const auto & entry : std::filesystem::directory_iterator(dir, ec)) {
      if (entry.path().extension() != ".kb") {
        continue;
      }
      std::ifstream in(entry.path(), std::ios::binary);
      std::stringstream buf;
      buf << in.rdbuf();
      ParseResult parsed = parse_kb(buf.str());
      std::vector<Diagnostic> diagnostics = parsed.diagnostics;
      if (parsed.ok()) {
        std::vector<Finding> findings = lint(parsed.kb);
        diagnostics.insert(diagnostics.end(), findings.begin(), findings.end());
      }
      if (has_errors(diagnostics)) {
        for (const Diagnostic & d : diagnostics) {
          log << render(d, entry.path().string()) << '\n';
        }
        log << "skipping " << entry.path().string() << '\n';
        continue;
      }
      registry.emplace(entry.path().stem().string(),
                       std::make_shared<const KnowledgeBase>(std::move(parsed.kb)));
    }
  } else {
    log << "knowledge base directory " << dir.string() << " not found\n";
  }
  registry.emplace(std::string(kBuiltinKbName), builtin_kb());
  return registry;
}

json session_view(const std::string & id, const Session & s)
{
  json view;
  view["id"] = id;
  view["status"] = s.finished() ? "finished" : "awaiting_answer";
  if (const Question * q = s.pending_question()) {
    view["question"] = {{"param", q->param},
                        {"prompt", q->prompt},
                        {"ptype", std::string(to_string(q->type))},
                        {"values", q->values}};
  } else {
    view["question"] = nullptr;
  }
  view["advice"] = s.advice();
  if (const auto & f = s.finish()) {
    std::string reason(to_string(f->reason));
    if (!f->detail.empty()) {
      reason += ": " + f->detail;
    }
    view["finished_reason"] = reason;
  } else {
    view["finished_reason"] = nullptr;
  }
  return view;
}

json transcript_json(const Transcript & t)
{
  struct Visitor
  {
    json operator()(const SectionEnter & x) const { return {{"type", "ENTER"}, {"section", x.section}}; }
    json operator()(const SectionExit & x) const { return {{"type", "EXIT"}, {"section", x.section}}; }
    json operator()(const QuestionAsked & x) const
    {
      return {{"type", "QUESTION"}, {"param", x.param}, {"prompt", x.prompt}};
    }
    json operator()(const AnswerGiven & x) const
    {
      return {{"type", "ANSWER"}, {"param", x.param}, {"value", x.value}};
    }
    json operator()(const AdviceGiven & x) const
    {
      return {{"type", "ADVICE"}, {"section", x.section}, {"rule", x.rule_index}, {"text", x.text}};
    }
    json operator()(const Finished & x) const
    {
      json j = {{"type", "FINISHED"}, {"reason", std::string(to_string(x.reason))}};
      if (!x.detail.empty()) {
        j["detail"] = x.detail;
      }
      return j;
    }
    json operator()(const Warning & x) const { return {{"type", "WARNING"}, {"message", x.message}}; }
  };
  json events = json::array();
  for (const Event & e : t) {
    events.push_back(std::visit(Visitor{}, e));
  }
  return events;
}

namespace {

ServiceResponse error_response(int status, std::string code, std::string message)
{
  return ServiceResponse{status, {{"error", std::move(code)}, {"message", std::move(message)}}};
}

ServiceResponse not_found(const std::string & id)
{
  return error_response(404, "not_found", "no session '" + id + "'");
}

// Returns the string member `key` of a JSON object body, or nullopt.
std::optional<std::string> string_member(std::string_view body, const char * key)
{
  json j = json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object() || !j.contains(key) || !j[key].is_string()) {
    return std::nullopt;
  }
  return j[key].get<std::string>();
}

}  // namespace

SessionService::SessionService(KbRegistry registry, Clock::duration idle_timeout,
                               std::function<Clock::time_point()> now)
: registry_(std::move(registry)), idle_timeout_(idle_timeout), now_(std::move(now))
{
}

ServiceResponse SessionService::list_kbs() const
{
  json out = json::array();
  for (const auto & [name, kb] : registry_) {
    out.push_back({{"name", name}, {"title", kb->title()}});
  }
  return ServiceResponse{200, out};
}

std::string SessionService::new_id()
{
  thread_local std::random_device rd;
  static constexpr char kHex[] = "0123456789abcdef";
  std::string id;
  for (int i = 0; i < 4; ++i) {
    std::uint32_t word = rd();
    for (int b = 0; b < 4; ++b) {
      auto byte = static_cast<unsigned>((word >> (8 * b)) & 0xFF);
      id += kHex[byte >> 4];
      id += kHex[byte & 0xF];
    }
  }
  return id;
}

ServiceResponse SessionService::create_session(std::string_view body)
{
  std::optional<std::string> name = string_member(body, "kb");
  if (!name) {
    return error_response(400, "bad_request", "expected a JSON body {\"kb\": name}");
  }
  auto kb = registry_.find(*name);
  if (kb == registry_.end()) {
    return error_response(404, "not_found", "no knowledge base '" + *name + "'");
  }
  expire_idle();

  auto entry = std::make_shared<Entry>();
  entry->session.emplace(kb->second);
  entry->last_access = now_();
  std::string id;
  {
    std::lock_guard lock(mutex_);
    do {
      id = new_id();
    } while (sessions_.count(id));
    sessions_.emplace(id, entry);
  }
  std::lock_guard lock(entry->mutex);
  return ServiceResponse{201, session_view(id, *entry->session)};
}

std::shared_ptr<SessionService::Entry> SessionService::find(const std::string & id)
{
  expire_idle();
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  return it == sessions_.end() ? nullptr : it->second;
}

ServiceResponse SessionService::get_session(const std::string & id)
{
  auto entry = find(id);
  if (!entry) {
    return not_found(id);
  }
  std::lock_guard lock(entry->mutex);
  entry->last_access = now_();
  return ServiceResponse{200, session_view(id, *entry->session)};
}

ServiceResponse SessionService::post_answer(const std::string & id, std::string_view body)
{
  auto entry = find(id);
  if (!entry) {
    return not_found(id);
  }
  std::optional<std::string> value = string_member(body, "value");
  if (!value) {
    return error_response(400, "bad_request", "expected a JSON body {\"value\": text}");
  }
  std::lock_guard lock(entry->mutex);
  entry->last_access = now_();
  Session & session = *entry->session;
  AnswerResult r = session.submit_answer(*value);
  switch (r.kind) {
    case AnswerResult::Kind::accepted: return ServiceResponse{200, session_view(id, session)};
    case AnswerResult::Kind::session_finished:
      return error_response(409, "finished", r.message);
    case AnswerResult::Kind::invalid_answer: {
      ServiceResponse resp = error_response(422, "invalid_answer", r.message);
      resp.body["allowed"] = r.allowed;
      resp.body["param"] = session.pending_question()->param;
      return resp;
    }
  }
  return error_response(500, "internal", "unexpected answer outcome");
}

ServiceResponse SessionService::get_transcript(const std::string & id)
{
  auto entry = find(id);
  if (!entry) {
    return not_found(id);
  }
  std::lock_guard lock(entry->mutex);
  entry->last_access = now_();
  return ServiceResponse{200, transcript_json(entry->session->transcript())};
}

std::size_t SessionService::expire_idle()
{
  const Clock::time_point now = now_();
  std::lock_guard lock(mutex_);
  std::size_t removed = 0;
  for (auto it = sessions_.begin(); it != sessions_.end();) {
    std::unique_lock entry_lock(it->second->mutex, std::try_to_lock);
    if (entry_lock.owns_lock() && now - it->second->last_access > idle_timeout_) {
      entry_lock.unlock();
      it = sessions_.erase(it);
      ++removed;
    } else {
      ++it;
    }
  }
  return removed;
}

std::size_t SessionService::session_count() const
{
  std::lock_guard lock(mutex_);
  return sessions_.size();
}

}  // namespace ruleshell
