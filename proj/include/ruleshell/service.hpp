#pragma once

#include <chrono>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <unordered_map>

#include "json.hpp"
#include "ruleshell/engine.hpp"
#include "ruleshell/model.hpp"

namespace httplib {
class Server;
}

namespace ruleshell {

using KbRegistry = std::map<std::string, std::shared_ptr<const KnowledgeBase>>;

/// Loads every lint-clean `*.kb` file in `dir`, keyed by file stem. Files
/// with errors are reported on `log` and skipped. The bundled KB is added
/// under its own name unless a file already provides it.
KbRegistry load_registry(const std::filesystem::path & dir, std::ostream & log);

/// A status code and JSON body, independent of the HTTP transport.
struct ServiceResponse
{
  int status = 200;
  nlohmann::json body;
};

nlohmann::json session_view(const std::string & id, const Session & s);
nlohmann::json transcript_json(const Transcript & t);

/// In-memory consultation sessions over an immutable KB registry.
///
/// Thread-safe. Each session has its own lock, so answers to one session are
/// serialized while different sessions proceed in parallel. Sessions idle for
/// longer than the timeout are dropped.
class SessionService
{
public:
  using Clock = std::chrono::steady_clock;

  explicit SessionService(KbRegistry registry,
                          Clock::duration idle_timeout = std::chrono::minutes(30),
                          std::function<Clock::time_point()> now = &Clock::now);

  ServiceResponse list_kbs() const;
  /// Body: {"kb": name}. 201 with the session view.
  ServiceResponse create_session(std::string_view body);
  ServiceResponse get_session(const std::string & id);
  /// Body: {"value": text}. 200, 404, 409 once finished, 422 for invalid values.
  ServiceResponse post_answer(const std::string & id, std::string_view body);
  ServiceResponse get_transcript(const std::string & id);

  /// Drops idle sessions; returns how many were removed.
  std::size_t expire_idle();
  std::size_t session_count() const;

private:
  struct Entry
  {
    std::mutex mutex;
    std::optional<Session> session;  // constructed once, under `mutex`
    Clock::time_point last_access;
  };

  std::shared_ptr<Entry> find(const std::string & id);
  std::string new_id();

  const KbRegistry registry_;
  const Clock::duration idle_timeout_;
  const std::function<Clock::time_point()> now_;

  mutable std::mutex mutex_;
  std::unordered_map<std::string, std::shared_ptr<Entry>> sessions_;
};

/// Registers the /api routes on `server`, and serves `web_root` at `/` when
/// it is set.
void install_routes(httplib::Server & server, SessionService & service,
                    const std::optional<std::filesystem::path> & web_root);

}  // namespace ruleshell
