#include "httplib.h"
#include "ruleshell/service.hpp"

namespace ruleshell {

namespace {

void send(httplib::Response & res, const ServiceResponse & r)
{
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

}  // namespace

void install_routes(httplib::Server & server, SessionService & service,
                    const std::optional<std::filesystem::path> & web_root)
{
  server.Get("/api/kbs",
             [&service](const httplib::Request &, httplib::Response & res) {
               send(res, service.list_kbs());
             });
  server.Post("/api/sessions", [&service](const httplib::Request & req, httplib::Response & res) {
    send(res, service.create_session(req.body));
  });
  server.Get(R"(/api/sessions/([0-9A-Za-z_-]+))",
             [&service](const httplib::Request & req, httplib::Response & res) {
               send(res, service.get_session(req.matches[1]));
             });
  server.Post(R"(/api/sessions/([0-9A-Za-z_-]+)/answer)",
              [&service](const httplib::Request & req, httplib::Response & res) {
                send(res, service.post_answer(req.matches[1], req.body));
              });
  server.Get(R"(/api/sessions/([0-9A-Za-z_-]+)/transcript)",
             [&service](const httplib::Request & req, httplib::Response & res) {
               send(res, service.get_transcript(req.matches[1]));
             });
  if (web_root) {
    server.set_mount_point("/", web_root->string());
  }
}

}  // namespace ruleshell
