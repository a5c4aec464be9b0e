#include <atomic>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "ruleshell/builtin.hpp"
#include "ruleshell/service.hpp"
#include "support/helpers.hpp"

using namespace ruleshell;
using nlohmann::json;

namespace {

KbRegistry builtin_registry()
{
  return KbRegistry{{std::string(kBuiltinKbName), builtin_kb()}};
}

std::string create(SessionService & svc)
{
  ServiceResponse r = svc.create_session(R"({"kb":"sanjeevani"})");
  REQUIRE(r.status == 201);
  return r.body["id"].get<std::string>();
}

std::string answer_body(const std::string & v)
{
  return json{{"value", v}}.dump();
}

// Canonical transcript text rebuilt from the JSON event array.
std::string render_json_transcript(const json & events)
{
  std::string out;
  for (const json & e : events) {
    std::vector<std::string> fields{e["type"].get<std::string>()};
    const std::string type = fields[0];
    if (type == "ENTER" || type == "EXIT") {
      fields.push_back(e["section"]);
    } else if (type == "QUESTION") {
      fields.push_back(e["param"]);
      fields.push_back(e["prompt"]);
    } else if (type == "ANSWER") {
      fields.push_back(e["param"]);
      fields.push_back(e["value"]);
    } else if (type == "ADVICE") {
      fields.push_back(e["section"]);
      fields.push_back(std::to_string(e["rule"].get<int>()));
      fields.push_back(e["text"]);
    } else if (type == "FINISHED") {
      fields.push_back(e["reason"]);
      if (e.contains("detail")) {
        fields.push_back(e["detail"]);
      }
    }
    for (std::size_t i = 0; i < fields.size(); ++i) {
      out += (i ? "\t" : "") + escape_field(fields[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace

TEST_SUITE("service")
{
  TEST_CASE("list knowledge bases")
  {
    SessionService svc(builtin_registry());
    ServiceResponse r = svc.list_kbs();
    CHECK(r.status == 200);
    CHECK(r.body == json::parse(R"([{"name":"sanjeevani","title":"Sanjeevani"}])"));
  }

  TEST_CASE("create a session on the bundled KB")
  {
    SessionService svc(builtin_registry());
    ServiceResponse r = svc.create_session(R"({"kb":"sanjeevani"})");
    CHECK(r.status == 201);
    CHECK(r.body["status"] == "awaiting_answer");
    CHECK(r.body["question"]["param"] == "disease");
    CHECK(r.body["question"]["ptype"] == "category");
    CHECK(r.body["question"]["values"] == json::array({"diabetes"}));
    CHECK(r.body["advice"] == json::array());
    CHECK(r.body["finished_reason"].is_null());
  }

  TEST_CASE("unknown KB and malformed bodies")
  {
    SessionService svc(builtin_registry());
    CHECK(svc.create_session(R"({"kb":"nope"})").status == 404);
    CHECK(svc.create_session("not json").status == 400);
    CHECK(svc.create_session(R"({"kb":3})").status == 400);
    CHECK(svc.create_session("[]").status == 400);
  }

  TEST_CASE("session ids are distinct 128-bit hex tokens")
  {
    SessionService svc(builtin_registry());
    std::set<std::string> ids;
    for (int i = 0; i < 200; ++i) {
      std::string id = create(svc);
      CHECK(id.size() == 32);
      CHECK(id.find_first_not_of("0123456789abcdef") == std::string::npos);
      ids.insert(id);
    }
    CHECK(ids.size() == 200);
    CHECK(svc.session_count() == 200);
  }

  TEST_CASE("answer flow, validation and conflict")
  {
    SessionService svc(builtin_registry());
    std::string id = create(svc);

    ServiceResponse next = svc.post_answer(id, answer_body("diabetes"));
    CHECK(next.status == 200);
    CHECK(next.body["question"]["param"] == "diabetesop");
    CHECK(next.body["question"]["values"].size() == 5);
    CHECK(next.body["advice"].size() == 2);

    ServiceResponse invalid = svc.post_answer(id, answer_body("surgery"));
    CHECK(invalid.status == 422);
    CHECK(invalid.body["allowed"] ==
          json::array({"naturalcare", "acupuncture", "homeopathic", "massage", "gems"}));
    CHECK(invalid.body["param"] == "diabetesop");
    CHECK(svc.get_session(id).body == next.body);

    ServiceResponse done = svc.post_answer(id, answer_body("naturalcare"));
    CHECK(done.status == 200);
    CHECK(done.body["status"] == "finished");
    CHECK(done.body["question"].is_null());
    CHECK(done.body["finished_reason"] == "completed");
    CHECK(done.body["advice"].size() == 4);

    CHECK(svc.post_answer(id, answer_body("gems")).status == 409);
    CHECK(svc.post_answer(id, "{}").status == 400);
    CHECK(svc.post_answer("deadbeef", answer_body("x")).status == 404);
    CHECK(svc.get_session("deadbeef").status == 404);
    CHECK(svc.get_transcript("deadbeef").status == 404);
  }

  TEST_CASE("GET is idempotent")
  {
    SessionService svc(builtin_registry());
    std::string id = create(svc);
    svc.post_answer(id, answer_body("diabetes"));
    json first = svc.get_session(id).body;
    json transcript = svc.get_transcript(id).body;
    for (int i = 0; i < 5; ++i) {
      CHECK(svc.get_session(id).body == first);
      CHECK(svc.get_transcript(id).body == transcript);
    }
  }

  TEST_CASE("transcript endpoint mirrors the scripted CLI transcript")
  {
    SessionService svc(builtin_registry());
    std::string id = create(svc);
    svc.post_answer(id, answer_body("diabetes"));
    svc.post_answer(id, answer_body("naturalcare"));
    ServiceResponse t = svc.get_transcript(id);
    CHECK(t.status == 200);
    CHECK(render_json_transcript(t.body) ==
          ruleshell::testing::read_text(ruleshell::testing::source_path("golden/naturalcare.txt")));
  }

  TEST_CASE("idle sessions expire")
  {
    auto now = SessionService::Clock::time_point{};
    SessionService svc(builtin_registry(), std::chrono::minutes(30), [&] { return now; });
    std::string old_id = create(svc);
    now += std::chrono::minutes(20);
    std::string fresh_id = create(svc);
    now += std::chrono::minutes(15);
    // old_id has been idle 35 minutes, fresh_id 15.
    CHECK(svc.expire_idle() == 1);
    CHECK(svc.get_session(old_id).status == 404);
    CHECK(svc.get_session(fresh_id).status == 200);
    now += std::chrono::minutes(29);
    CHECK(svc.get_session(fresh_id).status == 200);  // access refreshes the idle clock
    now += std::chrono::minutes(31);
    CHECK(svc.get_session(fresh_id).status == 404);
    CHECK(svc.session_count() == 0);
  }

  TEST_CASE("concurrent answers to one session serialize")
  {
    SessionService svc(builtin_registry());
    for (int round = 0; round < 20; ++round) {
      std::string id = create(svc);
      svc.post_answer(id, answer_body("diabetes"));
      std::atomic<int> ok{0};
      std::atomic<int> conflict{0};
      std::vector<std::thread> threads;
      for (int i = 0; i < 4; ++i) {
        threads.emplace_back([&] {
          int status = svc.post_answer(id, answer_body("massage")).status;
          (status == 200 ? ok : conflict)++;
        });
      }
      for (auto & t : threads) {
        t.join();
      }
      CHECK(ok == 1);
      CHECK(conflict == 3);
      json events = svc.get_transcript(id).body;
      int answers = 0;
      for (const auto & e : events) {
        answers += e["type"] == "ANSWER";
      }
      CHECK(answers == 2);
    }
  }

  TEST_CASE("load_registry skips broken files and keeps the bundled KB")
  {
    auto dir = std::filesystem::temp_directory_path() / "ruleshell_registry_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "good.kb") << "title \"Good\"\nsection start { always do stop }\n";
    std::ofstream(dir / "broken.kb") << "section nostart { always do stop }\n";
    std::ofstream(dir / "notes.txt") << "ignored";
    std::ostringstream log;
    KbRegistry reg = load_registry(dir, log);
    CHECK(reg.size() == 2);
    CHECK(reg.count("good"));
    CHECK(reg.count("sanjeevani"));
    CHECK(log.str().find("E100") != std::string::npos);
    CHECK(log.str().find("skipping") != std::string::npos);

    std::ostringstream log2;
    KbRegistry fallback = load_registry(dir / "missing", log2);
    CHECK(fallback.size() == 1);
    CHECK(log2.str().find("not found") != std::string::npos);
  }

  TEST_CASE("HTTP routes")
  {
    SessionService svc(builtin_registry());
    httplib::Server server;
    auto web = std::filesystem::temp_directory_path() / "ruleshell_web_test";
    std::filesystem::create_directories(web);
    std::ofstream(web / "index.html") << "<html>consult</html>";
    install_routes(server, svc, web);
    int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    std::thread listener([&] { server.listen_after_bind(); });
    server.wait_until_ready();

    httplib::Client client("127.0.0.1", port);
    auto kbs = client.Get("/api/kbs");
    REQUIRE(kbs);
    CHECK(kbs->status == 200);
    CHECK(json::parse(kbs->body)[0]["name"] == "sanjeevani");

    auto created = client.Post("/api/sessions", R"({"kb":"sanjeevani"})", "application/json");
    REQUIRE(created);
    CHECK(created->status == 201);
    std::string id = json::parse(created->body)["id"];

    CHECK(client.Post("/api/sessions", R"({"kb":"nope"})", "application/json")->status == 404);

    auto bad = client.Post("/api/sessions/" + id + "/answer", answer_body("flu"), "application/json");
    CHECK(bad->status == 422);
    CHECK(json::parse(bad->body)["allowed"] == json::array({"diabetes"}));

    for (const char * v : {"diabetes", "naturalcare"}) {
      auto r = client.Post("/api/sessions/" + id + "/answer", answer_body(v), "application/json");
      REQUIRE(r);
      CHECK(r->status == 200);
    }
    auto state = client.Get("/api/sessions/" + id);
    CHECK(json::parse(state->body)["status"] == "finished");
    CHECK(client.Post("/api/sessions/" + id + "/answer", answer_body("gems"), "application/json")->status ==
          409);
    CHECK(client.Get("/api/sessions/ffff")->status == 404);

    auto transcript = client.Get("/api/sessions/" + id + "/transcript");
    REQUIRE(transcript);
    CHECK(transcript->status == 200);
    CHECK(render_json_transcript(json::parse(transcript->body)) ==
          ruleshell::testing::read_text(ruleshell::testing::source_path("golden/naturalcare.txt")));

    auto index = client.Get("/index.html");
    REQUIRE(index);
    CHECK(index->body == "<html>consult</html>");

    server.stop();
    listener.join();
  }
}
