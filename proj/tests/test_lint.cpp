#include <random>

#include "doctest.h"
#include "ruleshell/builtin.hpp"
#include "ruleshell/lint.hpp"
#include "support/helpers.hpp"
#include "support/oracles.hpp"

using namespace ruleshell;
using ruleshell::testing::kb_from;

namespace {

std::vector<std::string> codes(const std::vector<Finding> & findings)
{
  std::vector<std::string> out;
  for (const auto & f : findings) {
    out.push_back(f.code);
  }
  return out;
}

std::vector<std::string> lint_codes(std::string_view src)
{
  return codes(lint(*kb_from(src)));
}

std::vector<std::string> error_codes(std::string_view src)
{
  std::vector<std::string> out;
  for (const auto & f : lint(*kb_from(src))) {
    if (f.is_error()) {
      out.push_back(f.code);
    }
  }
  return out;
}

}  // namespace

TEST_SUITE("lint")
{
  TEST_CASE("bundled KB is clean")
  {
    CHECK(lint(*builtin_kb()).empty());
  }

  TEST_CASE("empty KB reports only the missing start section")
  {
    auto findings = lint(KnowledgeBase{});
    REQUIRE(findings.size() == 1);
    CHECK(findings[0].code == "E100");
    CHECK(findings[0].is_error());
    CHECK(findings[0].span == Span{1, 1});
    CHECK(findings[0].message == "missing start section");
  }

  TEST_CASE("seeded fixtures yield exactly their error code")
  {
    using ruleshell::testing::read_text;
    using ruleshell::testing::source_path;
    CHECK(lint_codes(read_text(source_path("tests/fixtures/missing-start.kb"))) ==
          std::vector<std::string>{"E100"});
    CHECK(lint_codes(read_text(source_path("tests/fixtures/dangling-goto.kb"))) ==
          std::vector<std::string>{"E101"});
    auto undeclared = lint(*kb_from(read_text(source_path("tests/fixtures/undeclared-value.kb"))));
    REQUIRE(codes(undeclared) == std::vector<std::string>{"E104"});
    CHECK(undeclared[0].span == Span{8, 19});
    CHECK(undeclared[0].subject == "diabetesop");
  }

  TEST_CASE("E101 goto target undefined")
  {
    auto f = lint(*kb_from("section start { always do goto nowhere }"));
    REQUIRE(codes(f) == std::vector<std::string>{"E101"});
    CHECK(f[0].span == Span{1, 32});
    CHECK(f[0].subject == "nowhere");
  }

  TEST_CASE("E102 undefined parameter in conditions and set")
  {
    CHECK(lint_codes("section start { if ghost do stop }") == std::vector<std::string>{"E102"});
    CHECK(lint_codes("section start { if ghost = 1 do stop }") == std::vector<std::string>{"E102"});
    CHECK(lint_codes("section start { always do set ghost := 1 }") ==
          std::vector<std::string>{"E102"});
  }

  TEST_CASE("E103 type mismatches")
  {
    const std::string params = R"(
parameter n: number
parameter t: text
parameter b: boolean
parameter c: category values x
)";
    auto check = [&](const std::string & rule, std::vector<std::string> expected) {
      CHECK_MESSAGE(error_codes(params + "section start { " + rule + " }") == expected, rule);
    };
    check("if n do stop", {"E103"});
    check("if t do stop", {"E103"});
    check("if c do stop", {"E103"});
    check("if b do stop", {});
    check("if t < \"a\" do stop", {"E103"});
    check("if c >= x do stop", {"E103"});
    check("if b > true do stop", {"E103"});
    check("if n < 3 and n >= -1 do stop", {});
    check("if n = \"3\" do stop", {"E103"});
    check("if t = 3 do stop", {"E103"});
    check("if t = x do stop", {"E103"});
    check("if b = x do stop", {"E103"});
    check("if c = \"x\" do stop", {"E103"});
    check("if c = true do stop", {"E103"});
    check("if t <> \"x\" and b = false and c = x do stop", {});
    check("always do set n := \"1\"", {"E103"});
    check("always do set b := 1", {"E103"});
    check("always do set c := x, set t := \"s\", set n := 2, set b := true", {});
  }

  TEST_CASE("E104 undeclared category value in a comparison or set")
  {
    const std::string params = "parameter c: category values x, y\n";
    CHECK(lint_codes(params + "section start { if c = z do stop }") ==
          std::vector<std::string>{"E104"});
    CHECK(lint_codes(params + "section start { always do set c := z }") ==
          std::vector<std::string>{"E104"});
    CHECK(lint_codes(params + "section start { if c = X do stop }") ==
          std::vector<std::string>{"E104"});
  }

  TEST_CASE("warnings")
  {
    auto f = lint(*kb_from(R"(parameter unused: boolean
section start { always do goto empty }
section empty { }
section island { always do stop }
)"));
    REQUIRE(codes(f) == std::vector<std::string>{"W201", "W202", "W200"});
    CHECK(f[0].severity == Severity::warning);
    CHECK(f[0].subject == "unused");
    CHECK(f[1].subject == "empty");
    CHECK(f[2].subject == "island");
  }

  TEST_CASE("findings are ordered by position, then code")
  {
    auto f = lint(*kb_from("section island { }\nsection start { if ghost do goto nowhere }"));
    CHECK(codes(f) == std::vector<std::string>{"W200", "W202", "E102", "E101"});
  }

  TEST_CASE("missing start makes every section unreachable")
  {
    auto kb = kb_from("section a { always do goto b }\nsection b { always do stop }");
    CHECK(reachable_sections(*kb).empty());
    CHECK(lint_codes("section a { always do goto b }\nsection b { always do stop }") ==
          std::vector<std::string>{"E100", "W200", "W200"});
  }

  TEST_CASE("reachable_sections on the bundled KB")
  {
    CHECK(reachable_sections(*builtin_kb()) ==
          std::set<std::string>{"start", "causeofdiabetes", "diabetesoption",
                                "treatdiabetesnatural", "treatdiabetesacupuncture",
                                "treatdiabeteshomeopathic", "treatdiabetesmassage",
                                "treatdiabetesgems"});
  }

  TEST_CASE("reachable_sections with only start")
  {
    CHECK(reachable_sections(*kb_from("section start { always do stop }")) ==
          std::set<std::string>{"start"});
  }

  TEST_CASE("reachability ignores conditions and follows cycles")
  {
    auto kb = kb_from(R"(section start { if false do goto a }
section a { always do goto b }
section b { always do goto a, goto start }
section c { always do goto a })");
    CHECK(reachable_sections(*kb) == std::set<std::string>{"start", "a", "b"});
  }

  TEST_CASE("reachable_sections agrees with BFS on random graphs")
  {
    std::mt19937 rng(2024);
    for (int iter = 0; iter < 300; ++iter) {
      int n = std::uniform_int_distribution<int>(1, 12)(rng);
      std::vector<std::vector<int>> edges(n);
      KnowledgeBase::Builder b;
      for (int i = 0; i < n; ++i) {
        Section s{i == 0 ? "start" : "s" + std::to_string(i), {}, {}};
        int ne = std::uniform_int_distribution<int>(0, 3)(rng);
        for (int e = 0; e < ne; ++e) {
          int target = std::uniform_int_distribution<int>(0, n - 1)(rng);
          edges[i].push_back(target);
          Rule r{Condition::make_false(), {}, {}};
          r.actions.push_back(Action{GotoAction{target == 0 ? "start" : "s" + std::to_string(target)}, {}});
          s.rules.push_back(std::move(r));
        }
        b.add_section(std::move(s));
      }
      KnowledgeBase kb = std::move(b).build();
      std::set<std::string> expected;
      for (int i : ruleshell::testing::bfs(edges)) {
        expected.insert(i == 0 ? "start" : "s" + std::to_string(i));
      }
      CHECK(reachable_sections(kb) == expected);

      // W200 exactly for unreachable non-start sections.
      auto findings = lint(kb);
      for (const Section & s : kb.sections()) {
        bool flagged = std::any_of(findings.begin(), findings.end(), [&](const Finding & f) {
          return f.code == "W200" && f.subject == s.name;
        });
        CHECK(flagged == (s.name != "start" && !expected.count(s.name)));
      }
    }
  }

  TEST_CASE("lint is deterministic")
  {
    ruleshell::testing::KbSourceGenerator gen(5);
    for (int i = 0; i < 50; ++i) {
      auto kb = kb_from(gen.generate());
      auto first = lint(*kb);
      auto second = lint(*kb);
      REQUIRE(first.size() == second.size());
      for (std::size_t k = 0; k < first.size(); ++k) {
        CHECK(render(first[k], "f") == render(second[k], "f"));
      }
    }
  }
}
