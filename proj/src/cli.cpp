#include "ruleshell/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "httplib.h"
#include "ruleshell/engine.hpp"
#include "ruleshell/format.hpp"
#include "ruleshell/parser.hpp"
#include "ruleshell/service.hpp"

namespace ruleshell {

namespace {

std::optional<std::string> read_file(const std::string & path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    return std::nullopt;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// One answer per line; a final newline does not start another answer.
std::vector<std::string> split_answers(const std::string & text)
{
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string line = text.substr(start, nl == std::string::npos ? std::string::npos : nl - start);
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    lines.push_back(std::move(line));
    if (nl == std::string::npos) {
      break;
    }
    start = nl + 1;
  }
  return lines;
}

struct Loaded
{
  std::shared_ptr<const KnowledgeBase> kb;
  bool has_errors = false;
};

// Parses and lints `path`, printing every diagnostic to `err`. Lint only runs
// on a KB that parsed cleanly.
Loaded load_kb(const std::string & path, std::ostream & err)
{
  std::optional<std::string> source = read_file(path);
  if (!source) {
    err << path << ": cannot read file\n";
    return Loaded{nullptr, true};
  }
  ParseResult parsed = parse_kb(*source);
  std::vector<Diagnostic> diagnostics = parsed.diagnostics;
  if (parsed.ok()) {
    std::vector<Finding> findings = lint(parsed.kb);
    diagnostics.insert(diagnostics.end(), findings.begin(), findings.end());
  }
  for (const Diagnostic & d : diagnostics) {
    err << render(d, path) << '\n';
  }
  return Loaded{std::make_shared<const KnowledgeBase>(std::move(parsed.kb)),
                ruleshell::has_errors(diagnostics)};
}

int cmd_check(const std::string & file, std::ostream & err)
{
  return load_kb(file, err).has_errors ? kExitFailure : kExitOk;
}

int cmd_fmt(const std::string & file, std::ostream & out, std::ostream & err)
{
  std::optional<std::string> source = read_file(file);
  if (!source) {
    err << file << ": cannot read file\n";
    return kExitFailure;
  }
  ParseResult parsed = parse_kb(*source);
  for (const Diagnostic & d : parsed.diagnostics) {
    err << render(d, file) << '\n';
  }
  if (!parsed.ok()) {
    return kExitFailure;
  }
  out << format_kb(parsed.kb);
  return kExitOk;
}

int cmd_run(const std::string & file, const std::string & answers_file, std::ostream & out,
            std::ostream & err)
{
  Loaded loaded = load_kb(file, err);
  if (loaded.has_errors) {
    return kExitFailure;
  }
  std::optional<std::string> answers = read_file(answers_file);
  if (!answers) {
    err << answers_file << ": cannot read file\n";
    return kExitFailure;
  }
  Transcript t = run_scripted(loaded.kb, split_answers(*answers));
  out << render_transcript(t);
  for (const Event & e : t) {
    if (const auto * f = std::get_if<Finished>(&e); f && f->reason == FinishReason::error) {
      err << file << ": consultation failed: " << f->detail << '\n';
      return kExitFailure;
    }
  }
  return kExitOk;
}

int cmd_consult(const std::string & file, std::istream & in, std::ostream & out,
                std::ostream & err)
{
  Loaded loaded = load_kb(file, err);
  if (loaded.has_errors) {
    return kExitFailure;
  }
  if (!loaded.kb->title().empty()) {
    out << loaded.kb->title() << "\n\n";
  }
  Session session = start_session(loaded.kb);
  std::size_t shown = 0;
  auto show_advice = [&] {
    std::vector<std::string> advice = session.advice();
    for (; shown < advice.size(); ++shown) {
      out << advice[shown] << "\n\n";
    }
  };
  show_advice();
  while (const Question * q = session.pending_question()) {
    out << q->prompt << '\n';
    if (q->type == ParamType::category) {
      out << "  choices:";
      for (const std::string & v : q->values) {
        out << ' ' << v;
      }
      out << '\n';
    } else if (q->type == ParamType::boolean) {
      out << "  (yes/no)\n";
    }
    out << "> " << std::flush;
    std::string line;
    if (!std::getline(in, line)) {
      out << '\n';
      session.abort("input closed");
      break;
    }
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    AnswerResult r = session.submit_answer(line);
    if (!r.ok()) {
      out << r.message << '\n';
      continue;
    }
    out << '\n';
    show_advice();
  }
  const Finished & f = *session.finish();
  switch (f.reason) {
    case FinishReason::completed: out << "Consultation complete.\n"; return kExitOk;
    case FinishReason::stopped: out << "Consultation stopped.\n"; return kExitOk;
    case FinishReason::error: break;
  }
  err << file << ": consultation failed: " << f.detail << '\n';
  return kExitFailure;
}

int cmd_serve(const std::string & host, int port, const std::string & kb_dir,
              const std::string & web_root, std::ostream & out, std::ostream & err)
{
  SessionService service(load_registry(kb_dir, err));
  httplib::Server server;
  std::optional<std::filesystem::path> root;
  if (!web_root.empty() && std::filesystem::is_directory(web_root)) {
    root = web_root;
  }
  install_routes(server, service, root);
  out << "listening on http://" << host << ':' << port << std::endl;
  if (!server.listen(host, port)) {
    err << "cannot listen on " << host << ':' << port << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> & args, std::istream & in, std::ostream & out,
            std::ostream & err)
{
  CLI::App app{"Rule-based expert system shell", "ruleshell"};
  app.require_subcommand(1);

  std::string file;
  std::string answers_file;
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string kb_dir = "kbs";
  std::string web_root = "web";

  auto * check = app.add_subcommand("check", "Parse and lint a knowledge base");
  check->add_option("file", file, "Knowledge base (.kb)")->required();
  auto * fmt = app.add_subcommand("fmt", "Print a knowledge base in canonical form");
  fmt->add_option("file", file, "Knowledge base (.kb)")->required();
  auto * consult = app.add_subcommand("consult", "Run an interactive consultation");
  consult->add_option("file", file, "Knowledge base (.kb)")->required();
  auto * run = app.add_subcommand("run", "Replay answers and print the transcript");
  run->add_option("file", file, "Knowledge base (.kb)")->required();
  run->add_option("--answers", answers_file, "File with one answer per line")->required();
  auto * serve = app.add_subcommand("serve", "Serve the HTTP session API");
  serve->add_option("--port", port, "Port to listen on")->capture_default_str();
  serve->add_option("--host", host, "Address to bind")->capture_default_str();
  serve->add_option("--kb-dir", kb_dir, "Directory of .kb files")->capture_default_str();
  serve->add_option("--web-root", web_root, "Static files served at /")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError & e) {
    err << e.what() << "\n\n" << app.help();
    return kExitUsage;
  }

  if (check->parsed()) {
    return cmd_check(file, err);
  }
  if (fmt->parsed()) {
    return cmd_fmt(file, out, err);
  }
  if (consult->parsed()) {
    return cmd_consult(file, in, out, err);
  }
  if (run->parsed()) {
    return cmd_run(file, answers_file, out, err);
  }
  return cmd_serve(host, port, kb_dir, web_root, out, err);
}

}  // namespace ruleshell
