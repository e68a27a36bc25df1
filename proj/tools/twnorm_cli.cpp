#include <iostream>

#include "CLI11.hpp"
#include "twnorm/report.hpp"

using namespace twnorm;

int main(int argc, char** argv) {
  CLI::App app{"Twisted norm correspondence GL_n -> SO_{2m+1}: sections, norms, factorizations, oracle suites"};
  app.require_subcommand(1, 1);
  app.set_help_flag("--help", "Print this help message and exit");
  Command cmd;
  std::size_t n = 0, m = 0;
  std::string format = "structured";

  for (const std::string& verb : verbs()) {
    CLI::App* sub = app.add_subcommand(verb);
    sub->set_help_flag("--help", "Print this help message and exit");
    sub->add_option("--field", cmd.field, "Q, Fp or Fp^2; verify accepts a comma list");
    sub->add_option("--n", n, "GL_n size");
    sub->add_option("--m", m, "target SO_{2m+1}");
    sub->add_option("--h", cmd.h, "target matrix, rows separated by ';'");
    sub->add_option("--x", cmd.x, "X matrix");
    sub->add_option("--y", cmd.y, "Y matrix");
    sub->add_option("--suite", cmd.suite, "verification suite");
    sub->add_option("--input", cmd.input, "prior structured document (report)");
    sub->add_option("--budget", cmd.budget, "enumeration budget");
    sub->add_option("--seed", cmd.seed, "random seed");
    sub->add_option("--out", cmd.out, "output path, stdout when absent");
    sub->add_option("--format", format, "structured or text")->check(CLI::IsMember({"structured", "text"}));
    sub->callback([&, verb, sub] {
      cmd.verb = verb;
      if (sub->count("--n")) cmd.n = n;
      if (sub->count("--m")) cmd.m = m;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    Command bad;
    bad.verb = argc > 1 ? argv[1] : "";
    RunResult res = run(bad);
    res.doc["error"] = {{"kind", to_string(ErrorKind::ParseError)},
                        {"code", static_cast<int>(ErrorKind::ParseError)},
                        {"message", e.what()}};
    emit_report(res.doc, Format::Structured, "");
    return static_cast<int>(ErrorKind::ParseError);
  }
  cmd.format = format == "text" ? Format::Text : Format::Structured;

  RunResult res = run(cmd);
  try {
    emit_report(res.doc, cmd.format, cmd.out);
  } catch (const Error& e) {
    res.doc["results"] = nullptr;
    res.doc["error"] = {{"kind", to_string(e.kind())}, {"code", static_cast<int>(e.kind())}, {"message", e.what()}};
    emit_report(res.doc, cmd.format, "");
    return static_cast<int>(e.kind());
  }
  return res.exit_code;
}
