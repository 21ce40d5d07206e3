// Command-line driver: reads a JSON job spec, writes a JSON report and
// optional DOT diagrams.

#include <omp.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ttpybo/jobs.hpp"

namespace {

const char* const kCommands[] = {"verify",      "enumerate", "orbits",  "spectrum",    "center",     "fixed-dim",
                                 "bratteli",    "fusion",    "compare", "image-order", "survey-z3z3"};

struct Flags {
  std::string spec;
  std::string out;
  std::string dot;
  int threads = 0;
  std::uint64_t budget = 0;
  int digits = 0;
};

int fail(const std::string& kind, const std::string& msg, int code) {
  ttpybo::jobs::Json err{{"version", ttpybo::jobs::kVersion},
                         {"error", {{"kind", kind}, {"message", msg}}},
                         {"exit_code", code}};
  std::cout << err.dump(2) << '\n';
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace ttpybo::jobs;
  CLI::App app{"Twisted tensor product Yang-Baxter operator toolkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Flags flags;
  for (const char* name : kCommands) {
    auto* sub = app.add_subcommand(name, std::string("run a ") + name + " job");
    sub->add_option("--spec", flags.spec, "job spec file, '-' for stdin")->required();
    sub->add_option("--out", flags.out, "report file (default stdout)");
    sub->add_option("--dot", flags.dot, "directory for DOT diagrams");
    sub->add_option("--threads", flags.threads, "OpenMP threads")->check(CLI::Range(1, 1024));
    sub->add_option("--budget", flags.budget, "candidate budget")->check(CLI::PositiveNumber);
    sub->add_option("--digits", flags.digits, "digits in approximate values")->check(CLI::Range(1, 90));
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : ExitCode::validation;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  if (flags.threads > 0) omp_set_num_threads(flags.threads);

  Json spec;
  try {
    std::stringstream buf;
    if (flags.spec == "-") {
      buf << std::cin.rdbuf();
    } else {
      std::ifstream in(flags.spec);
      if (!in) return fail("validation", "cannot read spec file " + flags.spec, ExitCode::validation);
      buf << in.rdbuf();
    }
    spec = Json::parse(buf.str());
  } catch (const Json::parse_error& e) {
    return fail("validation", std::string("malformed JSON: ") + e.what(), ExitCode::validation);
  }
  if (!spec.is_object()) return fail("validation", "spec must be a JSON object", ExitCode::validation);
  if (!spec.contains("command")) spec["command"] = command;
  if (spec["command"] != command)
    return fail("validation", "spec command '" + spec["command"].dump() + "' does not match subcommand " + command,
                ExitCode::validation);

  RunOptions opts;
  if (flags.budget > 0) opts.budget = flags.budget;
  if (flags.digits > 0) opts.digits = flags.digits;
  JobResult res = run(spec, opts);

  const std::string text = res.report.dump(2) + "\n";
  if (flags.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(flags.out);
    if (!out) return fail("other", "cannot write " + flags.out, ExitCode::other);
    out << text;
  }
  if (!flags.dot.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(flags.dot, ec);
    for (const auto& d : res.dots) {
      std::ofstream f(std::filesystem::path(flags.dot) / (d.name + ".dot"));
      if (!f) return fail("other", "cannot write DOT file " + d.name, ExitCode::other);
      f << d.text;
    }
  }
  return res.exit_code;
}
