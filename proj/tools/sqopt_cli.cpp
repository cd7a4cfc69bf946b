// Command-line front end. Talks to the library only through sqopt.h.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "sqopt/sqopt.h"

namespace {

constexpr int kConfigExit = 64;
constexpr int kComputeExit = 70;

struct Args {
  std::string config;
  std::string case_id;
  double tol = 0.0;
  long long seed = -1;
  std::string plot;
  std::string report;
  bool list = false;
};

bool read_file(const std::string& path, std::string& out) {
  std::ifstream f(path, std::ios::binary);
  if (!f) return false;
  std::ostringstream ss;
  ss << f.rdbuf();
  out = ss.str();
  return true;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) return false;
  f << text;
  return static_cast<bool>(f);
}

int run(const std::string& command, const Args& a) {
  if (command == "corpus" && a.list) {
    std::cout << sqo_corpus_list();
    return 0;
  }
  std::string config;
  if (!a.config.empty() && !read_file(a.config, config)) {
    std::cerr << "error: cannot read config " << a.config << "\n";
    return kConfigExit;
  }
  if (a.config.empty() && command != "corpus") {
    std::cerr << "error: " << command << " needs --config\n";
    return kConfigExit;
  }
  std::string options;
  if (!a.case_id.empty()) options += "case=\"" + a.case_id + "\" ";
  if (a.tol > 0) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "tol=%.17g ", a.tol);
    options += buf;
  }
  if (a.seed >= 0) options += "seed=" + std::to_string(a.seed) + " ";
  if (!a.plot.empty()) options += "plot=1";

  sqo_report* report = nullptr;
  if (sqo_run(command.c_str(), config.c_str(), options.c_str(), &report) != SQO_OK) {
    std::cerr << "error: " << sqo_last_error() << "\n";
    return kConfigExit;
  }
  int code = sqo_report_exit_code(report);
  std::string json = sqo_report_json(report);
  std::string svg = sqo_report_svg(report);
  std::cerr << command << ": " << sqo_report_summary(report) << "\n";
  sqo_report_destroy(report);

  if (a.report.empty()) {
    std::cout << json;
  } else if (!write_file(a.report, json)) {
    std::cerr << "error: cannot write report " << a.report << "\n";
    return kComputeExit;
  }
  if (!a.plot.empty()) {
    if (svg.empty()) {
      std::cerr << "note: " << command << " has no picture for this input\n";
    } else if (!write_file(a.plot, svg)) {
      std::cerr << "error: cannot write plot " << a.plot << "\n";
      return kComputeExit;
    }
  }
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strong subdifferentials, normal cones and multiplier certificates"};
  app.require_subcommand(1);
  Args args;
  struct Cmd {
    const char* name;
    const char* help;
  };
  const Cmd cmds[] = {
      {"subdiff", "strong and classical subdifferentials of a catalog function"},
      {"convexity", "strong quasiconvexity check or modulus estimate on a region"},
      {"normalcone", "normal cone of a constraint system and its estimates"},
      {"certify", "search for FJ/KKT multipliers and check growth (exit 0 KKT, 1 FJ, 2 none, 3 precondition)"},
      {"penalize", "penalization sequence at a point"},
      {"corpus", "run the built-in worked cases (exit 0 when all pass)"},
  };
  for (const Cmd& c : cmds) {
    CLI::App* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--config", args.config, "INI configuration file");
    sub->add_option("--case", args.case_id, "corpus case id");
    sub->add_option("--tol", args.tol, "tolerance override")->check(CLI::PositiveNumber);
    sub->add_option("--seed", args.seed, "sampling seed")->check(CLI::NonNegativeNumber);
    sub->add_option("--plot", args.plot, "write an SVG picture here");
    sub->add_option("--report", args.report, "write the JSON report here (default stdout)");
    if (std::string(c.name) == "corpus") sub->add_flag("--list", args.list, "print case ids and exit");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kConfigExit;
  }
  for (CLI::App* sub : app.get_subcommands()) return run(sub->get_name(), args);
  return kConfigExit;
}
