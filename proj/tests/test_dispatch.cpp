#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "sqopt/dispatch.hpp"

using namespace sqo;

namespace {

std::string config(const std::string& name) {
  std::ifstream in(std::string(SQOPT_SOURCE_DIR) + "/configs/" + name);
  REQUIRE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json run(const std::string& cmd, const std::string& text, int expect, const RunOptions& opt = {}) {
  RunResult r = run_command(cmd, text, opt);
  CAPTURE(r.report);
  CHECK(r.exit_code == expect);
  nlohmann::json j = nlohmann::json::parse(r.report);
  CHECK(j.at("exit_code") == expect);
  CHECK(j.at("command") == cmd);
  return j;
}

}  // namespace

TEST_CASE("certify exit codes") {
  nlohmann::json kkt = run("certify", config("certify_kkt.ini"), exit_code::kOk);
  CHECK(kkt["results"]["certificate"]["classification"] == "KKT");
  CHECK(kkt.contains("anchors"));
  run("certify", config("certify_non_minimizer.ini"), exit_code::kNotCertifiable);
  run("certify", "[point]\nx = 2\n[omega]\nset = [0,1]\n[objective]\nid = linear\n[constraint.1]\nid = recip_on_unit\n",
      exit_code::kPrecondition);
}

TEST_CASE("config errors map to 64") {
  run("certify", "[point]\nx = 0\n[objective\nid = linear\n", exit_code::kConfig);
  run("subdiff", "[point]\nx = 0\nbogus = 1\n[function]\nid = abs\n", exit_code::kConfig);
  run("subdiff", "[point]\nx = 0\n[function]\nid = abs\n[penalty]\ndelta = 1\n", exit_code::kConfig);
  RunResult r = run_command("frobnicate", "");
  CHECK(r.exit_code == exit_code::kConfig);
}

TEST_CASE("other commands") {
  run("subdiff", config("subdiff_jump_linear.ini"), exit_code::kOk);
  run("subdiff", config("subdiff_sqrt_abs.ini"), exit_code::kOk);
  run("normalcone", config("normalcone_jump_linear.ini"), exit_code::kOk);
  run("normalcone", config("normalcone_two_reciprocals.ini"), exit_code::kOk);
  run("convexity", config("convexity_qfp.ini"), exit_code::kOk);
  run("penalize", config("penalize_linear.ini"), exit_code::kOk);
  RunOptions one;
  one.case_id = "trivial_zero";
  run("corpus", "", exit_code::kOk, one);
}

TEST_CASE("reports are deterministic") {
  RunOptions opt;
  opt.plot = true;
  RunResult a = run_command("subdiff", config("subdiff_jump_linear.ini"), opt);
  RunResult b = run_command("subdiff", config("subdiff_jump_linear.ini"), opt);
  CHECK(a.report == b.report);
  CHECK(a.svg == b.svg);
  CHECK(a.svg.find("<svg") != std::string::npos);
}
