#include <doctest.h>

#include <cmath>
#include <string>

#include "sqopt/sqopt.h"

TEST_CASE("function handles") {
  sqo_function* f = nullptr;
  REQUIRE(sqo_function_create("half_square", "", 2, &f) == SQO_OK);
  CHECK(sqo_function_dim(f) == 2);
  double x[2] = {1, 2}, d[2] = {1, 0}, v = 0;
  REQUIRE(sqo_function_eval(f, x, &v) == SQO_OK);
  CHECK(v == doctest::Approx(2.5));
  REQUIRE(sqo_dini_upper(f, x, d, &v) == SQO_OK);
  CHECK(v == doctest::Approx(1).epsilon(1e-5));
  sqo_function_destroy(f);

  CHECK(sqo_function_create("nope", "", 1, &f) == SQO_ERR_UNKNOWN_ID);
  CHECK(f == nullptr);
  CHECK(std::string(sqo_last_error()).size() > 0);
  CHECK(sqo_function_eval(nullptr, x, &v) == SQO_ERR_NULL);
}

TEST_CASE("sets and strong subdifferentials") {
  sqo_function* g = nullptr;
  REQUIRE(sqo_function_create("jump_linear", "", 1, &g) == SQO_OK);
  sqo_realset* s = nullptr;
  REQUIRE(sqo_strong_interval(g, 0, 1, 1, "[-1,1]", &s) == SQO_OK);
  int in = 0;
  REQUIRE(sqo_realset_contains(s, 1.0, &in) == SQO_OK);
  CHECK(in == 1);
  REQUIRE(sqo_realset_contains(s, 0.3, &in) == SQO_OK);
  CHECK(in == 0);
  size_t needed = 0;
  REQUIRE(sqo_realset_format(s, nullptr, 0, &needed) == SQO_OK);
  std::string buf(needed, '\0');
  REQUIRE(sqo_realset_format(s, buf.data(), buf.size(), &needed) == SQO_OK);
  CHECK(buf[0] == '[');
  sqo_realset_destroy(s);

  double x = 0, xi = 1, margin = 0;
  int member = 0;
  REQUIRE(sqo_strong_member(g, &x, 1, 1, "[-1,1]", &xi, &member, &margin) == SQO_OK);
  CHECK(member == 1);
  CHECK(sqo_strong_member(g, &x, 0, 1, "R", &xi, &member, &margin) == SQO_ERR_INVALID_PARAMS);
  sqo_function_destroy(g);

  REQUIRE(sqo_realset_parse("[0,1] U {3}", &s) == SQO_OK);
  double sup = 0;
  REQUIRE(sqo_realset_support(s, 1, &sup) == SQO_OK);
  CHECK(sup == 3);
  sqo_realset_destroy(s);
  CHECK(sqo_realset_parse("[1,", &s) == SQO_ERR_PARSE);
}

TEST_CASE("worst lambda") {
  double xi = 1, d = -1, lambda = 0, sup = 0;
  REQUIRE(sqo_worst_lambda(&xi, &d, 1, 1, 1, &lambda, &sup) == SQO_OK);
  CHECK(lambda >= 0);
  CHECK(lambda <= 1);
}

TEST_CASE("runs and lists") {
  sqo_report* r = nullptr;
  REQUIRE(sqo_run("corpus", "", "case=trivial_zero", &r) == SQO_OK);
  CHECK(sqo_report_exit_code(r) == 0);
  CHECK(std::string(sqo_report_json(r)).find("\"exit_code\"") != std::string::npos);
  sqo_report_destroy(r);
  CHECK(sqo_run("corpus", "", "colour=blue", &r) == SQO_ERR_CONFIG);
  CHECK(std::string(sqo_corpus_list()).find("ex_5_2_kkt") != std::string::npos);
  CHECK(std::string(sqo_catalog_list()).find("jump_linear\t") != std::string::npos);
  CHECK(std::string(sqo_version()).size() > 0);
}
