#include <doctest.h>

#include "sqopt/corpus.hpp"

using namespace sqo;

TEST_CASE("compiled corpus lists every case once") {
  std::vector<std::string> ids = list_cases();
  CHECK(ids.size() >= 10);
  CHECK(std::find(ids.begin(), ids.end(), "ex_5_2_kkt") != ids.end());
  for (const CorpusCase& c : corpus_cases())
    for (const CorpusQuantity& q : c.quantities) {
      CAPTURE(c.id);
      CAPTURE(q.label);
      CHECK_FALSE(q.anchor.empty());
    }
  CHECK_THROWS_AS(find_case("missing"), Error);
}

TEST_CASE("parser rejects malformed cases") {
  CHECK_THROWS_AS(parse_corpus("[a]\nx = 0\nq1 = strong fn=h -> {0}\n"), Error);  // no anchor
  CHECK_THROWS_AS(parse_corpus("[a]\nx = 0\nq1 = strong fn=h {0}\na1 = f\n"), Error);  // no arrow
  CHECK_THROWS_AS(parse_corpus("[a]\nx = 0\nwhatever = 1\n"), Error);
  CHECK_THROWS_AS(parse_corpus("[a]\nx = 0\n[a]\nx = 1\n"), Error);
  std::vector<CorpusCase> ok = parse_corpus("[a]\ntitle = t\nx = 0\nh = zero\nq1 = strong fn=h -> {0}\na1 = f\n");
  REQUIRE(ok.size() == 1);
  CHECK(ok[0].quantities.at(0).kind == "strong");
  CHECK(ok[0].quantities.at(0).expected == "{0}");
}

TEST_CASE("comparison of expected and computed values") {
  CHECK(corpus_match("[1/2,2]", "[0.5004,1.9996]", true, 1e-3));
  CHECK_FALSE(corpus_match("[1/4,2]", "[0.5,2]", true, 1e-3));
  CHECK(corpus_match("R", "(-inf,inf)", true, 1e-3));
  CHECK(corpus_match("nonempty", "[0,1]", true, 1e-3));
  CHECK_FALSE(corpus_match("nonempty", "{}", true, 1e-3));
  CHECK(corpus_match("KKT", "kkt", false, 0));
  CHECK_FALSE(corpus_match("KKT", "FJ", false, 0));
}

TEST_CASE("cases that reproduce") {
  for (const char* id : {"ex_3_1_max_rule_strict", "ex_4_1_strict_normal_cone", "rem_4_1_fh_regular",
                         "ex_5_1_fj_eliminates", "ex_5_2_kkt", "ex_5_5_sufficiency", "trivial_zero",
                         "rem_2_1_qfp", "sec_2_2_hierarchy"}) {
    CaseResult r = run_case(id);
    CAPTURE(id);
    for (const QuantityResult& q : r.quantities) {
      CAPTURE(q.label);
      CAPTURE(q.computed);
      CHECK(q.pass);
      CHECK_FALSE(q.module.empty());
    }
    CHECK(r.pass);
  }
}
