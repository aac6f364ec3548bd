#include <doctest.h>

#include "helpers.h"
#include "nlplan/eval.h"

using namespace nlplan;
using namespace nlplan::testing;

namespace {

std::string gold_path() { return res().config.resolve("gold_corpus.json"); }

}  // namespace

TEST_CASE("metric arithmetic") {
  EvalCounts c;
  c.gold_conditions = 80;
  c.correct_conditions = 69;
  CHECK(metrics_from(c).condition_accuracy == doctest::Approx(0.8625).epsilon(1e-12));
  CHECK(std::abs(ratio(69, 80) - 0.8625) < 1e-9);
  CHECK(ratio(3, 4) == 0.75);
  CHECK(ratio(0, 0) == 1.0);

  EvalCounts s;
  s.gold_states = 10;
  s.predicted_states = 12;
  s.matched_states = 9;
  auto m = metrics_from(s);
  CHECK(m.state_recall == doctest::Approx(0.9));
  CHECK(m.state_precision == doctest::Approx(0.75));
}

TEST_CASE("load_gold") {
  CHECK(parse_gold("").empty());
  CHECK(load_gold(gold_path()).size() >= 12);
  try {
    parse_gold(R"({"format": "nlplan-gold/1", "cases": [{"name": "x", "sentences": ["Max sleeps."],
                   "expected_states": [{"triple": ["max", "sleep"], "kind": "sometimes"}]}]})");
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == "bad-gold");
    std::string msg = e.what();
    CHECK(msg.find("case 1") != std::string::npos);
    CHECK(msg.find("expected_states[0]") != std::string::npos);
  }
}

TEST_CASE("one mismatched condition out of four") {
  auto cases = parse_gold(R"({"format": "nlplan-gold/1", "cases": [
    {"name": "a", "sentences": ["Max goes to the library only if he has an exam after which he feels more knowledgeable."],
     "expected_affordances": [{"owner": "max", "name": "go_to_library", "pre": ["max_has_exam"], "post": ["max_feel_knowledgeable"]}]},
    {"name": "b", "sentences": ["Max plays the guitar if he has a guitar as a result he feels happy."],
     "expected_affordances": [{"owner": "max", "name": "play_guitar", "pre": ["max_has_guitar"],
                               "post": [{"state": "max_feel_happy", "probability": 0.5}]}]}]})");
  auto r = score(cases, res());
  CHECK(r.totals.gold_conditions == 4);
  CHECK(r.totals.correct_conditions == 3);
  CHECK(r.metrics.condition_accuracy == 0.75);
  CHECK(r.cases[1].diffs.size() == 1);
}

TEST_CASE("bundled corpus") {
  auto cases = load_gold(gold_path());
  auto r = score(cases, res());
  CHECK(r.metrics.state_recall == 1.0);
  CHECK(r.metrics.state_precision == 1.0);
  CHECK(r.metrics.condition_accuracy == 1.0);
  CHECK(r.metrics.rule_accuracy == 1.0);
  CHECK(r.seconds < 5.0);
  auto again = score(cases, res());
  auto strip = [](nlohmann::json j) {
    j.erase("seconds");
    return j;
  };
  CHECK(strip(eval_report_to_json(r)) == strip(eval_report_to_json(again)));
}
