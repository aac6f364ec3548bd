#include <doctest.h>

#include <variant>

#include "helpers.h"
#include "nlplan/affect_extraction.h"
#include "nlplan/affordance_extraction.h"
#include "nlplan/ingestion.h"
#include "nlplan/state_extraction.h"
#include "nlplan/suggestions.h"

using namespace nlplan;
using namespace nlplan::testing;

namespace {

std::vector<std::string> phrases(const std::vector<StateTriple> &ts) {
  std::vector<std::string> out;
  for (const auto &t : ts) out.push_back(t.phrase());
  return out;
}

std::vector<std::string> triples_of(const char *sentence) {
  auto g = parse(sentence);
  g = resolve_coreferences({g}, {Entity{Slug::parse("max"), true}}).graphs[0];
  auto kind = classify_state_kind(g, res().rules.fluent_keywords);
  return phrases(extract_triples(g, kind, res().rules));
}

StateTriple triple(const char *s, const char *p, const char *c) {
  return {Slug::parse(s), Slug::parse(p), Slug::parse(c)};
}

using V = std::vector<std::string>;

}  // namespace

TEST_CASE("extract_triples on state sentences") {
  CHECK(triples_of("Max can go to different places such as restaurants and parks") ==
        V{"max go restaurant", "max go park"});
  CHECK(triples_of("Max can engage in different activities including riding a horse.") ==
        V{"max engage_in ride_horse"});
  CHECK(triples_of("Max can be aware of his surroundings.") == V{"max be_aware surrounding"});
  CHECK(triples_of("Max can stand at the bus station.") == V{"max stand station"});
  CHECK(triples_of("Max would like to drink some juice") == V{"max drink juice"});
  CHECK(triples_of(kTryOut) == V{"max try_out racing", "max try_out climbing"});
}

TEST_CASE("build_state_decls") {
  DomainBundle b;
  auto ids = build_state_decls({triple("max", "go", "restaurant"), triple("max", "go", "park")}, StateKind::kFluent, b);
  CHECK(ids == V{"max_go", "max_go"});
  REQUIRE(b.states.size() == 1);
  CHECK(b.states[0].domain.size() == 2);

  DomainBundle c;
  build_state_decls({triple("max", "drink", "juice")}, StateKind::kBinary, c);
  REQUIRE(c.states.size() == 1);
  CHECK(c.states[0].kind == StateKind::kBinary);

  DomainBundle once;
  build_state_decls({triple("max", "go", "restaurant"), triple("max", "go", "park")}, StateKind::kFluent, once);
  DomainBundle twice = once;
  build_state_decls({triple("max", "go", "restaurant"), triple("max", "go", "park")}, StateKind::kFluent, twice);
  CHECK(once == twice);
}

TEST_CASE("split_affordance") {
  auto d = split_affordance(std::string_view(kLibrary), res().patterns.affordance);
  CHECK(d.head_text == "Max goes to the library");
  CHECK(d.pre_text == "he has an exam");
  CHECK(d.post_text == "he feels more knowledgeable");

  auto pre_only = split_affordance(std::string_view("Max sleeps only if he is tired"), res().patterns.affordance);
  CHECK(pre_only.head_text == "Max sleeps");
  CHECK(pre_only.pre_text == "he is tired");
  CHECK_FALSE(pre_only.post_text.has_value());

  try {
    split_affordance(std::string_view("Max sleeps."), res().patterns.affordance);
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == "not-an-affordance");
  }
}

TEST_CASE("derive_affordance_name") {
  CHECK(derive_affordance_name(parse("Max goes to the library")).str() == "go_to_library");
  CHECK(derive_affordance_name(parse("Max sleeps")).str() == "sleep");
  CHECK(derive_affordance_name(parse("Max plays the guitar")).str() == "play_guitar");
}

TEST_CASE("extract_conditions") {
  auto has = extract_conditions(parse("Max has an exam"), res().rules);
  REQUIRE(has.size() == 1);
  CHECK(has[0].triple.phrase() == "max has exam");
  auto feel = extract_conditions(parse("Max feels more knowledgeable"), res().rules);
  REQUIRE(feel.size() == 1);
  CHECK(feel[0].triple.phrase() == "max feel knowledgeable");
  CHECK(extract_conditions(SentenceGraph{}, res().rules).empty());
}

TEST_CASE("unify_condition") {
  DomainBundle b;
  intern_state(b, triple("max", "has", "money"), StateKind::kBinary);
  intern_state(b, triple("max", "go", "park"), StateKind::kBinary);
  Matcher m = res().matcher();

  auto cash = unify_condition(Condition{triple("max", "possess", "cash"), true, 0}, b, m);
  REQUIRE(std::holds_alternative<Literal>(cash));
  CHECK(std::get<Literal>(cash).state == "max_has_money");

  auto same = unify_condition(Condition{triple("max", "go", "park"), true, 0}, b, m);
  REQUIRE(std::holds_alternative<Literal>(same));
  CHECK(std::get<Literal>(same).state == "max_go_park");

  m.threshold = 0.8;
  auto dragon = unify_condition(Condition{triple("max", "ride", "dragon"), true, 0}, b, m);
  CHECK(std::holds_alternative<NewStateProposal>(dragon));
}

TEST_CASE("detect_probability") {
  const auto &map = res().patterns.probabilities;
  CHECK(detect_probability(std::string_view("he possibly feels more knowledgeable"), map) == 0.5);
  CHECK(detect_probability(std::string_view("he feels more knowledgeable"), map) == 1.0);
  CHECK(detect_probability(std::string_view("he definitely feels happy"), map) == 1.0);
}

TEST_CASE("build affordance end to end") {
  auto b = compile(kLibrary);
  const Affordance *a = b.find_affordance(Slug::parse("max"), Slug::parse("go_to_library"));
  REQUIRE(a);
  REQUIRE(a->preconditions.clauses.size() == 1);
  REQUIRE(a->preconditions.clauses[0].size() == 1);
  CHECK(a->preconditions.clauses[0][0].state == "max_has_exam");
  REQUIRE(a->postconditions.size() == 1);
  CHECK(a->postconditions[0].literal.state == "max_feel_knowledgeable");
  CHECK(a->postconditions[0].probability == 1.0);
  CHECK(a->postconditions[0].deterministic());

  auto p = compile(kLibraryPossibly);
  const Affordance *q = p.find_affordance(Slug::parse("max"), Slug::parse("go_to_library"));
  REQUIRE(q);
  REQUIRE(q->postconditions.size() == 1);
  CHECK(q->postconditions[0].probability == 0.5);
  CHECK_FALSE(q->postconditions[0].deterministic());
}

TEST_CASE("pre-only affordance is flagged") {
  auto b = compile("Max sleeps only if he is tired.");
  const Affordance *a = b.find_affordance(Slug::parse("max"), Slug::parse("sleep"));
  REQUIRE(a);
  CHECK(a->postconditions.empty());
  auto flags = flag_incomplete_affordances(b);
  REQUIRE(flags.size() == 1);
  CHECK(flags[0].kind == SuggestionKind::kIncompleteAffordance);
}

TEST_CASE("condition unifies with a declared state") {
  auto b = compile("Max can possess cash. Max buys a ticket only if he has money after which he has a ticket.");
  const Affordance *a = b.find_affordance(Slug::parse("max"), Slug::parse("buy_ticket"));
  REQUIRE(a);
  CHECK(a->preconditions.clauses[0][0].state == "max_possess_cash");
  CHECK(b.find_state("max_has_money") == nullptr);
}

TEST_CASE("split_affect_sentence") {
  auto s = split_affect_sentence(std::string_view(kAnger), res().patterns.affect_markers);
  CHECK(s.affect_text == "Max will get extremely angry");
  CHECK(s.condition_text == "he fails his exams");
  auto t = split_affect_sentence(std::string_view("Max becomes slightly angry in case he sees his favorite sports team lose"),
                                 res().patterns.affect_markers);
  CHECK(t.affect_text == "Max becomes slightly angry");
  CHECK(t.condition_text == "he sees his favorite sports team lose");
  CHECK_THROWS_AS(split_affect_sentence(std::string_view("Max is angry."), res().patterns.affect_markers), Error);
}

TEST_CASE("parse_affect_change") {
  auto run = [](const char *t) {
    return parse_affect_change(std::string_view(t), res().affect_lexicon, res().emotions, res().motivations);
  };
  auto a = run("Max will get extremely angry");
  CHECK(a.target == AffectTarget::emotion(Slug::parse("anger")));
  CHECK(a.change.mode == AffectChange::Mode::kShift);
  CHECK(a.change.magnitude == doctest::Approx(0.4));
  auto b = run("Max becomes slightly angry");
  CHECK(b.target == AffectTarget::emotion(Slug::parse("anger")));
  CHECK(b.change.magnitude == doctest::Approx(0.1));
  auto c = run("Max feels happy");
  CHECK(c.target == AffectTarget::emotion(Slug::parse("joy")));
  CHECK(c.change.magnitude == doctest::Approx(0.2));
}

TEST_CASE("build affect rule end to end") {
  auto b = compile(kAnger);
  REQUIRE(b.affect_rules.size() == 1);
  const auto &r = b.affect_rules[0];
  CHECK(r.target.label() == "emotion anger");
  CHECK(r.change.magnitude == doctest::Approx(0.4));
  REQUIRE(r.condition.clauses.size() == 1);
  CHECK(r.condition.clauses[0][0].state == "max_fail_exam");

  // an exactly matching declared state is reused
  IngestionReport rep;
  DomainBundle pre = res().empty_bundle();
  compile_text(pre, "Max can fail exams.", res());
  REQUIRE(pre.find_state("max_fail_exam"));
  size_t n = pre.states.size();
  compile_text(pre, kAnger, res());
  CHECK(pre.states.size() == n);

  auto set = compile("Max feels proud whenever he helps customers, which sets his honor to 0.9.");
  REQUIRE(set.affect_rules.size() == 1);
  CHECK(set.affect_rules[0].target == AffectTarget::motivation(Slug::parse("honor")));
  CHECK(set.affect_rules[0].change.mode == AffectChange::Mode::kSet);
  CHECK(set.affect_rules[0].change.magnitude == doctest::Approx(0.9));
}
