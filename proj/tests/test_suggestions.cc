#include <doctest.h>

#include <algorithm>

#include "helpers.h"
#include "nlplan/conceptnet.h"
#include "nlplan/suggestions.h"

using namespace nlplan;
using namespace nlplan::testing;

namespace {

FixtureClient fixture() { return FixtureClient::load(res().config.resolve(res().config.conceptnet_fixture)); }

std::vector<std::string> ends(const std::vector<ConceptNetEdge> &edges) {
  std::vector<std::string> out;
  for (const auto &e : edges) out.push_back(concept_label(e.end));
  return out;
}

bool contains(const std::vector<std::string> &v, const std::string &s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

const Suggestion *by_prompt(const std::vector<Suggestion> &list, const std::string &prompt) {
  for (const auto &s : list) {
    if (s.prompt == prompt) return &s;
  }
  return nullptr;
}

// max the dog, tweety the bird, affordances feed and play_guitar
DomainBundle pets() {
  DomainBundle b = res().empty_bundle();
  b.declare_object(Slug::parse("max"), Slug::parse("dog"));
  b.declare_object(Slug::parse("tweety"), Slug::parse("bird"));
  auto food = intern_state(b, {Slug::parse("max"), Slug::parse("has"), Slug::parse("food")}, StateKind::kBinary);
  Affordance feed;
  feed.owner = Slug::parse("max");
  feed.name = Slug::parse("feed");
  feed.preconditions = Cnf::conjunction({Literal{food, true, std::nullopt}});
  b.affordances.push_back(feed);
  compile_text(b, "Max plays the guitar if he has a guitar as a result he feels happy.", res());
  return b;
}

}  // namespace

TEST_CASE("concept uris") {
  CHECK(concept_uri(Slug::parse("play_guitar")) == "/c/en/play_guitar");
  CHECK(relation_uri("IsCapableOf") == "/r/IsCapableOf");
  CHECK(concept_label("/c/en/guide_a_blind_person/v") == "guide a blind person");
}

TEST_CASE("conceptnet_query on the fixture") {
  auto fc = fixture();
  auto dog = ends(conceptnet_query(Slug::parse("dog"), "IsCapableOf", fc));
  CHECK(contains(dog, "guide a blind person"));
  CHECK(contains(dog, "learn to do tricks"));
  CHECK_FALSE(contains(dog, "fly"));  // weight 0.5
  CHECK(std::count(dog.begin(), dog.end(), "guide a blind person") == 1);

  auto bird = ends(conceptnet_query(Slug::parse("bird"), "IsCapableOf", fc));
  CHECK(contains(bird, "prepare nest"));
  CHECK_FALSE(contains(bird, "bark"));

  CHECK(conceptnet_query(Slug::parse("dog"), "IsCapableOf", fc, 1.0, 1).size() == 1);
}

TEST_CASE("fixture parse errors carry the line") {
  try {
    FixtureClient::parse("# comment\n{\"start\": \"/c/en/dog\"\n", "f.jsonl");
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == "bad-fixture");
    CHECK(std::string(e.what()).find(":2") != std::string::npos);
  }
}

TEST_CASE("commonsense prompts") {
  auto fc = fixture();
  auto list = commonsense_suggestions(pets(), fc, res().conceptnet, res().matcher());
  CHECK(by_prompt(list, "Since 'Max' is a type of 'Dog', does it 'guide a blind person'?"));
  CHECK(by_prompt(list, "Since 'Max' is a type of 'Dog', can it 'learn to do tricks'?"));
  CHECK(by_prompt(list, "Since 'Tweety' is a 'Bird', can it 'prepare nest'?"));
  CHECK(by_prompt(list, "Is 'fatten', a post-condition of 'feed'?"));
  CHECK(by_prompt(list, "Is 'have guitar in hands', a cause of 'play guitar'?"));
  // give_food has weight 0.5
  for (const auto &s : list) CHECK(s.prompt.find("give food") == std::string::npos);
}

TEST_CASE("accepting a capability adds an affordance skeleton") {
  auto fc = fixture();
  auto b = pets();
  auto list = commonsense_suggestions(b, fc, res().conceptnet, res().matcher());
  const Suggestion *cap = by_prompt(list, "Since 'Max' is a type of 'Dog', does it 'guide a blind person'?");
  REQUIRE(cap);
  apply_suggestion(b, *cap);
  const Affordance *a = b.find_affordance(Slug::parse("max"), Slug::parse("guide_blind_person"));
  REQUIRE(a);
  CHECK(a->preconditions.empty());
  CHECK(a->postconditions.empty());
  CHECK_THROWS_AS(apply_suggestion(b, *cap), Error);
}

TEST_CASE("accepting a post-condition extends the affordance") {
  auto fc = fixture();
  auto b = pets();
  auto list = commonsense_suggestions(b, fc, res().conceptnet, res().matcher());
  const Suggestion *post = by_prompt(list, "Is 'fatten', a post-condition of 'feed'?");
  REQUIRE(post);
  apply_suggestion(b, *post);
  const Affordance *a = b.find_affordance(Slug::parse("max"), Slug::parse("feed"));
  REQUIRE(a);
  REQUIRE(a->postconditions.size() == 1);
  CHECK(validate_bundle(b).empty());
}

TEST_CASE("propose_missing_rules") {
  DomainBundle b = res().empty_bundle();
  b.declare_object(Slug::parse("max"), Slug::parse("object"));
  intern_state(b, {Slug::parse("max"), Slug::parse("eating"), Slug()}, StateKind::kBinary);
  auto list = propose_missing_rules(b, res().matcher(), 0.75);
  const Suggestion *s = by_prompt(list, "Does 'Max eating' change the emotion 'hunger'?");
  REQUIRE(s);
  CHECK(s->kind == SuggestionKind::kMissingAffectRule);
  CHECK(s->id == "rule:max_eating:emotion:hunger");

  CHECK(propose_missing_rules(b, res().matcher(), 1.01).empty());

  apply_suggestion(b, *s);
  REQUIRE(b.affect_rules.size() == 1);
  for (const auto &t : propose_missing_rules(b, res().matcher(), 0.75)) {
    CHECK(t.id != "rule:max_eating:emotion:hunger");
  }
}

TEST_CASE("flag_incomplete_affordances") {
  CHECK(flag_incomplete_affordances(DomainBundle{}).empty());
  auto b = compile(kLibrary);
  CHECK(flag_incomplete_affordances(b).empty());
  Affordance bare;
  bare.owner = Slug::parse("max");
  bare.name = Slug::parse("nap");
  b.affordances.push_back(bare);
  auto f = flag_incomplete_affordances(b);
  REQUIRE(f.size() == 1);
  CHECK(f[0].id == "incomplete:max:nap");
}

TEST_CASE("suggestion json round trip and ordering") {
  Suggestion a{"b", SuggestionKind::kCapability, "p", {{"x", 1}}, 0.5, SuggestionStatus::kPending};
  CHECK(suggestion_from_json(suggestion_to_json(a)) == a);
  Suggestion b = a;
  b.id = "a";
  Suggestion c = a;
  c.id = "c";
  c.score = 0.9;
  std::vector<Suggestion> v = {a, b, c};
  sort_suggestions(v);
  CHECK(v[0].id == "c");
  CHECK(v[1].id == "a");
  CHECK(v[2].id == "b");
}
