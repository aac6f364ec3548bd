#include <doctest.h>

#include <algorithm>
#include <set>
#include <tuple>

#include "helpers.h"
#include "nlplan/builtin_parser.h"
#include "nlplan/conllu.h"
#include "nlplan/ingestion.h"
#include "nlplan/state_extraction.h"

using namespace nlplan;
using namespace nlplan::testing;

namespace {

using Edge = std::tuple<std::string, std::string, std::string>;  // head, label, dependent

std::set<Edge> edges(const SentenceGraph &g) {
  std::set<Edge> out;
  for (const auto &t : g.tokens) {
    if (t.head == 0 || t.deprel == "punct") continue;
    out.insert({g.at(t.head).text, t.deprel, t.text});
  }
  return out;
}

bool has_edge(const SentenceGraph &g, const std::string &head, const std::string &label, const std::string &dep) {
  return edges(g).count({head, label, dep}) > 0;
}

std::vector<Entity> max_entity() { return {Entity{Slug::parse("max"), true}}; }

std::string root_text(const SentenceGraph &g) { return g.at(g.root()).text; }

}  // namespace

TEST_CASE("parse_conllu two sentences") {
  auto gs = parse_conllu(read_file(std::filesystem::path(NLPLAN_TEST_DIR) / "data" / "two.conllu"));
  REQUIRE(gs.size() == 2);
  for (const auto &g : gs) CHECK_NOTHROW(check_tree(g));
  CHECK(root_text(gs[1]) == "reads");
}

TEST_CASE("self-headed token is a cycle") {
  const char *bad = "1\tMax\tMax\tPROPN\t_\t_\t1\tnsubj\t_\t_\n2\tsleeps\tsleep\tVERB\t_\t_\t0\tROOT\t_\t_\n\n";
  try {
    parse_conllu(bad);
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK((e.code() == "bad-graph" || e.code() == "bad-conllu"));
    CHECK(std::string(e.what()).find("cycle") != std::string::npos);
  }
}

TEST_CASE("try-out edges from CoNLL-U and from the builtin parser") {
  auto gs = parse_conllu(read_file(std::filesystem::path(NLPLAN_TEST_DIR) / "data" / "try_out.conllu"));
  REQUIRE(gs.size() == 1);
  const auto &g = gs[0];
  // reference edges, hand-labelled
  std::set<Edge> fig = {{"like", "nsubj", "Max"},     {"like", "xcomp", "try"}, {"try", "dobj", "activities"},
                        {"activities", "prep", "as"}, {"as", "pobj", "racing"}, {"racing", "conj", "climbing"}};
  auto got = edges(g);
  for (const auto &e : fig) CHECK(got.count(e));
  auto builtin = edges(parse(kTryOut));
  for (const auto &e : fig) CHECK(builtin.count(e));

  auto triples = extract_triples(g, StateKind::kFluent, res().rules);
  REQUIRE(triples.size() == 2);
  CHECK(triples[0].phrase() == "max try_out racing");
  CHECK(triples[1].phrase() == "max try_out climbing");
}

TEST_CASE("builtin parse of state sentences") {
  auto g = parse("Max can stand at the bus station.");
  CHECK(has_edge(g, "stand", "prep", "at"));
  CHECK(has_edge(g, "at", "pobj", "station"));

  auto h = parse("Max can go to different places such as restaurants and parks");
  CHECK(has_edge(h, "as", "pobj", "restaurants"));
  CHECK(has_edge(h, "restaurants", "conj", "parks"));
}

TEST_CASE("gibberish does not parse") {
  try {
    parse("zxq blorp frzzt wug");
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == "unparseable");
  }
}

TEST_CASE("coreference") {
  auto r = resolve_coreferences({parse("Max brings the book and then he reads it.")}, max_entity());
  REQUIRE(r.graphs.size() == 1);
  CHECK(r.graphs[0].text().find("then Max reads it") != std::string::npos);

  auto plain = parse("Max can stand at the bus station.");
  auto same = resolve_coreferences({plain}, max_entity());
  CHECK(same.graphs[0] == plain);
  CHECK(same.diagnostics.empty());

  auto poss = resolve_coreferences({parse("Max can be aware of his surroundings.")}, max_entity());
  CHECK(poss.graphs[0].text().find("Max's surroundings") != std::string::npos);
}

TEST_CASE("pronoun across sentences") {
  auto r = resolve_coreferences({parse("Max can stand at the bus station."), parse("He would like to drink some juice.")},
                                max_entity());
  REQUIRE(r.graphs.size() == 2);
  CHECK(r.graphs[1].at(1).text == "Max");
}

TEST_CASE("simplify") {
  auto two = simplify(parse("Max brings the book and then Max reads it."));
  REQUIRE(two.size() == 2);
  CHECK(root_text(two[0]) == "brings");
  CHECK(root_text(two[1]) == "reads");

  auto one_g = parse("Max can stand at the bus station.");
  auto one = simplify(one_g);
  REQUIRE(one.size() == 1);
  CHECK(one[0] == one_g);

  auto three = simplify(parse("Max opens the door and Max enters the room and then Max reads the book."));
  REQUIRE(three.size() == 3);
  for (const auto &g : three) {
    CHECK_NOTHROW(check_tree(g));
    int verbs = 0;
    for (const auto &t : g.tokens) verbs += t.pos == "VERB";
    CHECK(verbs == 1);
    CHECK(g.at(g.root()).pos == "VERB");
  }
}

TEST_CASE("subject is copied into a subject-less clause") {
  auto parts = simplify(parse("Max brings the book and reads it."));
  REQUIRE(parts.size() == 2);
  CHECK(parts[1].first_child(parts[1].root(), "nsubj") != 0);
  CHECK(parts[1].text().find("Max") != std::string::npos);
}

TEST_CASE("classify_state_kind") {
  auto kw = default_fluent_keywords();
  CHECK(classify_state_kind(parse("Max can go to different places such as restaurants and parks"), kw) ==
        StateKind::kFluent);
  CHECK(classify_state_kind(parse("Max can stand at the bus station."), kw) == StateKind::kBinary);
  CHECK(classify_state_kind(parse("Max can engage in different activities including riding a horse."), kw) ==
        StateKind::kFluent);
}
