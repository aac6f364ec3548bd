#include "nlplan/service.h"

#include <doctest.h>

#include <random>
#include <set>

#include "helpers.h"
#include "nlplan/conceptnet.h"
#include "nlplan/semantics.h"
#include "nlplan/suggestions.h"

using namespace nlplan;
using namespace nlplan::testing;

namespace {

// Brute-force oracle: a CNF holds iff no clause has all literals false.
bool truth_table_eval(const Cnf &cnf, const std::map<std::string, bool> &v) {
  for (const auto &clause : cnf.clauses) {
    bool any = false;
    for (const auto &l : clause) any = any || (v.at(l.state) == l.polarity);
    if (!any) return false;
  }
  return true;
}

std::string base_concept(const std::string &uri) {
  // /c/en/x[/pos...] -> /c/en/x
  size_t n = 0, i = 0;
  for (; i < uri.size(); ++i) {
    if (uri[i] == '/' && ++n == 4) break;
  }
  return uri.substr(0, i);
}

}  // namespace

TEST_CASE("cnf evaluation matches truth tables") {
  std::mt19937 rng(20240611);
  for (int round = 0; round < 100; ++round) {
    int n = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("s" + std::to_string(i));
    Cnf cnf;
    int clauses = std::uniform_int_distribution<int>(0, 4)(rng);
    for (int c = 0; c < clauses; ++c) {
      Clause clause;
      int width = std::uniform_int_distribution<int>(1, 3)(rng);
      for (int k = 0; k < width; ++k) {
        clause.push_back(Literal{names[std::uniform_int_distribution<int>(0, n - 1)(rng)],
                                 std::bernoulli_distribution(0.5)(rng), std::nullopt});
      }
      cnf.clauses.push_back(clause);
    }
    for (int mask = 0; mask < (1 << n); ++mask) {
      Assignment a;
      std::map<std::string, bool> v;
      for (int i = 0; i < n; ++i) {
        bool bit = (mask >> i) & 1;
        a[names[i]] = bit;
        v[names[i]] = bit;
      }
      CHECK(eval_cnf(cnf, a) == truth_table_eval(cnf, v));
    }
  }
}

TEST_CASE("match_state argmax is scale invariant") {
  auto bundle = compile(std::string(kStates) + " " + kLibrary + " " + kAnger + " Max can possess cash.");
  auto f = PhraseFilters::defaults();
  std::vector<StateTriple> queries;
  for (const char *q : {"max has money", "max fail test", "max go park", "max drink juice", "max feel happy",
                        "max read book", "max ride horse", "max stand station", "max eat hunger"}) {
    std::istringstream in(q);
    std::string s, p, c;
    in >> s >> p >> c;
    queries.push_back({Slug::parse(s), Slug::parse(p), Slug::parse(c)});
  }
  for (double scale : {0.001, 0.5, 3.0, 1e4}) {
    EmbeddingTable scaled = res().embeddings;
    scaled.scale(scale);
    for (const auto &q : queries) {
      auto a = match_state(q, bundle.states, res().embeddings, 0.0, f);
      auto b = match_state(q, bundle.states, scaled, 0.0, f);
      REQUIRE(a.has_value() == b.has_value());
      if (!a) continue;
      CHECK(a->state == b->state);
      CHECK(a->value == b->value);
      CHECK(a->score == doctest::Approx(b->score).epsilon(1e-9));
    }
  }
}

TEST_CASE("emit/parse round trip over the corpus") {
  for (const auto &text : corpus()) {
    CAPTURE(text);
    auto b = compile(text);
    auto once = emit_sexpr(b);
    auto back = parse_sexpr(once);
    CHECK(back == canonical_order(b));
    CHECK(emit_sexpr(back) == once);
    CHECK(check_pddl(emit_pddl(b)).empty());
  }
}

TEST_CASE("session replay reproduces the bundle") {
  auto dir = temp_dir("replay");
  Config c = default_config();
  c.store_dir = dir.string();
  Service svc(c);
  std::mt19937 rng(7);
  for (const auto &text : corpus()) {
    auto id = svc.create_session();
    auto s = svc.get(id);
    s->declare_object("max", "dog");
    s->submit_text(text, {});
    // a few random decisions
    for (int k = 0; k < 3; ++k) {
      auto pending = s->pending();
      if (pending.empty()) break;
      const auto &pick = pending[std::uniform_int_distribution<size_t>(0, pending.size() - 1)(rng)];
      s->decide(pick.id, std::bernoulli_distribution(0.5)(rng));
    }
    auto loaded = Session::load((dir / id).string(), svc.toolkit());
    CHECK(loaded->bundle() == s->bundle());
    CHECK(replay_transcript(s->transcript(), res()) == s->bundle());
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("weight filter drops every sub-minimum edge") {
  auto path = res().config.resolve(res().config.conceptnet_fixture);
  auto edges = FixtureClient::parse(read_file(path), path);
  FixtureClient fc(edges);
  std::set<std::pair<std::string, std::string>> queries;
  for (const auto &e : edges) queries.insert({e.start, e.relation});
  for (double min : {0.0, 0.5, 0.8, 1.0, 1.5, 2.0, 5.0}) {
    for (const auto &[start, rel] : queries) {
      std::string term = concept_label(start);
      std::replace(term.begin(), term.end(), ' ', '_');
      std::string relation = rel.substr(rel.rfind('/') + 1);
      auto got = conceptnet_query(Slug::parse(term), relation, fc, min, 100);
      std::set<std::string> got_ends;
      for (const auto &e : got) {
        CHECK(e.weight >= min);
        got_ends.insert(base_concept(e.end));
      }
      CHECK(got_ends.size() == got.size());
      for (const auto &e : edges) {
        if (e.start == start && e.relation == rel && e.weight >= min) CHECK(got_ends.count(base_concept(e.end)));
      }
    }
  }
}

TEST_CASE("decided suggestions are never proposed again") {
  std::mt19937 rng(99);
  for (int round = 0; round < 5; ++round) {
    Service svc(default_config());
    auto s = svc.get(svc.create_session());
    s->declare_object("max", "dog");
    std::set<std::string> decided;
    auto texts = corpus();
    std::shuffle(texts.begin(), texts.end(), rng);
    for (const auto &text : texts) {
      s->submit_text(text, {});
      for (const auto &p : s->pending()) CHECK(decided.count(p.id) == 0);
      auto pending = s->pending();
      for (int k = 0; k < 2 && !pending.empty(); ++k) {
        auto i = std::uniform_int_distribution<size_t>(0, pending.size() - 1)(rng);
        s->decide(pending[i].id, std::bernoulli_distribution(0.5)(rng));
        decided.insert(pending[i].id);
        pending = s->pending();
        for (const auto &p : pending) CHECK(decided.count(p.id) == 0);
      }
    }
  }
}

TEST_CASE("interning the same submission twice changes nothing") {
  for (const auto &text : corpus()) {
    auto b = compile(text);
    auto states = b.states;
    compile_text(b, text, res());
    CHECK(b.states == states);
  }
}
