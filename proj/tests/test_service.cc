#include "nlplan/service.h"  // Eigen before httplib

#include <doctest.h>

#include <thread>

#include "helpers.h"
#include "nlplan/http_api.h"
#include "nlplan/spellcheck.h"

using namespace nlplan;
using namespace nlplan::testing;
using nlohmann::json;

namespace {

const Suggestion *find(const std::vector<Suggestion> &list, std::string_view id) {
  for (const auto &s : list) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

// Levenshtein distance, the oracle for candidate ranking.
size_t edit_distance(const std::string &a, const std::string &b) {
  std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] != b[j - 1])});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

constexpr const char *kCapability = "capability:max:guide_blind_person";

}  // namespace

TEST_CASE("spellcheck") {
  auto flags = spellcheck("Max goes to the libary.", res().dictionary);
  REQUIRE(flags.size() == 1);
  CHECK(flags[0].token == "libary");
  CHECK(flags[0].offset == 16);
  REQUIRE_FALSE(flags[0].candidates.empty());
  CHECK(flags[0].candidates[0] == "library");
  for (const auto &c : flags[0].candidates) CHECK(edit_distance("libary", c) <= 2);
  for (size_t i = 1; i < flags[0].candidates.size(); ++i) {
    CHECK(edit_distance("libary", flags[0].candidates[i - 1]) <= edit_distance("libary", flags[0].candidates[i]));
  }

  CHECK(spellcheck("Max goes to the library.", res().dictionary).empty());
  CHECK(spellcheck("max_go", res().dictionary, {"max_go"}).empty());
}

TEST_CASE("spellcheck ranks by distance then frequency") {
  auto d = Dictionary::from_words({{"cart", 5}, {"cat", 1}, {"car", 9}, {"bat", 20}});
  auto flags = spellcheck("caat", d);
  REQUIRE(flags.size() == 1);
  // cat and cart are one edit away, car and bat two
  CHECK(flags[0].candidates == std::vector<std::string>{"cart", "cat", "bat", "car"});
}

TEST_CASE("sessions") {
  Service svc(default_config());
  auto a = svc.create_session();
  auto b = svc.create_session();
  CHECK(a != b);
  CHECK(svc.get(a)->bundle() == res().empty_bundle());
  CHECK_THROWS_AS(svc.get("nope"), Error);
  CHECK_THROWS_AS(svc.create_session({{"embeddings", "/no/such/file.txt"}}), Error);
}

TEST_CASE("submit_text") {
  Service svc(default_config());
  auto s = svc.get(svc.create_session());
  auto before = s->bundle();
  auto empty = s->submit_text("", {});
  CHECK(empty["report"]["sentences"].empty());
  CHECK(s->bundle() == before);
  CHECK(s->transcript().empty());

  auto r = s->submit_text(kStates, {});
  CHECK(r["report"]["sentences"].size() == 5);
  size_t fluents = 0, binaries = 0;
  for (const auto &st : s->bundle().states) (st.kind == StateKind::kFluent ? fluents : binaries)++;
  CHECK(fluents == 2);
  CHECK(binaries == 3);
  CHECK(s->bundle().find_state("max_go")->domain.size() == 2);

  s->submit_text(kLibrary, {});
  const Affordance *aff = s->bundle().find_affordance(Slug::parse("max"), Slug::parse("go_to_library"));
  REQUIRE(aff);
  CHECK(aff->preconditions.clauses.size() == 1);
  CHECK(aff->postconditions.size() == 1);
}

TEST_CASE("explicit category bypasses routing") {
  Service svc(default_config());
  auto s = svc.get(svc.create_session());
  SubmitOptions opt;
  opt.category = Category::kState;
  auto r = s->submit_text(kAnger, opt);
  CHECK(r["report"]["sentences"][0]["classification"] != "affect");
  CHECK(s->bundle().affect_rules.empty());
}

TEST_CASE("failing sentence leaves the bundle alone") {
  Config c = default_config();
  c.strict = true;
  Service svc(c);
  auto s = svc.get(svc.create_session());
  s->submit_text(kStates, {});
  auto before = s->bundle();
  auto r = s->submit_text("Max rides a dragon only if he has a saddle.", {});
  CHECK_FALSE(r["report"]["sentences"][0]["ok"].get<bool>());
  CHECK(s->bundle() == before);
}

TEST_CASE("decide") {
  Service svc(default_config());
  auto s = svc.get(svc.create_session());
  s->declare_object("max", "dog");
  REQUIRE(find(s->pending(), kCapability));

  s->decide(kCapability, true);
  CHECK(s->bundle().find_affordance(Slug::parse("max"), Slug::parse("guide_blind_person")));
  CHECK_FALSE(find(s->pending(), kCapability));
  try {
    s->decide(kCapability, true);
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == "already-decided");
  }
  try {
    s->decide("no-such-suggestion", true);
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == "unknown-suggestion");
  }

  const char *trick = "capability:max:learn_to_do_trick";
  REQUIRE(find(s->pending(), trick));
  s->decide(trick, false);
  CHECK_FALSE(find(s->pending(), trick));
  s->submit_text(kStates, {});  // regenerates suggestions
  CHECK_FALSE(find(s->pending(), trick));
  CHECK_FALSE(s->bundle().find_affordance(Slug::parse("max"), Slug::parse("learn_to_do_trick")));
}

TEST_CASE("code") {
  Service svc(default_config());
  auto s = svc.get(svc.create_session());
  CHECK(s->code("sexpr") == read_file(golden("empty.sexpr")));
  s->submit_text(kStates, {});
  auto first = s->code("sexpr");
  CHECK(first == s->code("sexpr"));
  CHECK(first == read_file(golden("states.sexpr")));
  CHECK(s->code("pddl") == read_file(golden("states.pddl")));
  try {
    s->code("lisp");
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == "bad-target");
  }
}

TEST_CASE("persistence") {
  auto dir = temp_dir("store");
  Config c = default_config();
  c.store_dir = dir.string();
  std::string id;
  DomainBundle saved;
  {
    Service svc(c);
    id = svc.create_session();
    auto s = svc.get(id);
    s->declare_object("max", "dog");
    s->submit_text(std::string(kStates) + " " + kLibrary, {});
    s->decide(kCapability, true);
    saved = s->bundle();
  }
  for (const char *f : {"session.json", "bundle.json", "transcript.jsonl", "suggestions.json"}) {
    CHECK(std::filesystem::exists(dir / id / f));
  }
  Service again(c);
  CHECK(again.get(id)->bundle() == saved);
  CHECK(Session::load((dir / id).string(), again.toolkit())->bundle() == saved);

  // tampering with the bundle file breaks replay equality
  std::ofstream(dir / id / "bundle.json") << write_bundle(res().empty_bundle());
  try {
    Session::load((dir / id).string(), again.toolkit());
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == "replay-mismatch");
  }
  std::filesystem::remove_all(dir);
}

TEST_CASE("concurrent submissions to one session are serialized") {
  Service svc(default_config());
  auto s = svc.get(svc.create_session());
  std::vector<std::thread> ts;
  const std::vector<std::string> texts = {"Max can stand at the bus station.", "Max would like to drink some juice.",
                                          "Max can be aware of his surroundings.", kLibrary};
  for (const auto &t : texts) ts.emplace_back([&, t] { s->submit_text(t, {}); });
  for (auto &t : ts) t.join();
  CHECK(s->transcript().size() == 4);
  CHECK(replay_transcript(s->transcript(), res()) == s->bundle());
}

TEST_CASE("http api") {
  Service svc(default_config());
  httplib::Server server;
  register_routes(server, svc);
  int port = server.bind_to_any_port("127.0.0.1");
  REQUIRE(port > 0);
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client cli("127.0.0.1", port);
  auto post = [&](const std::string &path, const json &body) {
    auto r = cli.Post(path, body.dump(), "application/json");
    REQUIRE(r);
    return r;
  };

  auto created = post("/sessions", json::object());
  CHECK(created->status == 201);
  std::string id = json::parse(created->body)["id"];
  std::string base = "/sessions/" + id;

  auto obj = post(base + "/objects", {{"name", "max"}, {"type", "dog"}});
  CHECK(obj->status == 200);

  auto text = post(base + "/text", {{"text", kStates}});
  CHECK(text->status == 200);
  CHECK(json::parse(text->body)["report"]["sentences"].size() == 5);

  auto dom = cli.Get(base + "/domain");
  REQUIRE(dom);
  CHECK(read_bundle(dom->body) == svc.get(id)->bundle());

  auto sug = cli.Get(base + "/suggestions");
  REQUIRE(sug);
  bool seen = false;
  auto listed = json::parse(sug->body)["suggestions"];
  for (const auto &s : listed) seen = seen || s["id"] == kCapability;
  CHECK(seen);

  auto acc = post(base + "/suggestions/" + std::string(kCapability) + "/accept", json::object());
  CHECK(acc->status == 200);
  CHECK(post(base + "/suggestions/" + std::string(kCapability) + "/accept", json::object())->status == 409);
  CHECK(post(base + "/suggestions/nope/reject", json::object())->status == 404);

  auto code = cli.Get(base + "/code?target=sexpr");
  REQUIRE(code);
  CHECK(code->status == 200);
  CHECK(code->body.find("guide_blind_person") != std::string::npos);
  auto pddl = cli.Get(base + "/code?target=pddl");
  REQUIRE(pddl);
  CHECK(pddl->body.rfind(";; nlplan domain (PDDL)", 0) == 0);
  auto bad = cli.Get(base + "/code?target=lisp");
  REQUIRE(bad);
  CHECK(bad->status == 400);
  CHECK(json::parse(bad->body)["error"]["code"] == "bad-target");

  auto missing = cli.Get("/sessions/nope/domain");
  REQUIRE(missing);
  CHECK(missing->status == 404);

  auto malformed = cli.Post(base + "/text", "{not json", "application/json");
  REQUIRE(malformed);
  CHECK(malformed->status == 400);

  auto spell = post("/spellcheck", {{"text", "Max goes to the libary."}});
  auto flags = json::parse(spell->body)["flags"];
  REQUIRE(flags.size() == 1);
  CHECK(flags[0]["token"] == "libary");
  CHECK(flags[0]["candidates"][0] == "library");
  auto own = post("/spellcheck", {{"text", "max_go max_engage_in"}, {"session", id}});
  CHECK(json::parse(own->body)["flags"].empty());

  server.stop();
  th.join();
}
