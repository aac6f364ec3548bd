#include <doctest.h>

#include "helpers.h"

using namespace nlplan;
using namespace nlplan::testing;

namespace {

size_t count_kind(const DomainBundle &b, StateKind k) {
  size_t n = 0;
  for (const auto &s : b.states) n += s.kind == k;
  return n;
}

}  // namespace

TEST_CASE("empty bundle") {
  DomainBundle none;
  CHECK(emit_sexpr(none) == std::string(kSexprHeader) + "\n");
  CHECK(emit_sexpr(res().empty_bundle()) == read_file(golden("empty.sexpr")));
  CHECK(emit_pddl(res().empty_bundle()) == read_file(golden("empty.pddl")));
  CHECK(check_pddl(emit_pddl(none)).empty());
}

TEST_CASE("state sentences golden") {
  auto b = compile(kStates);
  CHECK(emit_sexpr(b) == read_file(golden("states.sexpr")));
  CHECK(emit_pddl(b) == read_file(golden("states.pddl")));

  auto back = parse_sexpr(read_file(golden("states.sexpr")));
  CHECK(count_kind(back, StateKind::kFluent) == 2);
  CHECK(count_kind(back, StateKind::kBinary) == 3);
  const StateDecl *go = back.find_state("max_go");
  REQUIRE(go);
  CHECK(go->domain.size() == 2);
}

TEST_CASE("affordance golden") {
  auto b = compile(kLibrary);
  auto text = emit_sexpr(b);
  CHECK(text == read_file(golden("library.sexpr")));
  CHECK(text.find(":pre ((max_has_exam))") != std::string::npos);
  CHECK(text.find(":post ((max_feel_knowledgeable #t 1.0))") != std::string::npos);

  auto pddl = emit_pddl(b);
  CHECK(pddl == read_file(golden("library.pddl")));
  CHECK(pddl.find("(:action go_to_library :precondition (max_has_exam) :effect (max_feel_knowledgeable))") !=
        std::string::npos);
  CHECK(check_pddl(pddl).empty());
}

TEST_CASE("probabilistic effect") {
  auto b = compile(kLibraryPossibly);
  CHECK(emit_sexpr(b).find("(probabilistic 0.5 (max_feel_knowledgeable #t))") != std::string::npos);
  auto pddl = emit_pddl(b);
  CHECK(pddl == read_file(golden("library_possibly.pddl")));
  CHECK(pddl.find("(probabilistic 0.5 (max_feel_knowledgeable))") != std::string::npos);
  CHECK(check_pddl(pddl).empty());
}

TEST_CASE("affect rule golden") {
  auto text = emit_sexpr(compile(kAnger));
  CHECK(text == read_file(golden("anger.sexpr")));
  CHECK(text.find("(rule :target (emotion anger) :change (shift 0.4) :when (and (max_fail_exam)))") !=
        std::string::npos);
}

TEST_CASE("parse errors carry a position") {
  auto text = read_file(golden("library.sexpr"));
  auto cut = text.substr(0, text.size() / 2);
  try {
    parse_sexpr(cut);
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == "bad-sexpr");
    CHECK(std::string(e.what()).find("line") != std::string::npos);
  }
}

TEST_CASE("check_pddl catches problems") {
  CHECK_FALSE(check_pddl("(define (domain x)").empty());
  auto d = check_pddl("(define (domain x) (:requirements :strips :typing) (:predicates (p)) (:action a :precondition (q) :effect (p)))");
  REQUIRE_FALSE(d.empty());
  CHECK(d[0].code == "undeclared-predicate");
}

TEST_CASE("invalid bundle is refused") {
  DomainBundle b;
  Affordance a;
  a.owner = Slug::parse("max");
  a.name = Slug::parse("nap");
  a.preconditions = Cnf::conjunction({Literal{"ghost", true, std::nullopt}});
  b.declare_object(a.owner, Slug::parse("object"));
  b.affordances.push_back(a);
  try {
    emit_sexpr(b);
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == "invalid-bundle");
  }
}

TEST_CASE("bundle json round trip") {
  auto b = compile(std::string(kStates) + " " + kLibrary + " " + kAnger);
  CHECK(read_bundle(write_bundle(b)) == b);
}
