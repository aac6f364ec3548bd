#include <doctest.h>

#include "nlplan/domain.h"
#include "nlplan/error.h"

using namespace nlplan;

namespace {

StateTriple triple(const char *s, const char *p, const char *c) {
  return {Slug::parse(s), Slug::parse(p), Slug::parse(c)};
}

Literal lit(std::string id, bool pol = true) { return Literal{std::move(id), pol, std::nullopt}; }

}  // namespace

TEST_CASE("slugify") {
  CHECK(slugify("restaurants").str() == "restaurant");
  CHECK(slugify("restaurant").str() == "restaurant");
  CHECK(slugify("Ride a Horse").str() == "ride_horse");
  CHECK(slugify(slugify("Ride a Horse").str()).str() == "ride_horse");
  CHECK_THROWS_AS(slugify("the a"), Error);
}

TEST_CASE("slug validation") {
  CHECK(Slug::is_valid("max_go"));
  CHECK_FALSE(Slug::is_valid("Max Go"));
  CHECK_FALSE(Slug::is_valid(""));
}

TEST_CASE("intern fluent groups values under one id") {
  DomainBundle b;
  auto a = intern_state(b, triple("max", "go", "restaurant"), StateKind::kFluent);
  auto c = intern_state(b, triple("max", "go", "park"), StateKind::kFluent);
  CHECK(a == "max_go");
  CHECK(c == "max_go");
  REQUIRE(b.states.size() == 1);
  CHECK(b.states[0].kind == StateKind::kFluent);
  REQUIRE(b.states[0].domain.size() == 2);
  CHECK(b.states[0].domain[0].str() == "restaurant");
  CHECK(b.states[0].domain[1].str() == "park");
}

TEST_CASE("intern binary is idempotent") {
  DomainBundle b;
  auto id = intern_state(b, triple("max", "drink", "juice"), StateKind::kBinary);
  CHECK(id == "max_drink_juice");
  DomainBundle before = b;
  CHECK(intern_state(b, triple("max", "drink", "juice"), StateKind::kBinary) == id);
  CHECK(b == before);
  CHECK(b.states[0].owner.str() == "max");
}

TEST_CASE("eval_cnf basics") {
  Assignment none;
  CHECK(eval_cnf(Cnf{}, none));
  Cnf x{{{lit("x")}}};
  CHECK_FALSE(eval_cnf(x, Assignment{{"x", false}}));
  CHECK(eval_cnf(x, Assignment{{"x", true}}));
  Cnf notx{{{lit("x", false)}}};
  CHECK(eval_cnf(notx, Assignment{{"x", false}}));

  Literal go_park{"max_go", true, Slug::parse("park")};
  Cnf fluent{{{go_park}}};
  CHECK(eval_cnf(fluent, Assignment{{"max_go", Slug::parse("park")}}));
  CHECK_FALSE(eval_cnf(fluent, Assignment{{"max_go", Slug::parse("restaurant")}}));
}

TEST_CASE("validate_bundle") {
  DomainBundle b;
  CHECK(validate_bundle(b).empty());

  b.declare_object(Slug::parse("max"), Slug::parse("object"));
  Affordance a;
  a.owner = Slug::parse("max");
  a.name = Slug::parse("sleep");
  a.preconditions = Cnf::conjunction({lit("max_be_tired")});
  b.affordances.push_back(a);
  auto d = validate_bundle(b);
  REQUIRE(d.size() == 1);
  CHECK(d[0].code == "dangling-state");

  DomainBundle p;
  p.declare_object(Slug::parse("max"), Slug::parse("object"));
  intern_state(p, triple("max", "be", "tired"), StateKind::kBinary);
  Affordance q = a;
  q.postconditions.push_back({lit("max_be_tired"), 0.0});
  p.affordances.push_back(q);
  auto e = validate_bundle(p);
  REQUIRE(e.size() == 1);
  CHECK(e[0].code == "bad-probability");
}
