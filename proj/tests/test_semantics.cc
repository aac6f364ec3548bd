#include <doctest.h>

#include <cmath>

#include "helpers.h"
#include "nlplan/semantics.h"

using namespace nlplan;
using nlplan::testing::res;

namespace {

// Plain-loop cosine used as the oracle.
double cos_oracle(const std::vector<double> &a, const std::vector<double> &b) {
  double dot = 0, na = 0, nb = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  return dot / std::sqrt(na * nb);
}

std::vector<double> row(const char *w) {
  auto r = res().embeddings.row(w);
  REQUIRE(r.has_value());
  return std::vector<double>(r->data(), r->data() + r->size());
}

StateDecl binary(const char *s, const char *p, const char *c) {
  StateTriple t{Slug::parse(s), Slug::parse(p), Slug::parse(c)};
  return StateDecl{state_id(t, StateKind::kBinary), t.subject, StateKind::kBinary, t, {}};
}

}  // namespace

TEST_CASE("load small embedding file") {
  auto e = parse_embeddings("3 4\na 1 0 0 0\nb 0 1 0 0\nc 0 0 1 0.5\n");
  CHECK(e.table.size() == 3);
  CHECK(e.table.dimension() == 4);
  CHECK(e.diagnostics.empty());
}

TEST_CASE("row width must match the header") {
  try {
    parse_embeddings("2 4\na 1 0 0 0\nb 0 1 0 0 1\n");
    FAIL("expected an error");
  } catch (const Error &e) {
    CHECK(e.code() == "bad-embeddings");
  }
}

TEST_CASE("bundled toy embeddings checksum") {
  const auto &t = res().embeddings;
  CHECK(t.size() == 44);
  CHECK(t.dimension() == 8);
  double sum = 0;
  for (const auto &w : t.words()) {
    auto r = t.row(w);
    sum += r->sum();
  }
  CHECK(sum == doctest::Approx(50.95).epsilon(1e-9));
}

TEST_CASE("similarity") {
  Vector u(3), v(3);
  u << 1, 2, 3;
  CHECK(similarity(u, u) == doctest::Approx(1.0));
  u << 1, 0, 0;
  v << 0, 1, 0;
  CHECK(similarity(u, v) == doctest::Approx(0.0));

  // money = (0.2, 0.9, 0, 0, 0, 0, 0.1, 0), cash = (0.15, 0.95, 0.05, 0, 0, 0, 0.05, 0)
  // dot 0.89, |money|^2 0.86, |cash|^2 0.93
  const double hand = 0.89 / std::sqrt(0.86 * 0.93);
  CHECK(hand == doctest::Approx(0.995175).epsilon(1e-6));
  auto m = res().embeddings.row("money");
  auto c = res().embeddings.row("cash");
  CHECK(similarity(Vector(m->transpose()), Vector(c->transpose())) == doctest::Approx(hand).epsilon(1e-9));
  CHECK(cos_oracle(row("money"), row("cash")) == doctest::Approx(hand).epsilon(1e-12));
}

TEST_CASE("phrase_vector") {
  auto f = PhraseFilters::defaults();
  auto unit = [](std::vector<double> v) {
    double n = 0;
    for (double x : v) n += x * x;
    for (double &x : v) x /= std::sqrt(n);
    return v;
  };

  auto one = phrase_vector({"money"}, res().embeddings, f);
  REQUIRE(one);
  auto m = unit(row("money"));
  for (int i = 0; i < 8; ++i) CHECK(one->unit[i] == doctest::Approx(m[i]));

  // "be" is a light verb and drops out: direction of aware + surrounding
  auto pv = phrase_vector({"be", "aware", "surrounding"}, res().embeddings, f);
  REQUIRE(pv);
  auto a = row("aware"), s = row("surrounding");
  std::vector<double> sum(8);
  for (int i = 0; i < 8; ++i) sum[i] = a[i] + s[i];
  sum = unit(sum);
  for (int i = 0; i < 8; ++i) CHECK(pv->unit[i] == doctest::Approx(sum[i]));
  CHECK(pv->coverage == 1.0);

  CHECK_FALSE(phrase_vector({"the", "of", "a"}, res().embeddings, f).has_value());
}

TEST_CASE("match_state") {
  auto f = PhraseFilters::defaults();
  std::vector<StateDecl> cands = {binary("max", "has", "money"), binary("max", "go", "park")};
  StateTriple q{Slug::parse("max"), Slug::parse("possess"), Slug::parse("cash")};
  auto m = match_state(q, cands, res().embeddings, 0.7, f);
  REQUIRE(m);
  CHECK(m->state == "max_has_money");

  auto same = match_state(cands[1].triple, cands, res().embeddings, 0.7, f);
  REQUIRE(same);
  CHECK(same->state == "max_go_park");
  CHECK(same->score == doctest::Approx(1.0));

  CHECK_FALSE(match_state(q, cands, res().embeddings, 1.01, f));
  CHECK_FALSE(match_state(cands[0].triple, cands, res().embeddings, 1.01, f));
}
