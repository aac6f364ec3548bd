#include "nlplan/bundle_io.h"

namespace nlplan {

using nlohmann::json;

namespace {

Slug slug_or_empty(const json &doc) {
  const auto &s = doc.get_ref<const std::string &>();
  return s.empty() ? Slug() : Slug::parse(s);
}

std::string_view target_kind_name(AffectTarget::Kind kind) {
  switch (kind) {
    case AffectTarget::Kind::kMood:
      return "mood";
    case AffectTarget::Kind::kEmotion:
      return "emotion";
    case AffectTarget::Kind::kMotivation:
      return "motivation";
  }
  return "mood";
}

AffectTarget::Kind target_kind_from(const std::string &s) {
  if (s == "mood") return AffectTarget::Kind::kMood;
  if (s == "emotion") return AffectTarget::Kind::kEmotion;
  if (s == "motivation") return AffectTarget::Kind::kMotivation;
  throw Error("bad-bundle", "unknown affect target kind '" + s + "'");
}

}  // namespace

json triple_to_json(const StateTriple &t) {
  return {{"subject", t.subject.str()},
          {"predicate", t.predicate.str()},
          {"complement", t.complement.str()}};
}

StateTriple triple_from_json(const json &doc) {
  return {slug_or_empty(doc.at("subject")), slug_or_empty(doc.at("predicate")),
          slug_or_empty(doc.at("complement"))};
}

json literal_to_json(const Literal &lit) {
  json out = {{"state", lit.state}, {"polarity", lit.polarity}};
  if (lit.value) out["value"] = lit.value->str();
  return out;
}

Literal literal_from_json(const json &doc) {
  Literal lit;
  lit.state = doc.at("state").get<std::string>();
  lit.polarity = doc.at("polarity").get<bool>();
  if (doc.contains("value")) lit.value = Slug::parse(doc.at("value").get<std::string>());
  return lit;
}

json cnf_to_json(const Cnf &cnf) {
  json clauses = json::array();
  for (const auto &clause : cnf.clauses) {
    json c = json::array();
    for (const auto &lit : clause) c.push_back(literal_to_json(lit));
    clauses.push_back(std::move(c));
  }
  return clauses;
}

Cnf cnf_from_json(const json &doc) {
  Cnf cnf;
  for (const auto &c : doc) {
    Clause clause;
    for (const auto &lit : c) clause.push_back(literal_from_json(lit));
    cnf.clauses.push_back(std::move(clause));
  }
  return cnf;
}

json affordance_to_json(const Affordance &a) {
  json posts = json::array();
  for (const auto &p : a.postconditions) {
    posts.push_back({{"literal", literal_to_json(p.literal)},
                     {"probability", p.probability}});
  }
  return {{"name", a.name.str()},
          {"owner", a.owner.str()},
          {"preconditions", cnf_to_json(a.preconditions)},
          {"postconditions", std::move(posts)}};
}

Affordance affordance_from_json(const json &doc) {
  Affordance a;
  a.name = Slug::parse(doc.at("name").get<std::string>());
  a.owner = Slug::parse(doc.at("owner").get<std::string>());
  a.preconditions = cnf_from_json(doc.at("preconditions"));
  for (const auto &p : doc.at("postconditions")) {
    a.postconditions.push_back(
        {literal_from_json(p.at("literal")), p.at("probability").get<double>()});
  }
  return a;
}

json rule_to_json(const AffectRule &r) {
  return {{"condition", cnf_to_json(r.condition)},
          {"target", {{"kind", target_kind_name(r.target.kind)}, {"name", r.target.name.str()}}},
          {"change",
           {{"mode", r.change.mode == AffectChange::Mode::kSet ? "set" : "shift"},
            {"magnitude", r.change.magnitude}}}};
}

AffectRule rule_from_json(const json &doc) {
  AffectRule r;
  r.condition = cnf_from_json(doc.at("condition"));
  r.target.kind = target_kind_from(doc.at("target").at("kind").get<std::string>());
  r.target.name = slug_or_empty(doc.at("target").at("name"));
  const auto mode = doc.at("change").at("mode").get<std::string>();
  if (mode != "set" && mode != "shift") {
    throw Error("bad-bundle", "unknown change mode '" + mode + "'");
  }
  r.change.mode = mode == "set" ? AffectChange::Mode::kSet : AffectChange::Mode::kShift;
  r.change.magnitude = doc.at("change").at("magnitude").get<double>();
  return r;
}

json bundle_to_json(const DomainBundle &bundle) {
  json objects = json::array();
  for (const auto &o : bundle.objects) {
    objects.push_back({{"name", o.name.str()}, {"type", o.type.str()}});
  }
  json states = json::array();
  for (const auto &s : bundle.states) {
    json domain = json::array();
    for (const auto &v : s.domain) domain.push_back(v.str());
    states.push_back({{"id", s.id},
                      {"owner", s.owner.str()},
                      {"kind", std::string(to_string(s.kind))},
                      {"triple", triple_to_json(s.triple)},
                      {"domain", std::move(domain)}});
  }
  json affordances = json::array();
  for (const auto &a : bundle.affordances) affordances.push_back(affordance_to_json(a));
  json rules = json::array();
  for (const auto &r : bundle.affect_rules) rules.push_back(rule_to_json(r));
  json emotions = json::array();
  for (const auto &e : bundle.emotion_catalog) {
    emotions.push_back({{"name", e.name.str()}, {"pad", e.pad}});
  }
  json motivations = json::array();
  for (const auto &m : bundle.motivation_catalog.factors) motivations.push_back(m.str());

  return {{"format", "nlplan-bundle/1"},
          {"objects", std::move(objects)},
          {"states", std::move(states)},
          {"affordances", std::move(affordances)},
          {"affect_rules", std::move(rules)},
          {"emotion_catalog", std::move(emotions)},
          {"motivation_catalog", std::move(motivations)}};
}

DomainBundle bundle_from_json(const json &doc) {
  try {
    if (doc.value("format", "") != "nlplan-bundle/1") {
      throw Error("bad-bundle", "missing or unsupported bundle format tag");
    }
    DomainBundle b;
    for (const auto &o : doc.at("objects")) {
      b.objects.push_back({Slug::parse(o.at("name").get<std::string>()),
                           Slug::parse(o.at("type").get<std::string>())});
    }
    for (const auto &s : doc.at("states")) {
      StateDecl d;
      d.id = s.at("id").get<std::string>();
      d.owner = Slug::parse(s.at("owner").get<std::string>());
      const auto kind = s.at("kind").get<std::string>();
      if (kind != "binary" && kind != "fluent") {
        throw Error("bad-bundle", "unknown state kind '" + kind + "'");
      }
      d.kind = kind == "binary" ? StateKind::kBinary : StateKind::kFluent;
      d.triple = triple_from_json(s.at("triple"));
      for (const auto &v : s.at("domain")) d.domain.push_back(Slug::parse(v.get<std::string>()));
      b.states.push_back(std::move(d));
    }
    for (const auto &a : doc.at("affordances")) b.affordances.push_back(affordance_from_json(a));
    for (const auto &r : doc.at("affect_rules")) b.affect_rules.push_back(rule_from_json(r));
    for (const auto &e : doc.at("emotion_catalog")) {
      b.emotion_catalog.push_back({Slug::parse(e.at("name").get<std::string>()),
                                   e.at("pad").get<std::array<double, 3>>()});
    }
    for (const auto &m : doc.at("motivation_catalog")) {
      b.motivation_catalog.factors.push_back(Slug::parse(m.get<std::string>()));
    }
    return b;
  } catch (const json::exception &e) {
    throw Error("bad-bundle", std::string("malformed bundle: ") + e.what());
  }
}

std::string write_bundle(const DomainBundle &bundle) {
  return bundle_to_json(bundle).dump(2) + "\n";
}

DomainBundle read_bundle(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error &e) {
    throw Error("bad-bundle", std::string("bundle is not valid JSON: ") + e.what());
  }
  return bundle_from_json(doc);
}

}  // namespace nlplan
