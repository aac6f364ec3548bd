#include "nlplan/suggestions.h"

#include <algorithm>
#include <set>

#include "nlplan/bundle_io.h"
#include "nlplan/text_util.h"

namespace nlplan {
using nlohmann::json;

namespace {

constexpr std::pair<SuggestionKind, std::string_view> kKindNames[] = {
    {SuggestionKind::kMissingAffectRule, "missing-affect-rule"},
    {SuggestionKind::kIncompleteAffordance, "incomplete-affordance"},
    {SuggestionKind::kCapability, "capability"},
    {SuggestionKind::kAffordanceCondition, "affordance-condition"},
    {SuggestionKind::kAffectTrigger, "affect-trigger"},
};

// One rule candidate: a state (or fluent value) and an affect target.
struct Pair {
  Literal literal;
  std::vector<std::string> words;
  std::string label;  // "Max eating"
};

std::vector<Pair> state_pairs(const DomainBundle &b) {
  std::vector<Pair> out;
  for (const auto &s : b.states) {
    if (s.kind == StateKind::kBinary) {
      Pair p;
      p.literal.state = s.id;
      p.words = s.triple.predicate.words();
      for (auto &w : s.triple.complement.words()) p.words.push_back(w);
      p.label = display_slug(s.id);
      out.push_back(std::move(p));
    } else {
      for (const auto &v : s.domain) {
        Pair p;
        p.literal.state = s.id;
        p.literal.value = v;
        p.words = s.triple.predicate.words();
        for (auto &w : v.words()) p.words.push_back(w);
        p.label = display_slug(s.id + "_" + v.str());
        out.push_back(std::move(p));
      }
    }
  }
  return out;
}

std::vector<AffectTarget> targets(const DomainBundle &b) {
  std::vector<AffectTarget> out;
  for (const auto &e : b.emotion_catalog) out.push_back(AffectTarget::emotion(e.name));
  for (const auto &m : b.motivation_catalog.factors) out.push_back(AffectTarget::motivation(m));
  return out;
}

bool covered(const DomainBundle &b, const Literal &lit, const AffectTarget &t) {
  for (const auto &r : b.affect_rules) {
    if (!(r.target == t)) continue;
    for (const auto &c : r.condition.clauses) {
      for (const auto &l : c) {
        if (l.state == lit.state && l.value == lit.value) return true;
      }
    }
  }
  return false;
}

std::string kind_word(const AffectTarget &t) {
  return t.kind == AffectTarget::Kind::kEmotion ? "emotion" : "motivation";
}

std::string pair_key(const Literal &lit, const AffectTarget &t) {
  std::string k = lit.state;
  if (lit.value) k += "=" + lit.value->str();
  return k + ":" + kind_word(t) + ":" + t.name.str();
}

AffectRule rule_for(const Literal &lit, const AffectTarget &t, double magnitude) {
  AffectRule r;
  r.condition.clauses.push_back({lit});
  r.target = t;
  r.change = {AffectChange::Mode::kShift, magnitude};
  return r;
}

std::string words_of(std::string_view slug) {
  std::string s(slug);
  std::replace(s.begin(), s.end(), '_', ' ');
  return s;
}

std::string capitalized(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

// Triple for a ConceptNet phrase owned by `owner`: first word is the
// predicate, the rest the complement.
std::optional<StateTriple> phrase_triple(const Slug &owner, const std::string &label) {
  auto words = split_words(label);
  if (words.empty()) return std::nullopt;
  try {
    StateTriple t;
    t.subject = owner;
    t.predicate = slugify(std::vector<std::string>{words[0]});
    if (words.size() > 1) t.complement = slugify(std::vector<std::string>(words.begin() + 1, words.end()));
    return t;
  } catch (const Error &) {
    return std::nullopt;
  }
}

bool uses_state(const Affordance &a, const std::string &id) {
  for (const auto &c : a.preconditions.clauses) {
    for (const auto &l : c) {
      if (l.state == id) return true;
    }
  }
  for (const auto &p : a.postconditions) {
    if (p.literal.state == id) return true;
  }
  return false;
}

[[noreturn]] void stale(const Suggestion &s, const std::string &why) {
  throw Error("stale-suggestion", "suggestion " + s.id + " no longer applies: " + why);
}

}  // namespace

std::string_view to_string(SuggestionKind k) {
  for (const auto &[kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "";
}

std::string_view to_string(SuggestionStatus s) {
  switch (s) {
    case SuggestionStatus::kPending:
      return "pending";
    case SuggestionStatus::kAccepted:
      return "accepted";
    case SuggestionStatus::kRejected:
      return "rejected";
  }
  return "";
}

SuggestionKind parse_suggestion_kind(std::string_view s) {
  for (const auto &[kind, name] : kKindNames) {
    if (name == s) return kind;
  }
  throw Error("bad-suggestion", "unknown suggestion kind '" + std::string(s) + "'");
}

SuggestionStatus parse_suggestion_status(std::string_view s) {
  if (s == "pending") return SuggestionStatus::kPending;
  if (s == "accepted") return SuggestionStatus::kAccepted;
  if (s == "rejected") return SuggestionStatus::kRejected;
  throw Error("bad-suggestion", "unknown suggestion status '" + std::string(s) + "'");
}

json suggestion_to_json(const Suggestion &s) {
  return {{"id", s.id},
          {"kind", to_string(s.kind)},
          {"prompt", s.prompt},
          {"payload", s.payload},
          {"score", s.score},
          {"status", to_string(s.status)}};
}

Suggestion suggestion_from_json(const json &j) {
  try {
    Suggestion s;
    s.id = j.at("id").get<std::string>();
    s.kind = parse_suggestion_kind(j.at("kind").get<std::string>());
    s.prompt = j.at("prompt").get<std::string>();
    s.payload = j.at("payload");
    s.score = j.at("score").get<double>();
    s.status = parse_suggestion_status(j.value("status", "pending"));
    return s;
  } catch (const json::exception &e) {
    throw Error("bad-suggestion", e.what());
  }
}

void sort_suggestions(std::vector<Suggestion> &list) {
  std::stable_sort(list.begin(), list.end(), [](const Suggestion &a, const Suggestion &b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });
}

std::vector<Suggestion> propose_missing_rules(const DomainBundle &bundle, const Matcher &matcher, double threshold,
                                              double default_magnitude) {
  std::vector<Suggestion> out;
  if (!matcher.table) return out;
  auto ts = targets(bundle);
  for (const auto &p : state_pairs(bundle)) {
    for (const auto &t : ts) {
      if (covered(bundle, p.literal, t)) continue;
      double score = phrase_similarity(p.words, t.name.words(), *matcher.table, matcher.filters);
      if (score < threshold) continue;
      Suggestion s;
      s.id = "rule:" + pair_key(p.literal, t);
      s.kind = SuggestionKind::kMissingAffectRule;
      s.prompt = "Does '" + p.label + "' change the " + kind_word(t) + " '" + words_of(t.name.str()) + "'?";
      s.payload = {{"rule", rule_to_json(rule_for(p.literal, t, default_magnitude))}};
      s.score = score;
      out.push_back(std::move(s));
    }
  }
  sort_suggestions(out);
  return out;
}

std::vector<Suggestion> flag_incomplete_affordances(const DomainBundle &bundle, int min_pre, int min_post) {
  std::vector<Suggestion> out;
  for (const auto &a : bundle.affordances) {
    json missing = json::array();
    if (static_cast<int>(a.preconditions.clauses.size()) < min_pre) missing.push_back("pre");
    if (static_cast<int>(a.postconditions.size()) < min_post) missing.push_back("post");
    if (missing.empty()) continue;
    Suggestion s;
    s.id = "incomplete:" + a.owner.str() + ":" + a.name.str();
    s.kind = SuggestionKind::kIncompleteAffordance;
    std::string what = missing.size() == 2 ? "preconditions or postconditions"
                       : missing[0] == "pre" ? "preconditions"
                                             : "postconditions";
    s.prompt = "'" + words_of(a.name.str()) + "' of '" + display_slug(a.owner.str()) + "' has too few " + what +
               ". Can you describe them?";
    s.payload = {{"owner", a.owner.str()}, {"affordance", a.name.str()}, {"missing", missing}};
    s.score = 1.0;
    out.push_back(std::move(s));
  }
  sort_suggestions(out);
  return out;
}

std::vector<Suggestion> commonsense_suggestions(const DomainBundle &bundle, ConceptNetClient &client,
                                                const ConceptNetCatalog &catalog, const Matcher &matcher,
                                                const CommonsenseOptions &opt) {
  std::vector<Suggestion> out;
  std::set<std::string> ids;
  auto push = [&](Suggestion s) {
    if (ids.insert(s.id).second) out.push_back(std::move(s));
  };

  // (1) capabilities of each typed object
  for (const auto &o : bundle.objects) {
    if (o.type.str() == "object") continue;
    for (const auto &rel : catalog.capability_relations) {
      for (const auto &e : conceptnet_query(o.type, rel, client, opt.min_weight, opt.page_size)) {
        std::string label = concept_label(e.end);
        Slug name;
        try {
          name = slugify(label);
        } catch (const Error &) {
          continue;
        }
        if (bundle.find_affordance(o.name, name)) continue;
        std::string style = e.style.empty() ? catalog.default_capability_style : e.style;
        auto tmpl = catalog.templates.find(style);
        if (tmpl == catalog.templates.end()) tmpl = catalog.templates.find(catalog.default_capability_style);
        Suggestion s;
        s.id = "capability:" + o.name.str() + ":" + name.str();
        s.kind = SuggestionKind::kCapability;
        s.prompt = fill_template(tmpl->second, {{"object", display_slug(o.name.str())},
                                                {"type", capitalized(words_of(o.type.str()))},
                                                {"end", label}});
        Affordance skeleton;
        skeleton.name = name;
        skeleton.owner = o.name;
        s.payload = {{"affordance", affordance_to_json(skeleton)}};
        s.score = e.weight;
        push(std::move(s));
      }
    }
  }

  // (2) pre/post questions per affordance
  for (const auto &a : bundle.affordances) {
    for (const auto &[rel, role] : catalog.condition_relations) {
      for (const auto &e : conceptnet_query(a.name, rel, client, opt.min_weight, opt.page_size)) {
        std::string label = concept_label(e.end);
        auto triple = phrase_triple(a.owner, label);
        if (!triple) continue;
        std::string id = state_id(*triple, StateKind::kBinary);
        if (uses_state(a, id)) continue;
        Suggestion s;
        s.id = "condition:" + a.owner.str() + ":" + a.name.str() + ":" + role + ":" + id;
        s.kind = SuggestionKind::kAffordanceCondition;
        s.prompt = fill_template(catalog.templates.at(role), {{"end", label}, {"start", words_of(a.name.str())}});
        s.payload = {{"owner", a.owner.str()},
                     {"affordance", a.name.str()},
                     {"role", role},
                     {"triple", triple_to_json(*triple)}};
        s.score = e.weight;
        push(std::move(s));
      }
    }
  }

  // (3) affect triggers per state
  if (matcher.table) {
    auto ts = targets(bundle);
    for (const auto &st : bundle.states) {
      if (st.kind != StateKind::kBinary) continue;
      Slug term = st.triple.complement.empty()
                      ? st.triple.predicate
                      : Slug::parse(st.triple.predicate.str() + "_" + st.triple.complement.str());
      Literal lit{st.id, true, std::nullopt};
      for (const auto &rel : catalog.trigger_relations) {
        for (const auto &e : conceptnet_query(term, rel, client, opt.min_weight, opt.page_size)) {
          auto words = split_words(concept_label(e.end));
          const AffectTarget *best = nullptr;
          double best_score = 0.0;
          for (const auto &t : ts) {
            double sc = phrase_similarity(words, t.name.words(), *matcher.table, matcher.filters);
            if (sc > best_score) {
              best_score = sc;
              best = &t;
            }
          }
          if (!best || best_score < opt.trigger_threshold || covered(bundle, lit, *best)) continue;
          Suggestion s;
          s.id = "trigger:" + pair_key(lit, *best);
          s.kind = SuggestionKind::kAffectTrigger;
          s.prompt = fill_template(catalog.templates.at("trigger"),
                                   {{"state", words_of(term.str())},
                                    {"kind", kind_word(*best)},
                                    {"affect", words_of(best->name.str())},
                                    {"object", display_slug(st.owner.str())}});
          s.payload = {{"rule", rule_to_json(rule_for(lit, *best, opt.default_magnitude))}};
          s.score = best_score;
          push(std::move(s));
        }
      }
    }
  }
  sort_suggestions(out);
  return out;
}

void apply_suggestion(DomainBundle &bundle, const Suggestion &s) {
  DomainBundle work = bundle;
  try {
    switch (s.kind) {
      case SuggestionKind::kMissingAffectRule:
      case SuggestionKind::kAffectTrigger: {
        AffectRule r = rule_from_json(s.payload.at("rule"));
        if (std::find(work.affect_rules.begin(), work.affect_rules.end(), r) != work.affect_rules.end()) {
          stale(s, "the rule already exists");
        }
        work.affect_rules.push_back(std::move(r));
        break;
      }
      case SuggestionKind::kIncompleteAffordance: {
        // Acknowledged only; the author answers with new text.
        Slug owner = Slug::parse(s.payload.at("owner").get<std::string>());
        Slug name = Slug::parse(s.payload.at("affordance").get<std::string>());
        if (!work.find_affordance(owner, name)) stale(s, "the affordance is gone");
        break;
      }
      case SuggestionKind::kCapability: {
        Affordance a = affordance_from_json(s.payload.at("affordance"));
        if (!work.find_object(a.owner)) stale(s, "unknown object " + a.owner.str());
        if (work.find_affordance(a.owner, a.name)) stale(s, "affordance already exists");
        work.affordances.push_back(std::move(a));
        break;
      }
      case SuggestionKind::kAffordanceCondition: {
        Slug owner = Slug::parse(s.payload.at("owner").get<std::string>());
        Slug name = Slug::parse(s.payload.at("affordance").get<std::string>());
        auto it = std::find_if(work.affordances.begin(), work.affordances.end(),
                               [&](const Affordance &a) { return a.owner == owner && a.name == name; });
        if (it == work.affordances.end()) stale(s, "the affordance is gone");
        std::string id = intern_state(work, triple_from_json(s.payload.at("triple")), StateKind::kBinary);
        Literal lit{id, true, std::nullopt};
        if (uses_state(*it, id)) stale(s, "the condition is already there");
        if (s.payload.at("role").get<std::string>() == "pre") {
          it->preconditions.clauses.push_back({lit});
        } else {
          it->postconditions.push_back({lit, 1.0});
        }
        break;
      }
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error("bad-suggestion", "malformed payload of " + s.id + ": " + e.what());
  }
  if (auto bad = validate_bundle(work); !bad.empty()) {
    stale(s, bad[0].code + " " + bad[0].subject + ": " + bad[0].message);
  }
  bundle = std::move(work);
}

}  // namespace nlplan
