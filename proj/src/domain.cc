#include "nlplan/domain.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

namespace nlplan {
namespace {

const std::set<std::string, std::less<>> &articles() {
  static const std::set<std::string, std::less<>> kArticles = {"a", "an", "the"};
  return kArticles;
}

// Words ending in "s" that must not lose it.
const std::set<std::string, std::less<>> &singular_exceptions() {
  static const std::set<std::string, std::less<>> kWords = {
      "afterwards", "alias",     "always",  "athletics", "atlas",
      "besides",    "bias",      "bus",     "canvas",    "chaos",
      "clothes",    "does",      "downstairs", "economics", "goes",
      "gymnastics", "hers",      "indoors", "lens",      "mathematics",
      "means",      "news",      "nevertheless", "ours", "outdoors",
      "overseas",   "perhaps",   "physics", "plus",      "politics",
      "series",     "sometimes", "species", "theirs",    "this",
      "thus",       "towards",   "upstairs", "whereas",  "yes",
      "yours",      "gas"};
  return kWords;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

// Splits a raw word into lowercase [a-z0-9] segments, dropping a trailing
// possessive.
std::vector<std::string> segments(std::string_view word) {
  std::string lower;
  lower.reserve(word.size());
  for (char c : word) {
    lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  if (ends_with(lower, "'s")) lower.resize(lower.size() - 2);
  if (ends_with(lower, "'")) lower.resize(lower.size() - 1);
  std::vector<std::string> out;
  std::string cur;
  for (char c : lower) {
    if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) {
      cur.push_back(c);
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::string format_number(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

std::string singularize(std::string_view word) {
  std::string w(word);
  if (w.size() <= 3 || singular_exceptions().count(w)) return w;
  if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is") ||
      ends_with(w, "ous")) {
    return w;
  }
  std::string out;
  if (ends_with(w, "ies") && w.size() > 4) {
    out = w.substr(0, w.size() - 3) + "y";
  } else if (ends_with(w, "sses") || ends_with(w, "ches") ||
             ends_with(w, "shes") || ends_with(w, "xes") ||
             ends_with(w, "zes")) {
    out = w.substr(0, w.size() - 2);
  } else if (ends_with(w, "s")) {
    out = w.substr(0, w.size() - 1);
  } else {
    return w;
  }
  // Never turn a word into an article ("thes" stays "thes").
  if (articles().count(out)) return w;
  return out;
}

Slug Slug::parse(std::string_view text) {
  if (!is_valid(text)) {
    throw Error("bad-slug", "not a canonical slug: '" + std::string(text) + "'");
  }
  return Slug(std::string(text));
}

bool Slug::is_valid(std::string_view text) {
  if (text.empty() || text.front() == '_' || text.back() == '_') return false;
  char prev = 0;
  for (char c : text) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    if (!ok || (c == '_' && prev == '_')) return false;
    prev = c;
  }
  return true;
}

std::vector<std::string> Slug::words() const {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text_) {
    if (c == '_') {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

Slug slugify(std::span<const std::string> words) {
  std::string text;
  for (const auto &word : words) {
    for (const auto &seg : segments(word)) {
      if (articles().count(seg)) continue;
      if (!text.empty()) text.push_back('_');
      text += singularize(seg);
    }
  }
  if (text.empty()) throw Error("empty-slug", "phrase has no content words");
  return Slug(std::move(text));
}

Slug slugify(std::string_view phrase) {
  std::vector<std::string> words;
  std::istringstream in{std::string(phrase)};
  for (std::string w; in >> w;) words.push_back(w);
  return slugify(std::span<const std::string>(words));
}

std::string_view to_string(StateKind kind) {
  return kind == StateKind::kBinary ? "binary" : "fluent";
}

std::string StateTriple::phrase() const {
  std::string out = subject.str();
  for (const Slug *s : {&predicate, &complement}) {
    if (s->empty()) continue;
    if (!out.empty()) out.push_back(' ');
    out += s->str();
  }
  return out;
}

Cnf Cnf::conjunction(const std::vector<Literal> &literals) {
  Cnf cnf;
  for (const auto &lit : literals) cnf.clauses.push_back({lit});
  return cnf;
}

MotivationCatalog MotivationCatalog::reiss() {
  MotivationCatalog catalog;
  for (const char *name :
       {"power", "curiosity", "independence", "status", "social_contact",
        "vengeance", "honor", "idealism", "physical_exercise", "romance",
        "family", "order", "eating", "acceptance", "tranquility", "saving"}) {
    catalog.factors.push_back(Slug::parse(name));
  }
  return catalog;
}

bool MotivationCatalog::contains(const Slug &name) const {
  return std::find(factors.begin(), factors.end(), name) != factors.end();
}

std::string AffectTarget::label() const {
  switch (kind) {
    case Kind::kMood:
      return "mood";
    case Kind::kEmotion:
      return "emotion " + name.str();
    case Kind::kMotivation:
      return "motivation " + name.str();
  }
  return {};
}

const StateDecl *DomainBundle::find_state(std::string_view id) const {
  for (const auto &s : states) {
    if (s.id == id) return &s;
  }
  return nullptr;
}

const SmartObject *DomainBundle::find_object(const Slug &name) const {
  for (const auto &o : objects) {
    if (o.name == name) return &o;
  }
  return nullptr;
}

const Affordance *DomainBundle::find_affordance(const Slug &owner,
                                                const Slug &name) const {
  for (const auto &a : affordances) {
    if (a.owner == owner && a.name == name) return &a;
  }
  return nullptr;
}

const EmotionSpec *DomainBundle::find_emotion(const Slug &name) const {
  for (const auto &e : emotion_catalog) {
    if (e.name == name) return &e;
  }
  return nullptr;
}

void DomainBundle::declare_object(const Slug &name, const Slug &type) {
  for (auto &o : objects) {
    if (o.name != name) continue;
    if (o.type.str() == "object" && !type.empty()) o.type = type;
    return;
  }
  objects.push_back({name, type.empty() ? Slug::parse("object") : type});
}

std::vector<const StateDecl *> DomainBundle::states_of(const Slug &owner) const {
  std::vector<const StateDecl *> out;
  for (const auto &s : states) {
    if (s.owner == owner) out.push_back(&s);
  }
  return out;
}

std::string state_id(const StateTriple &triple, StateKind kind) {
  std::string id = triple.subject.str() + "_" + triple.predicate.str();
  if (kind == StateKind::kBinary && !triple.complement.empty()) {
    id += "_" + triple.complement.str();
  }
  return id;
}

std::string intern_state(DomainBundle &bundle, const StateTriple &triple,
                         StateKind kind) {
  if (triple.subject.empty() || triple.predicate.empty()) {
    throw Error("bad-triple", "state triple needs a subject and predicate");
  }
  if (kind == StateKind::kFluent && triple.complement.empty()) {
    throw Error("bad-triple", "fluent triple needs a value: " + triple.phrase());
  }

  // Same fact already declared under the other kind?
  for (const auto &s : bundle.states) {
    if (s.triple.subject != triple.subject ||
        s.triple.predicate != triple.predicate) {
      continue;
    }
    if (kind == StateKind::kBinary && s.kind == StateKind::kFluent &&
        std::find(s.domain.begin(), s.domain.end(), triple.complement) !=
            s.domain.end()) {
      throw Error("kind-conflict", "'" + triple.phrase() +
                                       "' requested as binary but declared in "
                                       "fluent '" + s.id + "'");
    }
    if (kind == StateKind::kFluent && s.kind == StateKind::kBinary &&
        s.triple.complement == triple.complement) {
      throw Error("kind-conflict", "'" + triple.phrase() +
                                       "' requested as fluent but declared as "
                                       "binary state '" + s.id + "'");
    }
  }

  std::string id = state_id(triple, kind);
  for (auto &s : bundle.states) {
    if (s.id != id) continue;
    if (s.kind != kind) {
      throw Error("id-collision", "identifier '" + id + "' is already a " +
                                      std::string(to_string(s.kind)) + " state");
    }
    if (kind == StateKind::kBinary) return id;
    if (std::find(s.domain.begin(), s.domain.end(), triple.complement) ==
        s.domain.end()) {
      s.domain.push_back(triple.complement);
    }
    return id;
  }

  bundle.declare_object(triple.subject, {});
  StateDecl decl;
  decl.id = id;
  decl.owner = triple.subject;
  decl.kind = kind;
  decl.triple = triple;
  if (kind == StateKind::kFluent) {
    decl.triple.complement = Slug();
    decl.domain.push_back(triple.complement);
  }
  bundle.states.push_back(std::move(decl));
  return id;
}

bool eval_literal(const Literal &literal, const Assignment &assignment) {
  auto it = assignment.find(literal.state);
  if (it == assignment.end()) {
    throw Error("unassigned-state", "no value for state '" + literal.state + "'");
  }
  bool holds = false;
  if (literal.value) {
    const Slug *current = std::get_if<Slug>(&it->second);
    if (!current) {
      throw Error("value-mismatch", "state '" + literal.state +
                                        "' is binary but the literal names a value");
    }
    holds = *current == *literal.value;
  } else {
    const bool *current = std::get_if<bool>(&it->second);
    if (!current) {
      throw Error("value-mismatch", "state '" + literal.state +
                                        "' is a fluent but the literal has no value");
    }
    holds = *current;
  }
  return holds == literal.polarity;
}

bool eval_cnf(const Cnf &cnf, const Assignment &assignment) {
  // Evaluate every literal so unassigned states are reported even when an
  // earlier clause already decided the result.
  bool result = true;
  for (const auto &clause : cnf.clauses) {
    if (clause.empty()) throw Error("empty-clause", "CNF contains an empty clause");
    bool any = false;
    for (const auto &lit : clause) any = eval_literal(lit, assignment) || any;
    result = result && any;
  }
  return result;
}

namespace {

class Validator {
 public:
  explicit Validator(const DomainBundle &bundle) : bundle_(bundle) {}

  std::vector<Diagnostic> run() {
    objects();
    states();
    affordances();
    catalogs();
    rules();
    return std::move(out_);
  }

 private:
  void add(std::string code, std::string subject, std::string message) {
    out_.push_back({std::move(code), std::move(subject), std::move(message)});
  }

  void slug(const Slug &s, const std::string &where) {
    if (!Slug::is_valid(s.str())) add("bad-slug", where, "invalid identifier '" + s.str() + "'");
  }

  void objects() {
    std::set<std::string> seen;
    for (const auto &o : bundle_.objects) {
      slug(o.name, "object");
      slug(o.type, o.name.str());
      if (!seen.insert(o.name.str()).second) {
        add("duplicate-object", o.name.str(), "object declared twice");
      }
    }
  }

  void states() {
    std::set<std::string> seen;
    for (const auto &s : bundle_.states) {
      if (!seen.insert(s.id).second) {
        add("duplicate-state", s.id, "state identifier declared twice");
      }
      if (!bundle_.find_object(s.owner)) {
        add("unknown-owner", s.id, "owner '" + s.owner.str() + "' is not a declared object");
      }
      if (s.triple.subject != s.owner) {
        add("owner-mismatch", s.id, "state subject differs from its owner");
      }
      slug(s.triple.subject, s.id);
      slug(s.triple.predicate, s.id);
      if (s.id != state_id(s.triple, s.kind)) {
        add("bad-state-id", s.id, "identifier does not match its triple");
      }
      if (s.kind == StateKind::kBinary) {
        if (!s.domain.empty()) add("domain-on-binary", s.id, "binary state carries a value domain");
        continue;
      }
      if (!s.triple.complement.empty()) {
        add("bad-fluent-key", s.id, "fluent key triple must not carry a complement");
      }
      if (s.domain.empty()) add("empty-domain", s.id, "fluent without values");
      std::set<std::string> values;
      for (const auto &v : s.domain) {
        slug(v, s.id);
        if (!values.insert(v.str()).second) {
          add("duplicate-value", s.id, "value '" + v.str() + "' listed twice");
        }
      }
    }
  }

  void literal(const Literal &lit, const std::string &where) {
    const StateDecl *decl = bundle_.find_state(lit.state);
    if (!decl) {
      add("dangling-state", lit.state, "referenced from " + where + " but never declared");
      return;
    }
    if (decl->kind == StateKind::kFluent) {
      if (!lit.value) {
        add("missing-value", lit.state, "fluent literal in " + where + " needs a value");
      } else if (std::find(decl->domain.begin(), decl->domain.end(), *lit.value) ==
                 decl->domain.end()) {
        add("value-not-in-domain", lit.state,
            "value '" + lit.value->str() + "' in " + where + " is not in the fluent's domain");
      }
    } else if (lit.value) {
      add("value-on-binary", lit.state, "binary literal in " + where + " carries a value");
    }
  }

  void cnf(const Cnf &c, const std::string &where) {
    for (const auto &clause : c.clauses) {
      if (clause.empty()) add("empty-clause", where, "CNF clause without literals");
      for (const auto &lit : clause) literal(lit, where);
    }
  }

  void affordances() {
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto &a : bundle_.affordances) {
      std::string where = a.owner.str() + "." + a.name.str();
      slug(a.name, where);
      if (!bundle_.find_object(a.owner)) {
        add("unknown-owner", where, "affordance owner is not a declared object");
      }
      if (!seen.insert({a.owner.str(), a.name.str()}).second) {
        add("duplicate-affordance", where, "affordance name reused for this owner");
      }
      cnf(a.preconditions, where);
      for (const auto &post : a.postconditions) {
        literal(post.literal, where);
        if (!(post.probability > 0.0 && post.probability <= 1.0)) {
          add("bad-probability", where,
              "probability " + format_number(post.probability) + " outside (0, 1]");
        }
      }
    }
  }

  void catalogs() {
    std::set<std::string> seen;
    for (const auto &e : bundle_.emotion_catalog) {
      slug(e.name, "emotion catalog");
      if (!seen.insert(e.name.str()).second) {
        add("duplicate-emotion", e.name.str(), "emotion listed twice");
      }
      for (double v : e.pad) {
        if (!(v >= -1.0 && v <= 1.0)) {
          add("bad-pad", e.name.str(), "PAD coordinate " + format_number(v) + " outside [-1, 1]");
        }
      }
    }
    seen.clear();
    for (const auto &m : bundle_.motivation_catalog.factors) {
      slug(m, "motivation catalog");
      if (!seen.insert(m.str()).second) {
        add("duplicate-motivation", m.str(), "motivation listed twice");
      }
    }
  }

  void rules() {
    for (size_t i = 0; i < bundle_.affect_rules.size(); ++i) {
      const auto &r = bundle_.affect_rules[i];
      std::string where = "rule " + std::to_string(i + 1);
      cnf(r.condition, where);
      using Kind = AffectTarget::Kind;
      if (r.target.kind == Kind::kEmotion && !bundle_.find_emotion(r.target.name)) {
        add("unknown-emotion", r.target.name.str(), where + " targets an emotion outside the catalog");
      }
      if (r.target.kind == Kind::kMotivation &&
          !bundle_.motivation_catalog.contains(r.target.name)) {
        add("unknown-motivation", r.target.name.str(),
            where + " targets a motivation outside the catalog");
      }
      if (r.change.mode == AffectChange::Mode::kSet) {
        if (r.target.kind != Kind::kMotivation) {
          add("bad-set-target", where, "only motivations can be set to a value");
        } else if (!(r.change.magnitude >= 0.0 && r.change.magnitude <= 1.0)) {
          add("bad-magnitude", where, "motivation value outside [0, 1]");
        }
      } else if (!(std::abs(r.change.magnitude) <= 1.0)) {
        add("bad-magnitude", where, "shift magnitude outside [-1, 1]");
      }
    }
  }

  const DomainBundle &bundle_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> validate_bundle(const DomainBundle &bundle) {
  return Validator(bundle).run();
}

}  // namespace nlplan
