#ifndef NLPLAN_DOMAIN_H_
#define NLPLAN_DOMAIN_H_

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "nlplan/error.h"

namespace nlplan {

// Canonical lowercase identifier made of [a-z0-9] segments joined by single
// underscores. A default-constructed Slug is empty and only used for absent
// complements.
class Slug {
 public:
  Slug() = default;

  // Validates an already-canonical identifier. Throws Error("bad-slug").
  static Slug parse(std::string_view text);

  // True when `text` is a well-formed, non-empty slug.
  static bool is_valid(std::string_view text);

  const std::string &str() const { return text_; }
  bool empty() const { return text_.empty(); }

  // Underscore-separated segments.
  std::vector<std::string> words() const;

  auto operator<=>(const Slug &) const = default;
  bool operator==(const Slug &) const = default;

 private:
  explicit Slug(std::string text) : text_(std::move(text)) {}
  friend Slug slugify(std::span<const std::string> words);

  std::string text_;
};

// Lowercases, strips possessive 's, drops articles, singularizes each word
// and joins with underscores. Idempotent. Throws Error("empty-slug") when
// nothing survives.
Slug slugify(std::span<const std::string> words);
Slug slugify(std::string_view phrase);

// Rule-based noun singularization with an exception list.
std::string singularize(std::string_view word);

enum class StateKind { kBinary, kFluent };

std::string_view to_string(StateKind kind);

// (subject, predicate, complement) fact. The complement may be empty for
// intransitive binary facts and is always empty on a fluent's key triple.
struct StateTriple {
  Slug subject;
  Slug predicate;
  Slug complement;

  std::string phrase() const;  // "subject predicate complement"
  auto operator<=>(const StateTriple &) const = default;
  bool operator==(const StateTriple &) const = default;
};

struct StateDecl {
  std::string id;
  Slug owner;
  StateKind kind = StateKind::kBinary;
  // Binary: the full fact. Fluent: (subject, predicate) with empty complement.
  StateTriple triple;
  // Fluent value domain in first-seen order. Empty for binary states.
  std::vector<Slug> domain;

  bool operator==(const StateDecl &) const = default;
};

struct Literal {
  std::string state;
  bool polarity = true;
  std::optional<Slug> value;  // present iff `state` is a fluent

  bool operator==(const Literal &) const = default;
};

using Clause = std::vector<Literal>;

// Conjunction of disjunctions. No clauses means true.
struct Cnf {
  std::vector<Clause> clauses;

  static Cnf conjunction(const std::vector<Literal> &literals);
  bool empty() const { return clauses.empty(); }
  bool operator==(const Cnf &) const = default;
};

// A probability of 1 is a regular effect; anything below 1 is a
// non-deterministic side effect.
struct PostCondition {
  Literal literal;
  double probability = 1.0;

  bool deterministic() const { return probability >= 1.0; }
  bool operator==(const PostCondition &) const = default;
};

struct Affordance {
  Slug name;
  Slug owner;
  Cnf preconditions;
  std::vector<PostCondition> postconditions;

  bool operator==(const Affordance &) const = default;
};

struct EmotionSpec {
  Slug name;
  std::array<double, 3> pad{};  // pleasure, arousal, dominance

  bool operator==(const EmotionSpec &) const = default;
};

struct MotivationCatalog {
  std::vector<Slug> factors;

  // The 16 Reiss motivational factors.
  static MotivationCatalog reiss();
  bool contains(const Slug &name) const;
  bool operator==(const MotivationCatalog &) const = default;
};

struct AffectTarget {
  enum class Kind { kMood, kEmotion, kMotivation };

  Kind kind = Kind::kMood;
  Slug name;  // empty for mood

  static AffectTarget mood() { return {Kind::kMood, {}}; }
  static AffectTarget emotion(Slug name) { return {Kind::kEmotion, std::move(name)}; }
  static AffectTarget motivation(Slug name) {
    return {Kind::kMotivation, std::move(name)};
  }
  std::string label() const;  // "mood", "emotion anger", "motivation honor"
  bool operator==(const AffectTarget &) const = default;
};

struct AffectChange {
  enum class Mode { kShift, kSet };

  Mode mode = Mode::kShift;
  double magnitude = 0.0;

  bool operator==(const AffectChange &) const = default;
};

struct AffectRule {
  Cnf condition;
  AffectTarget target;
  AffectChange change;

  bool operator==(const AffectRule &) const = default;
};

struct SmartObject {
  Slug name;
  Slug type;

  bool operator==(const SmartObject &) const = default;
};

// The authored domain: smart-objects, their states and affordances, the
// agent's state-affect rules and the affect catalogs those rules target.
struct DomainBundle {
  std::vector<SmartObject> objects;
  std::vector<StateDecl> states;
  std::vector<Affordance> affordances;
  std::vector<AffectRule> affect_rules;
  std::vector<EmotionSpec> emotion_catalog;
  MotivationCatalog motivation_catalog;

  const StateDecl *find_state(std::string_view id) const;
  const SmartObject *find_object(const Slug &name) const;
  const Affordance *find_affordance(const Slug &owner, const Slug &name) const;
  const EmotionSpec *find_emotion(const Slug &name) const;

  // Registers `name` if absent; an existing object keeps its type unless it
  // was the generic "object" placeholder.
  void declare_object(const Slug &name, const Slug &type);

  // States owned by `owner`, in declaration order.
  std::vector<const StateDecl *> states_of(const Slug &owner) const;

  bool operator==(const DomainBundle &) const = default;
};

// Identifier of a binary state or fluent built from its triple.
std::string state_id(const StateTriple &triple, StateKind kind);

// Returns the identifier of the matching declaration, registering a new one
// when needed. Fluent triples sharing (subject, predicate) extend one
// fluent's value domain. Registers the subject as a smart-object if unknown.
// Throws Error("kind-conflict") or Error("id-collision").
std::string intern_state(DomainBundle &bundle, const StateTriple &triple,
                         StateKind kind);

// Current value of a state: bool for binary states, the active value for
// fluents.
using StateValue = std::variant<bool, Slug>;
using Assignment = std::map<std::string, StateValue, std::less<>>;

bool eval_literal(const Literal &literal, const Assignment &assignment);

// Throws Error("unassigned-state") when a referenced state has no value and
// Error("value-mismatch") when a literal's shape disagrees with the value.
bool eval_cnf(const Cnf &cnf, const Assignment &assignment);

// Empty iff every invariant of the domain types holds.
std::vector<Diagnostic> validate_bundle(const DomainBundle &bundle);

}  // namespace nlplan

#endif  // NLPLAN_DOMAIN_H_
