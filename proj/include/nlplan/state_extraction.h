#ifndef NLPLAN_STATE_EXTRACTION_H_
#define NLPLAN_STATE_EXTRACTION_H_

#include <map>
#include <string>
#include <vector>

#include "nlplan/domain.h"
#include "nlplan/graph.h"

namespace nlplan {

// Which sentences a rule applies to.
enum class RuleKind { kBinary, kFluent, kBoth };

struct RelationRule {
  Slug name;
  RuleKind kind = RuleKind::kBoth;
  // Where the path starts: "root" (sentence root), "content_verb" (main verb
  // after skipping catenative chains such as "would like to") or "keyword"
  // (the token of a fluent keyword, which itself fills path[0]).
  std::string anchor = "content_verb";
  std::vector<std::string> path;  // deprel labels, non-empty
  // "noun" (head lemma), "verb_phrase" (verb lemma + object), "word" (lemma).
  std::string builder = "noun";
  // "verb" (content verb + particle/phrasal preposition), "verb_acomp"
  // (be_aware) or "path_verb" (last verb on the path).
  std::string predicate = "verb";
};

struct RuleCatalog {
  std::vector<RelationRule> rules;
  // Verbs whose preposition joins the predicate (engage -> engage_in).
  std::map<std::string, std::string, std::less<>> phrasal_prepositions;
  std::map<std::string, std::string, std::less<>> predicate_aliases;
  std::vector<std::string> fluent_keywords;
};

// Reads data/relation_rules.json. Throws Error("bad-resource").
RuleCatalog load_rule_catalog(const std::string &path, std::vector<std::string> fluent_keywords);

// One rule match.
struct Extraction {
  StateTriple triple;
  bool polarity = true;  // false when the predicate is negated
  std::string rule;
  std::vector<int> path_tokens;  // token indices walked, complement last
};

// Applies every rule of the given kind. Fans out over conjoined complements,
// drops matches subsumed by an earlier longer match and duplicates.
// Throws Error("missing-subject") when a match has no resolvable subject.
std::vector<Extraction> extract(const SentenceGraph &graph, StateKind kind,
                                const RuleCatalog &catalog);

std::vector<StateTriple> extract_triples(const SentenceGraph &graph, StateKind kind,
                                         const RuleCatalog &catalog);

// Interns every triple; fluent triples sharing (subject, predicate) form one
// fluent. Returns the identifiers in input order.
std::vector<std::string> build_state_decls(const std::vector<StateTriple> &triples,
                                           StateKind kind, DomainBundle &bundle);

// Main verb after following catenative xcomp chains from the root.
int content_verb(const SentenceGraph &graph);

}  // namespace nlplan

#endif  // NLPLAN_STATE_EXTRACTION_H_
