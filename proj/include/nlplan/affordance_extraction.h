#ifndef NLPLAN_AFFORDANCE_EXTRACTION_H_
#define NLPLAN_AFFORDANCE_EXTRACTION_H_

#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "nlplan/domain.h"
#include "nlplan/graph.h"
#include "nlplan/semantics.h"
#include "nlplan/state_extraction.h"

namespace nlplan {

struct SplitPattern {
  Slug name;
  std::string pre_marker;   // e.g. "only if"
  std::string post_marker;  // e.g. "after which"
};

// Ordered uncertainty keywords; the first one present in a segment wins.
using ProbabilityMap = std::vector<std::pair<std::string, double>>;

ProbabilityMap default_probability_map();

// Throws Error("bad-patterns") unless every marker is non-empty and all
// markers are distinct.
void check_patterns(const std::vector<SplitPattern> &patterns);

struct AffordanceDraft {
  std::string head_text;
  std::optional<std::string> pre_text;
  std::optional<std::string> post_text;
  int provenance = 0;
};

// A split over a parsed sentence. Spans are 1-based inclusive token ranges.
struct AffordanceSplit {
  AffordanceDraft draft;
  SentenceGraph head;
  std::optional<SentenceGraph> pre;
  std::optional<SentenceGraph> post;
  // Marker spans in order of appearance.
  std::vector<std::pair<int, int>> markers;
};

// Longest marker first, left to right. The head is everything before the
// first marker; repeated segments of one kind are joined with "and".
// Returns std::nullopt when no marker occurs.
std::optional<AffordanceSplit> split_affordance(const SentenceGraph &graph,
                                                const std::vector<SplitPattern> &patterns);

// Text-only variant. Throws Error("not-an-affordance").
AffordanceDraft split_affordance(std::string_view sentence,
                                 const std::vector<SplitPattern> &patterns);

// True when any pre or post marker occurs in the sentence.
bool has_affordance_marker(const std::vector<std::string> &words,
                           const std::vector<SplitPattern> &patterns);

// Verb lemma (+ particle) followed by the object and prepositional-object
// chain: "Max goes to the library" -> go_to_library. Throws Error("no-verb").
Slug derive_affordance_name(const SentenceGraph &head);

// Subject of a clause, slugified. Throws Error("missing-subject").
Slug clause_subject(const SentenceGraph &graph);

// Literal-to-be with its disjunction group: conditions sharing a group were
// joined by "or".
struct Condition {
  StateTriple triple;
  bool polarity = true;
  int group = 0;
};

// Simplifies the segment and runs binary state extraction over each clause.
// A clause with a bare verb and no rule match yields (subject, verb).
std::vector<Condition> extract_conditions(const SentenceGraph &segment,
                                          const RuleCatalog &catalog);

double detect_probability(const std::vector<std::string> &words, const ProbabilityMap &map);
double detect_probability(std::string_view segment_text, const ProbabilityMap &map);

struct Matcher {
  const EmbeddingTable *table = nullptr;
  PhraseFilters filters = PhraseFilters::defaults();
  double threshold = 0.75;
};

struct NewStateProposal {
  StateTriple triple;
  bool polarity = true;
};

// Best existing state of the triple's owner above threshold, else a proposal.
std::variant<Literal, NewStateProposal> unify_condition(const Condition &condition,
                                                        const DomainBundle &bundle,
                                                        const Matcher &matcher);

struct UnifyOptions {
  bool strict = false;  // unmatched conditions raise instead of creating states
};

struct UnifiedConditions {
  Cnf cnf;
  std::vector<std::string> new_states;
  std::vector<Diagnostic> diagnostics;
};

// Unifies every condition; proposals are interned as binary states unless
// strict, where they raise Error("unmatched-condition").
UnifiedConditions unify_conditions(const std::vector<Condition> &conditions, DomainBundle &bundle,
                                   const Matcher &matcher, const UnifyOptions &options);

struct AffordanceOptions {
  const RuleCatalog *rules = nullptr;
  ProbabilityMap probabilities = default_probability_map();
  UnifyOptions unify;
};

struct AffordanceResult {
  Affordance affordance;
  std::vector<std::string> new_states;
  std::vector<Diagnostic> diagnostics;
};

// Builds the affordance and appends it to `bundle`. Throws
// Error("duplicate-affordance") when the owner already offers that name.
AffordanceResult build_affordance(const AffordanceSplit &split, DomainBundle &bundle,
                                  const Matcher &matcher, const AffordanceOptions &options);

}  // namespace nlplan

#endif  // NLPLAN_AFFORDANCE_EXTRACTION_H_
