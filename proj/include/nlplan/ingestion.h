#ifndef NLPLAN_INGESTION_H_
#define NLPLAN_INGESTION_H_

#include <string>
#include <vector>

#include "nlplan/domain.h"
#include "nlplan/error.h"
#include "nlplan/graph.h"

namespace nlplan {

// A smart-object name pronouns may refer to.
struct Entity {
  Slug name;
  bool animate = true;  // he/she/his/her need an animate antecedent, it/its an inanimate one
};

struct CorefResult {
  std::vector<SentenceGraph> graphs;
  std::vector<Diagnostic> diagnostics;  // "unresolved-pronoun"
};

// Replaces personal and possessive pronouns by the nearest preceding mention
// of a compatible entity across `sentences` (one window). Token count and
// dependency slots are unchanged; possessives become "<Name>'s".
CorefResult resolve_coreferences(const std::vector<SentenceGraph> &sentences,
                                 const std::vector<Entity> &entities);

// Splits clauses linked by conj or advcl between verbs into separate graphs,
// copying the governing clause's subject into subject-less splits (those
// tokens are marked `copied`). Order follows the clause verbs.
std::vector<SentenceGraph> simplify(const SentenceGraph &graph);

// Default fluent keywords.
std::vector<std::string> default_fluent_keywords();

// Fluent iff one of `keywords` occurs as a token sequence, compared against
// lowercase text or lemma.
StateKind classify_state_kind(const SentenceGraph &graph,
                              const std::vector<std::string> &keywords);

}  // namespace nlplan

#endif  // NLPLAN_INGESTION_H_
