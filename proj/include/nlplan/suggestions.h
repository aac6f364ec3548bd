#ifndef NLPLAN_SUGGESTIONS_H_
#define NLPLAN_SUGGESTIONS_H_

#include <string>
#include <vector>

#include <json.hpp>

#include "nlplan/affordance_extraction.h"
#include "nlplan/conceptnet.h"
#include "nlplan/domain.h"

namespace nlplan {

enum class SuggestionKind { kMissingAffectRule, kIncompleteAffordance, kCapability, kAffordanceCondition, kAffectTrigger };
enum class SuggestionStatus { kPending, kAccepted, kRejected };

std::string_view to_string(SuggestionKind k);  // "missing-affect-rule", ...
std::string_view to_string(SuggestionStatus s);
SuggestionKind parse_suggestion_kind(std::string_view s);
SuggestionStatus parse_suggestion_status(std::string_view s);

// A pending domain edit. The id is derived from what the edit touches, so
// the same proposal always gets the same id.
//
// payload by kind:
//   missing-affect-rule, affect-trigger: {"rule": <rule>}
//   incomplete-affordance: {"owner", "affordance", "missing": ["pre"|"post"...]}
//   capability: {"affordance": <affordance with empty conditions>}
//   affordance-condition: {"owner", "affordance", "role": "pre"|"post", "triple": <triple>}
struct Suggestion {
  std::string id;
  SuggestionKind kind = SuggestionKind::kMissingAffectRule;
  std::string prompt;
  nlohmann::json payload;
  double score = 0.0;
  SuggestionStatus status = SuggestionStatus::kPending;

  bool operator==(const Suggestion &) const = default;
};

nlohmann::json suggestion_to_json(const Suggestion &s);
Suggestion suggestion_from_json(const nlohmann::json &j);

// Score descending, then id.
void sort_suggestions(std::vector<Suggestion> &list);

// Every (binary state, catalog affect) pair without a rule whose phrase
// similarity clears `threshold`; accepting adds a +default_magnitude shift.
std::vector<Suggestion> propose_missing_rules(const DomainBundle &bundle, const Matcher &matcher,
                                              double threshold, double default_magnitude = 0.2);

std::vector<Suggestion> flag_incomplete_affordances(const DomainBundle &bundle, int min_pre = 1, int min_post = 1);

struct CommonsenseOptions {
  double min_weight = 1.0;
  int page_size = 20;
  double trigger_threshold = 0.6;
  double default_magnitude = 0.2;
};

// Capabilities per typed object, pre/post questions per affordance and
// affect triggers per binary state, all from ConceptNet edges. Proposals
// already present in the bundle are skipped.
std::vector<Suggestion> commonsense_suggestions(const DomainBundle &bundle, ConceptNetClient &client,
                                                const ConceptNetCatalog &catalog, const Matcher &matcher,
                                                const CommonsenseOptions &options = {});

// Applies the payload. Throws Error("stale-suggestion") when it no longer
// fits the bundle (unknown affordance, duplicate, ...).
void apply_suggestion(DomainBundle &bundle, const Suggestion &suggestion);

}  // namespace nlplan

#endif  // NLPLAN_SUGGESTIONS_H_
