#ifndef NLPLAN_AFFECT_EXTRACTION_H_
#define NLPLAN_AFFECT_EXTRACTION_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nlplan/affordance_extraction.h"
#include "nlplan/domain.h"
#include "nlplan/graph.h"

namespace nlplan {

struct AffectLexicon {
  std::map<std::string, std::string, std::less<>> emotion_words;  // angry -> anger
  std::map<std::string, int, std::less<>> mood_words;             // gloomy -> -1
  std::map<std::string, std::string, std::less<>> motivation_words;
  std::vector<std::pair<std::string, double>> magnitude_adverbs;  // phrase -> step
  std::vector<std::string> graded_adverbs;  // must have strictly rising steps
  std::vector<std::string> negations;
  std::vector<std::string> set_verbs;
  double default_magnitude = 0.2;

  static AffectLexicon load(const std::string &path);
  static AffectLexicon from_json_text(std::string_view text, const std::string &origin);

  // Magnitude of `adverb`, if listed.
  std::optional<double> magnitude_of(std::string_view adverb) const;
};

// Throws Error("bad-lexicon") when a magnitude is outside (0, 1], graded
// adverbs are not increasing, or a word maps outside the catalogs.
void check_lexicon(const AffectLexicon &lexicon, const std::vector<EmotionSpec> &emotions,
                   const MotivationCatalog &motivations);

std::vector<EmotionSpec> load_emotion_catalog(const std::string &path);

struct AffectSplit {
  SentenceGraph affect;
  SentenceGraph condition;
  // Trailing ", which sets X to N" moved from the condition to the affect side.
  std::optional<SentenceGraph> setter;
  std::string affect_text;
  std::string condition_text;
};

// Splits at the first affect marker. std::nullopt when none occurs.
std::optional<AffectSplit> split_affect_sentence(const SentenceGraph &graph,
                                                 const std::vector<std::string> &markers);

struct AffectTextSplit {
  std::string affect_text;
  std::string condition_text;
};

// Text-only variant. Throws Error("not-an-affect-rule").
AffectTextSplit split_affect_sentence(std::string_view sentence,
                                      const std::vector<std::string> &markers);

bool has_affect_marker(const std::vector<std::string> &words, const std::vector<std::string> &markers);

struct AffectParse {
  AffectTarget target;
  AffectChange change;
  std::vector<Diagnostic> diagnostics;  // "compound-affect"
};

// Scans affect-side words: "sets <motivation> to N" first, then emotion,
// mood and motivation words. Throws Error("unknown-affect").
AffectParse parse_affect_change(const std::vector<std::string> &words, const AffectLexicon &lexicon,
                                const std::vector<EmotionSpec> &emotions,
                                const MotivationCatalog &motivations);
AffectParse parse_affect_change(std::string_view affect_text, const AffectLexicon &lexicon,
                                const std::vector<EmotionSpec> &emotions,
                                const MotivationCatalog &motivations);

struct AffectOptions {
  const RuleCatalog *rules = nullptr;
  const AffectLexicon *lexicon = nullptr;
  UnifyOptions unify;
};

struct AffectResult {
  AffectRule rule;
  std::vector<std::string> new_states;
  std::vector<Diagnostic> diagnostics;
};

// Condition -> CNF over unified states, affect side -> target/change.
// Appends the rule to `bundle`.
AffectResult build_affect_rule(const AffectSplit &split, DomainBundle &bundle, const Matcher &matcher,
                               const AffectOptions &options);

}  // namespace nlplan

#endif  // NLPLAN_AFFECT_EXTRACTION_H_
