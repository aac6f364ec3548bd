#ifndef NLPLAN_RESOURCES_H_
#define NLPLAN_RESOURCES_H_

#include <memory>
#include <string>
#include <vector>

#include "nlplan/affect_extraction.h"
#include "nlplan/affordance_extraction.h"
#include "nlplan/builtin_parser.h"
#include "nlplan/conceptnet.h"
#include "nlplan/config.h"
#include "nlplan/semantics.h"
#include "nlplan/spellcheck.h"
#include "nlplan/state_extraction.h"

namespace nlplan {

// data/patterns.json: affordance split patterns, affect markers,
// uncertainty keywords and the extra words that open a clause.
struct PatternCatalog {
  std::vector<SplitPattern> affordance;
  std::vector<std::string> affect_markers;
  ProbabilityMap probabilities;
  std::vector<std::string> clause_connectors;

  static PatternCatalog load(const std::string &path);
  static PatternCatalog from_json_text(std::string_view text, const std::string &origin);

  // Every phrase the parser should treat as a clause boundary.
  std::vector<std::string> connectors() const;
};

// Everything the pipeline reads from disk, loaded once and shared
// read-only between sessions.
struct Resources {
  Config config;
  PatternCatalog patterns;
  RuleCatalog rules;
  std::unique_ptr<BuiltinParser> parser;
  AffectLexicon affect_lexicon;
  std::vector<EmotionSpec> emotions;
  MotivationCatalog motivations;
  EmbeddingTable embeddings;
  Dictionary dictionary;
  ConceptNetCatalog conceptnet;
  std::vector<Diagnostic> diagnostics;  // load-time warnings

  Matcher matcher() const;
  // A bundle with the affect catalogs filled in and nothing else.
  DomainBundle empty_bundle() const;
};

// Throws Error (missing-resource, bad-resource, bad-embeddings, ...) when a
// configured file cannot be loaded.
std::shared_ptr<const Resources> load_resources(const Config &config);

}  // namespace nlplan

#endif  // NLPLAN_RESOURCES_H_
