#ifndef NLPLAN_BUILTIN_PARSER_H_
#define NLPLAN_BUILTIN_PARSER_H_

#include <string>
#include <string_view>
#include <vector>

#include "nlplan/graph.h"
#include "nlplan/lexicon.h"

namespace nlplan {

struct GrammarTemplate {
  std::string name;
  std::string example;
};

// Reads data/grammar_templates.tsv.
std::vector<GrammarTemplate> load_grammar_templates(const std::string &path);

// Splits raw text into sentences at . ? ! and line breaks (decimals such as
// "0.9" are kept intact).
std::vector<std::string> split_sentences(std::string_view text);

// Word tokens with punctuation and the possessive clitic split off.
std::vector<std::string> tokenize(std::string_view sentence);

struct ParserOptions {
  // Phrases that open a new clause ("only if", "after which", "whenever").
  // Coordinators ("and", "or", ",") also split when a clause follows.
  std::vector<std::string> connectors;
  std::vector<GrammarTemplate> templates;
};

// Deterministic dependency parser for the controlled authoring grammar.
// Labels follow the ClearNLP set so its output is interchangeable with a
// CoNLL-U sidecar produced by an English dependency parser.
class BuiltinParser {
 public:
  BuiltinParser(Lexicon lexicon, ParserOptions options);

  // Throws Error("unparseable") naming the nearest grammar template.
  SentenceGraph parse(std::string_view sentence, int provenance = 0) const;

  const Lexicon &lexicon() const { return lexicon_; }

 private:
  Lexicon lexicon_;
  ParserOptions options_;
};

}  // namespace nlplan

#endif  // NLPLAN_BUILTIN_PARSER_H_
