#ifndef NLPLAN_LEXICON_H_
#define NLPLAN_LEXICON_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>

namespace nlplan {

// Open-class word lists for the controlled-grammar parser. Closed classes
// (determiners, pronouns, prepositions, modals) are fixed in the parser.
class Lexicon {
 public:
  // Reads the JSON word lists (see data/lexicon.json).
  static Lexicon load(const std::string &path);

  // Lemma when `word` (lowercase) is an inflection of a known verb.
  std::optional<std::string> verb_lemma(std::string_view word) const;
  // Best-effort lemma for an unknown word used in verb position.
  static std::string guess_verb_lemma(std::string_view word);

  bool is_adjective(std::string_view word) const;
  bool is_adverb(std::string_view word) const;
  bool is_catenative(std::string_view lemma) const { return catenative_.count(lemma) > 0; }
  bool is_linking(std::string_view lemma) const { return linking_.count(lemma) > 0; }
  bool is_particle(std::string_view word) const { return particles_.count(word) > 0; }

  void add_verb(std::string lemma) { verbs_.insert(std::move(lemma)); }
  void add_adjective(std::string word) { adjectives_.insert(std::move(word)); }

 private:
  std::set<std::string, std::less<>> verbs_;
  std::map<std::string, std::string, std::less<>> irregular_;
  std::set<std::string, std::less<>> adjectives_;
  std::set<std::string, std::less<>> adverbs_;
  std::set<std::string, std::less<>> catenative_;
  std::set<std::string, std::less<>> linking_;
  std::set<std::string, std::less<>> particles_;
};

}  // namespace nlplan

#endif  // NLPLAN_LEXICON_H_
