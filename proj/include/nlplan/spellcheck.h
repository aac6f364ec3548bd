#ifndef NLPLAN_SPELLCHECK_H_
#define NLPLAN_SPELLCHECK_H_

#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace nlplan {

// Word list with frequencies (higher = more common).
class Dictionary {
 public:
  // "word<TAB>frequency" or "word" per line; '#' starts a comment line.
  static Dictionary load(const std::string &path);
  static Dictionary from_words(const std::vector<std::pair<std::string, int>> &words);

  bool contains(std::string_view word) const;
  int frequency(std::string_view word) const;  // 0 when absent
  size_t size() const { return words_.size(); }
  const std::vector<std::pair<std::string, int>> &words() const { return words_; }

 private:
  std::vector<std::pair<std::string, int>> words_;
  std::unordered_map<std::string, int> freq_;
};

struct SpellFlag {
  std::string token;
  size_t offset = 0;  // byte offset into the checked text
  std::vector<std::string> candidates;

  bool operator==(const SpellFlag &) const = default;
};

// Flags words found neither in the dictionary nor in `domain_vocabulary`
// (compared lowercase; a slug is exempt as a whole and word by word).
// Candidates are dictionary words within edit distance 2, closest first,
// then most frequent, at most `max_candidates`.
std::vector<SpellFlag> spellcheck(std::string_view text, const Dictionary &dictionary,
                                  const std::set<std::string, std::less<>> &domain_vocabulary = {},
                                  size_t max_candidates = 5);

}  // namespace nlplan

#endif  // NLPLAN_SPELLCHECK_H_
