#include "nlplan/text_util.h"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace nlplan {

std::string to_lower(std::string_view s) {
  std::string out(s);
  for (auto &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> split_words(std::string_view phrase) {
  std::vector<std::string> out;
  std::istringstream in{to_lower(phrase)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

bool phrase_at(const std::vector<std::string> &words, size_t pos,
               const std::vector<std::string> &phrase) {
  if (phrase.empty() || pos + phrase.size() > words.size()) return false;
  for (size_t k = 0; k < phrase.size(); ++k) {
    if (to_lower(words[pos + k]) != phrase[k]) return false;
  }
  return true;
}

std::string display_slug(std::string_view slug, bool capitalize) {
  std::string out(slug);
  std::replace(out.begin(), out.end(), '_', ' ');
  if (capitalize && !out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

size_t levenshtein(std::string_view a, std::string_view b) {
  std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

}  // namespace nlplan
