#ifndef NLPLAN_TEXT_UTIL_H_
#define NLPLAN_TEXT_UTIL_H_

#include <string>
#include <string_view>
#include <vector>

namespace nlplan {

std::string to_lower(std::string_view s);

// Whitespace-separated, lowercased words.
std::vector<std::string> split_words(std::string_view phrase);

// True when `phrase` (lowercase words) occurs in `words` at `pos`,
// comparing case-insensitively.
bool phrase_at(const std::vector<std::string> &words, size_t pos,
               const std::vector<std::string> &phrase);

// "max_go" -> "Max go"
std::string display_slug(std::string_view slug, bool capitalize = true);

size_t levenshtein(std::string_view a, std::string_view b);

}  // namespace nlplan

#endif  // NLPLAN_TEXT_UTIL_H_
