#include "nlplan/spellcheck.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "nlplan/error.h"
#include "nlplan/text_util.h"

namespace nlplan {

Dictionary Dictionary::load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("missing-resource", "cannot open dictionary '" + path + "'");
  std::vector<std::pair<std::string, int>> words;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string w;
    int f = 1;
    ls >> w;
    if (w.empty()) continue;
    if (!(ls >> f)) f = 1;
    words.emplace_back(to_lower(w), f);
  }
  return from_words(words);
}

Dictionary Dictionary::from_words(const std::vector<std::pair<std::string, int>> &words) {
  Dictionary d;
  for (const auto &[w, f] : words) {
    auto [it, fresh] = d.freq_.emplace(w, f);
    if (fresh) {
      d.words_.emplace_back(w, f);
    } else if (f > it->second) {
      it->second = f;
    }
  }
  for (auto &[w, f] : d.words_) f = d.freq_[w];
  return d;
}

bool Dictionary::contains(std::string_view word) const { return freq_.count(std::string(word)) > 0; }

int Dictionary::frequency(std::string_view word) const {
  auto it = freq_.find(std::string(word));
  return it == freq_.end() ? 0 : it->second;
}

std::vector<SpellFlag> spellcheck(std::string_view text, const Dictionary &dictionary,
                                  const std::set<std::string, std::less<>> &domain_vocabulary,
                                  size_t max_candidates) {
  std::vector<SpellFlag> out;
  auto word_char = [](char c) {
    return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
  };
  size_t i = 0;
  while (i < text.size()) {
    if (!word_char(text[i])) {
      ++i;
      continue;
    }
    size_t start = i;
    while (i < text.size() && (word_char(text[i]) || std::isdigit(static_cast<unsigned char>(text[i])))) ++i;
    std::string_view raw = text.substr(start, i - start);
    // trim quotes and a possessive clitic
    while (!raw.empty() && raw.front() == '\'') {
      raw.remove_prefix(1);
      ++start;
    }
    while (!raw.empty() && raw.back() == '\'') raw.remove_suffix(1);
    std::string w = to_lower(raw);
    if (w.size() > 2 && w.ends_with("'s")) w.resize(w.size() - 2);
    if (w.empty() || dictionary.contains(w) || domain_vocabulary.count(w)) continue;
    bool exempt = w.find('_') != std::string::npos;
    if (exempt) {
      // a slug is fine when every piece is known
      std::istringstream parts(w);
      std::string piece;
      while (std::getline(parts, piece, '_')) {
        if (!piece.empty() && !dictionary.contains(piece) && !domain_vocabulary.count(piece)) exempt = false;
      }
    }
    if (exempt || w.find('\'') != std::string::npos) continue;

    std::vector<std::tuple<size_t, int, std::string>> cands;
    for (const auto &[dw, f] : dictionary.words()) {
      size_t a = dw.size(), b = w.size();
      if ((a > b ? a - b : b - a) > 2) continue;
      size_t d = levenshtein(w, dw);
      if (d <= 2) cands.emplace_back(d, -f, dw);
    }
    std::sort(cands.begin(), cands.end());
    SpellFlag flag{std::string(raw), start, {}};
    for (size_t k = 0; k < cands.size() && k < max_candidates; ++k) flag.candidates.push_back(std::get<2>(cands[k]));
    out.push_back(std::move(flag));
  }
  return out;
}

}  // namespace nlplan
