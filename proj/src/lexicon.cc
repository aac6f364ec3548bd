#include "nlplan/lexicon.h"

#include <fstream>

#include <json.hpp>

#include "nlplan/error.h"

namespace nlplan {
namespace {

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

}  // namespace

Lexicon Lexicon::load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("missing-resource", "cannot open lexicon '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception &e) {
    throw Error("bad-resource", "lexicon '" + path + "': " + e.what());
  }
  Lexicon lex;
  auto fill = [&](const char *key, std::set<std::string, std::less<>> &out) {
    for (const auto &w : doc.at(key)) out.insert(w.get<std::string>());
  };
  try {
    fill("verbs", lex.verbs_);
    fill("adjectives", lex.adjectives_);
    fill("adverbs", lex.adverbs_);
    fill("catenative_verbs", lex.catenative_);
    fill("linking_verbs", lex.linking_);
    fill("particles", lex.particles_);
    for (const auto &[form, lemma] : doc.at("irregular_verb_forms").items()) {
      lex.irregular_[form] = lemma.get<std::string>();
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error("bad-resource", "lexicon '" + path + "': " + e.what());
  }
  return lex;
}

std::optional<std::string> Lexicon::verb_lemma(std::string_view word) const {
  if (auto it = irregular_.find(word); it != irregular_.end()) return it->second;
  if (verbs_.count(word)) return std::string(word);
  std::string w(word);
  auto known = [&](const std::string &cand) -> std::optional<std::string> {
    if (verbs_.count(cand)) return cand;
    return std::nullopt;
  };
  auto stem_variants = [&](const std::string &stem) -> std::optional<std::string> {
    if (stem.empty()) return std::nullopt;
    if (auto v = known(stem)) return v;
    if (auto v = known(stem + "e")) return v;
    // stopped -> stop, running -> run
    if (stem.size() >= 2 && stem[stem.size() - 1] == stem[stem.size() - 2]) {
      if (auto v = known(stem.substr(0, stem.size() - 1))) return v;
    }
    return std::nullopt;
  };
  if (ends_with(w, "ies")) {
    if (auto v = known(w.substr(0, w.size() - 3) + "y")) return v;
  }
  if (ends_with(w, "ied")) {
    if (auto v = known(w.substr(0, w.size() - 3) + "y")) return v;
  }
  if (ends_with(w, "es")) {
    if (auto v = known(w.substr(0, w.size() - 2))) return v;
  }
  if (ends_with(w, "s")) {
    if (auto v = known(w.substr(0, w.size() - 1))) return v;
  }
  if (ends_with(w, "ed")) {
    if (auto v = stem_variants(w.substr(0, w.size() - 2))) return v;
  }
  if (ends_with(w, "ing")) {
    if (auto v = stem_variants(w.substr(0, w.size() - 3))) return v;
  }
  return std::nullopt;
}

std::string Lexicon::guess_verb_lemma(std::string_view word) {
  std::string w(word);
  if (w.size() > 4 && ends_with(w, "ies")) return w.substr(0, w.size() - 3) + "y";
  if (w.size() > 4 && (ends_with(w, "sses") || ends_with(w, "ches") ||
                       ends_with(w, "shes") || ends_with(w, "xes"))) {
    return w.substr(0, w.size() - 2);
  }
  if (w.size() > 3 && ends_with(w, "s") && !ends_with(w, "ss")) return w.substr(0, w.size() - 1);
  if (w.size() > 4 && ends_with(w, "ed")) {
    std::string stem = w.substr(0, w.size() - 2);
    if (stem.size() >= 2 && stem.back() == stem[stem.size() - 2]) stem.pop_back();
    return stem;
  }
  if (w.size() > 5 && ends_with(w, "ing")) {
    std::string stem = w.substr(0, w.size() - 3);
    if (stem.size() >= 2 && stem.back() == stem[stem.size() - 2]) {
      stem.pop_back();
    } else if (stem.size() >= 2 && !is_vowel(stem.back()) && is_vowel(stem[stem.size() - 2]) &&
               stem.size() >= 3 && !is_vowel(stem[stem.size() - 3])) {
      stem.push_back('e');  // "typing" -> "type"
    }
    return stem;
  }
  return w;
}

bool Lexicon::is_adjective(std::string_view word) const {
  if (adjectives_.count(word)) return true;
  for (std::string_view suffix : {"able", "ible", "ful", "ous", "ive", "less", "ish"}) {
    if (word.size() > suffix.size() + 2 && ends_with(word, suffix)) return true;
  }
  return false;
}

bool Lexicon::is_adverb(std::string_view word) const {
  if (adverbs_.count(word)) return true;
  return word.size() > 4 && ends_with(word, "ly") && !adjectives_.count(word);
}

}  // namespace nlplan
