#include "nlplan/affect_extraction.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nlplan/builtin_parser.h"
#include "nlplan/text_util.h"

namespace nlplan {
namespace {

using nlohmann::json;

std::vector<std::string> words_of(const SentenceGraph &g) {
  std::vector<std::string> out;
  for (const auto &t : g.tokens) out.push_back(t.text);
  return out;
}

bool is_punct(const std::string &w) {
  return !w.empty() && std::all_of(w.begin(), w.end(), [](unsigned char c) { return std::ispunct(c); });
}

std::pair<int, int> trim(const std::vector<std::string> &words, int first, int last) {
  while (first <= last && is_punct(words[first])) ++first;
  while (last >= first && is_punct(words[last])) --last;
  return {first, last};
}

// First marker occurrence, longest phrase at each position: (first, last), 0-based.
std::optional<std::pair<int, int>> first_marker(const std::vector<std::string> &words,
                                                const std::vector<std::string> &markers) {
  std::vector<std::vector<std::string>> phrases;
  for (const auto &m : markers) phrases.push_back(split_words(m));
  std::stable_sort(phrases.begin(), phrases.end(),
                   [](const auto &a, const auto &b) { return a.size() > b.size(); });
  for (size_t i = 0; i < words.size(); ++i) {
    for (const auto &p : phrases) {
      if (phrase_at(words, i, p)) return std::make_pair(static_cast<int>(i), static_cast<int>(i + p.size()) - 1);
    }
  }
  return std::nullopt;
}

std::optional<double> number(const std::string &s) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

const std::set<std::string, std::less<>> kFunctionWords = {
    "a", "an", "the", "he", "she", "it", "they", "his", "her", "its", "their", "will", "would",
    "can", "could", "be", "is", "are", "was", "get", "gets", "feel", "feels", "become", "becomes",
    "to", "of", "and", "or", "more", "much", "very"};

}  // namespace

AffectLexicon AffectLexicon::from_json_text(std::string_view text, const std::string &origin) {
  AffectLexicon lex;
  try {
    json doc = json::parse(text);
    for (const auto &[w, e] : doc.at("emotion_words").items()) lex.emotion_words[w] = e.get<std::string>();
    for (const auto &[w, d] : doc.at("mood_words").items()) lex.mood_words[w] = d.get<int>();
    for (const auto &[w, m] : doc.at("motivation_words").items()) lex.motivation_words[w] = m.get<std::string>();
    for (const auto &[w, m] : doc.at("magnitude_adverbs").items()) lex.magnitude_adverbs.push_back({w, m.get<double>()});
    lex.graded_adverbs = doc.value("graded_adverbs", std::vector<std::string>{});
    lex.negations = doc.at("negations").get<std::vector<std::string>>();
    lex.set_verbs = doc.value("set_verbs", std::vector<std::string>{"set", "sets"});
    lex.default_magnitude = doc.value("default_magnitude", 0.2);
  } catch (const json::exception &e) {
    throw Error("bad-lexicon", origin + ": " + e.what());
  }
  // Longest phrase first so "very much" wins over "very".
  std::stable_sort(lex.magnitude_adverbs.begin(), lex.magnitude_adverbs.end(), [](const auto &a, const auto &b) {
    return split_words(a.first).size() > split_words(b.first).size();
  });
  return lex;
}

AffectLexicon AffectLexicon::load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("missing-resource", "cannot open affect lexicon '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str(), path);
}

std::optional<double> AffectLexicon::magnitude_of(std::string_view adverb) const {
  std::string a = to_lower(adverb);
  for (const auto &[w, m] : magnitude_adverbs) {
    if (w == a) return m;
  }
  return std::nullopt;
}

void check_lexicon(const AffectLexicon &lexicon, const std::vector<EmotionSpec> &emotions,
                   const MotivationCatalog &motivations) {
  auto bad = [](const std::string &msg) { throw Error("bad-lexicon", msg); };
  if (!(lexicon.default_magnitude > 0 && lexicon.default_magnitude <= 1)) bad("default magnitude outside (0, 1]");
  for (const auto &[w, m] : lexicon.magnitude_adverbs) {
    if (!(m > 0 && m <= 1)) bad("magnitude of '" + w + "' outside (0, 1]");
  }
  std::optional<double> prev;
  for (const auto &g : lexicon.graded_adverbs) {
    auto m = lexicon.magnitude_of(g);
    if (!m) bad("graded adverb '" + g + "' has no magnitude");
    if (prev && !(*m > *prev)) bad("graded adverbs must have increasing magnitudes at '" + g + "'");
    prev = m;
  }
  for (const auto &[w, e] : lexicon.emotion_words) {
    bool known = std::any_of(emotions.begin(), emotions.end(),
                             [&](const EmotionSpec &s) { return s.name.str() == e; });
    if (!known) bad("emotion word '" + w + "' maps to unknown emotion '" + e + "'");
  }
  for (const auto &[w, m] : lexicon.motivation_words) {
    if (!Slug::is_valid(m) || !motivations.contains(Slug::parse(m))) {
      bad("motivation word '" + w + "' maps to unknown factor '" + m + "'");
    }
  }
  for (const auto &[w, d] : lexicon.mood_words) {
    if (d != 1 && d != -1) bad("mood word '" + w + "' needs direction 1 or -1");
  }
}

std::vector<EmotionSpec> load_emotion_catalog(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("missing-resource", "cannot open emotion catalog '" + path + "'");
  std::vector<EmotionSpec> out;
  try {
    json doc;
    in >> doc;
    for (const auto &e : doc.at("emotions")) {
      EmotionSpec s;
      s.name = Slug::parse(e.at("name").get<std::string>());
      auto pad = e.at("pad").get<std::vector<double>>();
      if (pad.size() != 3) throw Error("bad-resource", "emotion '" + s.name.str() + "' needs 3 PAD values");
      std::copy(pad.begin(), pad.end(), s.pad.begin());
      out.push_back(std::move(s));
    }
  } catch (const json::exception &e) {
    throw Error("bad-resource", "emotion catalog '" + path + "': " + e.what());
  }
  return out;
}

bool has_affect_marker(const std::vector<std::string> &words, const std::vector<std::string> &markers) {
  return first_marker(words, markers).has_value();
}

std::optional<AffectSplit> split_affect_sentence(const SentenceGraph &graph,
                                                 const std::vector<std::string> &markers) {
  const auto words = words_of(graph);
  const int n = static_cast<int>(words.size());
  auto m = first_marker(words, markers);
  if (!m) return std::nullopt;
  std::pair<int, int> affect{0, m->first - 1};
  std::pair<int, int> condition{m->second + 1, n - 1};
  if (m->first == 0) {
    // "Whenever he fails his exams, Max gets angry."
    int comma = -1;
    for (int i = m->second + 1; i < n; ++i) {
      if (words[i] == ",") {
        comma = i;
        break;
      }
    }
    if (comma < 0) return std::nullopt;
    condition = {m->second + 1, comma - 1};
    affect = {comma + 1, n - 1};
  }
  AffectSplit out;
  // ", which sets his honor to 0.9"
  for (int i = condition.first; i + 1 <= condition.second; ++i) {
    if (to_lower(words[i]) != "which") continue;
    std::string next = to_lower(words[i + 1]);
    if (next == "sets" || next == "set") {
      auto [sb, se] = trim(words, i + 1, condition.second);
      if (sb <= se) out.setter = subgraph(graph, sb + 1, se + 1);
      condition.second = i - 1;
      break;
    }
  }
  auto [ab, ae] = trim(words, affect.first, affect.second);
  auto [cb, ce] = trim(words, condition.first, condition.second);
  if (ab > ae || cb > ce) return std::nullopt;
  out.affect = subgraph(graph, ab + 1, ae + 1);
  out.condition = subgraph(graph, cb + 1, ce + 1);
  out.affect_text = out.affect.text();
  if (out.setter) out.affect_text += ", which " + out.setter->text();
  out.condition_text = out.condition.text();
  return out;
}

AffectTextSplit split_affect_sentence(std::string_view sentence, const std::vector<std::string> &markers) {
  SentenceGraph g;
  int i = 0;
  for (auto &w : tokenize(sentence)) {
    ++i;
    g.tokens.push_back(Token{i, w, to_lower(w), "X", i == 1 ? 0 : 1, i == 1 ? "ROOT" : "dep", false});
  }
  auto split = split_affect_sentence(g, markers);
  if (!split) throw Error("not-an-affect-rule", "no affect marker in: " + std::string(sentence));
  return {split->affect_text, split->condition_text};
}

AffectParse parse_affect_change(const std::vector<std::string> &raw, const AffectLexicon &lexicon,
                                const std::vector<EmotionSpec> &emotions,
                                const MotivationCatalog &motivations) {
  std::vector<std::string> words;
  for (const auto &w : raw) words.push_back(to_lower(w));
  auto motivation_at = [&](const std::string &w) -> std::optional<Slug> {
    if (auto it = lexicon.motivation_words.find(w); it != lexicon.motivation_words.end()) {
      return Slug::parse(it->second);
    }
    if (Slug::is_valid(w) && motivations.contains(Slug::parse(w))) return Slug::parse(w);
    return std::nullopt;
  };
  auto emotion_at = [&](const std::string &w) -> std::optional<Slug> {
    if (auto it = lexicon.emotion_words.find(w); it != lexicon.emotion_words.end()) {
      return Slug::parse(it->second);
    }
    for (const auto &e : emotions) {
      if (e.name.str() == w) return e.name;
    }
    return std::nullopt;
  };

  AffectParse out;
  std::optional<AffectParse> set_form;
  for (size_t i = 0; i < words.size() && !set_form; ++i) {
    if (std::find(lexicon.set_verbs.begin(), lexicon.set_verbs.end(), words[i]) == lexicon.set_verbs.end()) continue;
    for (size_t j = i + 1; j < words.size() && !set_form; ++j) {
      auto factor = motivation_at(words[j]);
      if (!factor) continue;
      for (size_t k = j + 1; k + 1 < words.size(); ++k) {
        if (words[k] != "to") continue;
        if (auto v = number(words[k + 1])) {
          set_form = AffectParse{AffectTarget::motivation(*factor), {AffectChange::Mode::kSet, *v}, {}};
        }
        break;
      }
    }
  }

  double magnitude = lexicon.default_magnitude;
  bool found_magnitude = false;
  for (size_t i = 0; i < words.size() && !found_magnitude; ++i) {
    for (const auto &[phrase, m] : lexicon.magnitude_adverbs) {
      if (phrase_at(words, i, split_words(phrase))) {
        magnitude = m;
        found_magnitude = true;
        break;
      }
    }
  }
  double sign = 1.0;
  for (const auto &neg : lexicon.negations) {
    auto p = split_words(neg);
    for (size_t i = 0; i < words.size(); ++i) {
      if (phrase_at(words, i, p)) sign = -1.0;
    }
  }

  std::optional<AffectTarget> target;
  std::vector<std::string> also;
  double direction = 1.0;
  for (const auto &w : words) {
    if (auto e = emotion_at(w)) {
      if (!target) target = AffectTarget::emotion(*e);
      else also.push_back(w);
    }
  }
  for (const auto &w : words) {
    if (auto it = lexicon.mood_words.find(w); it != lexicon.mood_words.end()) {
      if (!target) {
        target = AffectTarget::mood();
        direction = it->second;
      } else {
        also.push_back(w);
      }
    }
  }
  for (const auto &w : words) {
    if (auto f = motivation_at(w)) {
      if (set_form) continue;
      if (!target) target = AffectTarget::motivation(*f);
      else also.push_back(w);
    }
  }

  if (set_form) {
    out = *set_form;
    if (target) {
      out.diagnostics.push_back({"compound-affect", target->label(),
                                 "only the set rule is kept; '" + target->label() + "' is ignored"});
    }
    return out;
  }
  if (!target) {
    std::string candidates;
    for (const auto &w : words) {
      if (is_punct(w) || kFunctionWords.count(w)) continue;
      if (!candidates.empty()) candidates += ", ";
      candidates += w;
    }
    throw Error("unknown-affect", "no emotion, mood or motivation word among: " + candidates);
  }
  out.target = *target;
  out.change = {AffectChange::Mode::kShift, sign * direction * magnitude};
  for (const auto &w : also) {
    out.diagnostics.push_back({"compound-affect", w, "only the first affect target is kept; '" + w + "' is ignored"});
  }
  return out;
}

AffectParse parse_affect_change(std::string_view affect_text, const AffectLexicon &lexicon,
                                const std::vector<EmotionSpec> &emotions,
                                const MotivationCatalog &motivations) {
  return parse_affect_change(tokenize(affect_text), lexicon, emotions, motivations);
}

AffectResult build_affect_rule(const AffectSplit &split, DomainBundle &bundle, const Matcher &matcher,
                               const AffectOptions &options) {
  if (!options.rules || !options.lexicon) throw Error("bad-config", "affect extraction needs rules and a lexicon");
  auto words = words_of(split.affect);
  if (split.setter) {
    auto more = words_of(*split.setter);
    words.insert(words.end(), more.begin(), more.end());
  }
  auto parsed = parse_affect_change(words, *options.lexicon, bundle.emotion_catalog, bundle.motivation_catalog);
  auto conditions = extract_conditions(split.condition, *options.rules);
  if (conditions.empty()) {
    throw Error("empty-condition", "no state found in the condition '" + split.condition_text + "'");
  }
  auto u = unify_conditions(conditions, bundle, matcher, options.unify);
  AffectResult out;
  out.rule = AffectRule{u.cnf, parsed.target, parsed.change};
  out.new_states = std::move(u.new_states);
  out.diagnostics = std::move(u.diagnostics);
  out.diagnostics.insert(out.diagnostics.end(), parsed.diagnostics.begin(), parsed.diagnostics.end());
  bundle.affect_rules.push_back(out.rule);
  return out;
}

}  // namespace nlplan
