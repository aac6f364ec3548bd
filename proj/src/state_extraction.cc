#include "nlplan/state_extraction.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

#include "nlplan/error.h"

namespace nlplan {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_verb(const Token &t) { return t.pos == "VERB" || t.pos == "AUX"; }

RuleKind parse_kind(const std::string &s) {
  if (s == "binary") return RuleKind::kBinary;
  if (s == "fluent") return RuleKind::kFluent;
  if (s == "both") return RuleKind::kBoth;
  throw Error("bad-resource", "unknown rule kind '" + s + "'");
}

bool applies(RuleKind rule, StateKind kind) {
  return rule == RuleKind::kBoth || (rule == RuleKind::kBinary) == (kind == StateKind::kBinary);
}

// Anchor tokens of fluent keywords: the last word of each match.
std::vector<int> keyword_anchors(const SentenceGraph &g, const std::vector<std::string> &keywords) {
  std::vector<int> out;
  for (const auto &kw : keywords) {
    std::istringstream in(lower(kw));
    std::vector<std::string> words;
    for (std::string w; in >> w;) words.push_back(w);
    int n = static_cast<int>(words.size());
    for (int i = 1; n > 0 && i + n - 1 <= g.size(); ++i) {
      bool ok = true;
      for (int k = 0; k < n && ok; ++k) {
        const Token &t = g.at(i + k);
        ok = lower(t.text) == words[k] || lower(t.lemma) == words[k];
      }
      if (ok && std::find(out.begin(), out.end(), i + n - 1) == out.end()) out.push_back(i + n - 1);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

class Extractor {
 public:
  Extractor(const SentenceGraph &g, const RuleCatalog &c) : g_(g), c_(c) {}

  std::vector<Extraction> run(StateKind kind) {
    const int verb = content_verb(g_);
    std::vector<Extraction> out;
    std::vector<std::set<int>> taken;
    for (const auto &rule : c_.rules) {
      if (!applies(rule.kind, kind) || rule.path.empty()) continue;
      for (auto &path : match(rule, verb)) {
        std::set<int> tokens(path.begin(), path.end());
        bool subsumed = std::any_of(taken.begin(), taken.end(), [&](const std::set<int> &s) {
          return std::includes(s.begin(), s.end(), tokens.begin(), tokens.end());
        });
        if (subsumed) continue;
        taken.push_back(tokens);
        for (int end : fan_out(path.back())) {
          auto complement = build_complement(rule.builder, end);
          if (!complement) continue;
          std::vector<int> p = path;
          if (end != path.back()) p.push_back(end);
          Extraction e;
          e.rule = rule.name.str();
          e.triple.subject = subject(verb);
          e.triple.predicate = predicate(rule, verb, path);
          e.triple.complement = *complement;
          e.polarity = !negated(verb, path);
          e.path_tokens = std::move(p);
          bool dup = std::any_of(out.begin(), out.end(), [&](const Extraction &x) {
            return x.triple == e.triple && x.polarity == e.polarity;
          });
          if (!dup) out.push_back(std::move(e));
        }
      }
    }
    return out;
  }

 private:
  std::vector<std::vector<int>> match(const RelationRule &rule, int verb) const {
    std::vector<std::vector<int>> starts;
    size_t first_step = 0;
    if (rule.anchor == "keyword") {
      for (int a : keyword_anchors(g_, c_.fluent_keywords)) {
        if (g_.at(a).deprel == rule.path[0]) starts.push_back({a});
      }
      first_step = 1;
    } else {
      int anchor = rule.anchor == "root" ? g_.root() : verb;
      if (anchor == 0) return {};
      starts.push_back({anchor});
    }
    std::vector<std::vector<int>> out;
    std::function<void(std::vector<int> &, size_t)> walk = [&](std::vector<int> &p, size_t step) {
      if (step == rule.path.size()) {
        out.push_back(p);
        return;
      }
      for (int c : g_.children(p.back(), rule.path[step])) {
        p.push_back(c);
        walk(p, step + 1);
        p.pop_back();
      }
    };
    for (auto &s : starts) {
      walk(s, first_step);
    }
    // The anchor verb is not part of the matched relation itself.
    if (rule.anchor != "keyword") {
      for (auto &p : out) p.erase(p.begin());
    }
    return out;
  }

  // The complement token and its conjuncts, in sentence order.
  std::vector<int> fan_out(int end) const {
    std::vector<int> out = {end};
    for (size_t k = 0; k < out.size(); ++k) {
      for (int c : g_.children(out[k], "conj")) out.push_back(c);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::optional<Slug> build_complement(const std::string &builder, int end) const {
    const Token &t = g_.at(end);
    if (t.pos == "PRON" || t.pos == "PUNCT") return std::nullopt;
    std::vector<std::string> words;
    if (builder == "verb_phrase" || (builder == "noun" && t.pos == "VERB")) {
      words.push_back(lower(t.lemma));
      if (int prt = g_.first_child(end, "prt")) words.push_back(lower(g_.at(prt).text));
      if (int obj = g_.first_child(end, "dobj")) words.push_back(nominal_form(g_.at(obj)));
    } else if (builder == "word") {
      words.push_back(lower(t.lemma.empty() ? t.text : t.lemma));
    } else if (builder == "noun") {
      words.push_back(nominal_form(t));
      // "sees his team lose": the object's bare-verb complement.
      if (t.deprel == "dobj") {
        for (int x : g_.children(t.head, "xcomp")) {
          if (x > end && g_.children(x, "aux").empty()) words.push_back(lower(g_.at(x).lemma));
        }
      }
    } else {
      throw Error("bad-resource", "unknown complement builder '" + builder + "'");
    }
    try {
      return slugify(words);
    } catch (const Error &) {
      return std::nullopt;
    }
  }

  Slug subject(int verb) const {
    for (int cur = verb; cur != 0; cur = g_.at(cur).head) {
      if (int s = g_.first_child(cur, "nsubj")) {
        const Token &t = g_.at(s);
        if (t.pos == "PRON") {
          throw Error("missing-subject", "unresolved pronoun subject '" + t.text + "' in: " + g_.source);
        }
        return slugify(nominal_form(t));
      }
    }
    throw Error("missing-subject", "no subject in: " + g_.source);
  }

  Slug predicate(const RelationRule &rule, int verb, const std::vector<int> &path) const {
    std::set<int> on_path(path.begin(), path.end());
    int v = verb;
    if (rule.predicate == "path_verb") {
      for (int i : path) {
        if (is_verb(g_.at(i))) v = i;
      }
    }
    std::string lemma = lower(g_.at(v).lemma);
    if (auto it = c_.predicate_aliases.find(lemma); it != c_.predicate_aliases.end()) {
      lemma = it->second;
    }
    std::vector<std::string> words = {lemma};
    if (rule.predicate == "verb_acomp") {
      if (int a = g_.first_child(v, "acomp")) words.push_back(lower(g_.at(a).lemma));
      return slugify(words);
    }
    if (int prt = g_.first_child(v, "prt")) words.push_back(lower(g_.at(prt).text));
    if (auto it = c_.phrasal_prepositions.find(lower(g_.at(v).lemma));
        it != c_.phrasal_prepositions.end()) {
      for (int p : g_.children(v, "prep")) {
        if (lower(g_.at(p).text) == it->second && !on_path.count(p)) {
          words.push_back(it->second);
          break;
        }
      }
    }
    return slugify(words);
  }

  bool negated(int verb, const std::vector<int> &path) const {
    if (g_.first_child(verb, "neg")) return true;
    for (int cur = g_.at(verb).head; cur != 0; cur = g_.at(cur).head) {
      if (g_.first_child(cur, "neg")) return true;
    }
    for (int i : path) {
      if (is_verb(g_.at(i)) && g_.first_child(i, "neg")) return true;
    }
    return false;
  }

  const SentenceGraph &g_;
  const RuleCatalog &c_;
};

}  // namespace

RuleCatalog load_rule_catalog(const std::string &path, std::vector<std::string> fluent_keywords) {
  std::ifstream in(path);
  if (!in) throw Error("missing-resource", "cannot open rule catalog '" + path + "'");
  RuleCatalog cat;
  cat.fluent_keywords = std::move(fluent_keywords);
  try {
    nlohmann::json doc;
    in >> doc;
    std::set<std::string> names;
    for (const auto &r : doc.at("rules")) {
      RelationRule rule;
      rule.name = Slug::parse(r.at("name").get<std::string>());
      rule.kind = parse_kind(r.at("kind").get<std::string>());
      rule.anchor = r.value("anchor", "content_verb");
      rule.path = r.at("path").get<std::vector<std::string>>();
      rule.builder = r.value("builder", "noun");
      rule.predicate = r.value("predicate", "verb");
      if (rule.path.empty()) throw Error("bad-resource", "rule '" + rule.name.str() + "' has an empty path");
      if (!names.insert(rule.name.str()).second) {
        throw Error("bad-resource", "duplicate rule name '" + rule.name.str() + "'");
      }
      if (rule.anchor != "root" && rule.anchor != "content_verb" && rule.anchor != "keyword") {
        throw Error("bad-resource", "rule '" + rule.name.str() + "': unknown anchor '" + rule.anchor + "'");
      }
      cat.rules.push_back(std::move(rule));
    }
    const auto phrasal = doc.value("phrasal_prepositions", nlohmann::json::object());
    for (const auto &[verb, prep] : phrasal.items()) {
      cat.phrasal_prepositions[verb] = prep.get<std::string>();
    }
    const auto aliases = doc.value("predicate_aliases", nlohmann::json::object());
    for (const auto &[from, to] : aliases.items()) {
      cat.predicate_aliases[from] = to.get<std::string>();
    }
  } catch (const nlohmann::json::exception &e) {
    throw Error("bad-resource", "rule catalog '" + path + "': " + e.what());
  }
  return cat;
}

int content_verb(const SentenceGraph &graph) {
  int v = graph.root();
  while (v != 0) {
    if (graph.first_child(v, "dobj") || graph.first_child(v, "attr")) break;
    int next = 0;
    for (int x : graph.children(v, "xcomp")) {
      const Token &t = graph.at(x);
      bool infinitive = false;
      for (int a : graph.children(x, "aux")) infinitive = infinitive || lower(graph.at(a).text) == "to";
      bool gerund = lower(t.text).ends_with("ing");
      if (is_verb(t) && (infinitive || gerund)) {
        next = x;
        break;
      }
    }
    if (next == 0) break;
    v = next;
  }
  return v;
}

std::vector<Extraction> extract(const SentenceGraph &graph, StateKind kind,
                                const RuleCatalog &catalog) {
  if (graph.size() == 0) return {};
  return Extractor(graph, catalog).run(kind);
}

std::vector<StateTriple> extract_triples(const SentenceGraph &graph, StateKind kind,
                                         const RuleCatalog &catalog) {
  std::vector<StateTriple> out;
  for (auto &e : extract(graph, kind, catalog)) out.push_back(std::move(e.triple));
  return out;
}

std::vector<std::string> build_state_decls(const std::vector<StateTriple> &triples,
                                           StateKind kind, DomainBundle &bundle) {
  std::vector<std::string> ids;
  for (const auto &t : triples) ids.push_back(intern_state(bundle, t, kind));
  return ids;
}

}  // namespace nlplan
