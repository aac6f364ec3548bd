#include "nlplan/affordance_extraction.h"

#include <algorithm>
#include <map>
#include <set>

#include "nlplan/builtin_parser.h"
#include "nlplan/ingestion.h"
#include "nlplan/text_util.h"

namespace nlplan {
namespace {

enum class Role { kPre, kPost };

struct MarkerHit {
  int first;  // 0-based
  int last;   // inclusive
  Role role;
};

std::vector<std::string> words_of(const SentenceGraph &g) {
  std::vector<std::string> out;
  for (const auto &t : g.tokens) out.push_back(t.text);
  return out;
}

std::vector<MarkerHit> find_markers(const std::vector<std::string> &words,
                                    const std::vector<SplitPattern> &patterns) {
  std::vector<std::pair<std::vector<std::string>, Role>> markers;
  for (const auto &p : patterns) {
    markers.push_back({split_words(p.pre_marker), Role::kPre});
    markers.push_back({split_words(p.post_marker), Role::kPost});
  }
  std::stable_sort(markers.begin(), markers.end(),
                   [](const auto &a, const auto &b) { return a.first.size() > b.first.size(); });
  std::vector<MarkerHit> hits;
  for (size_t i = 0; i < words.size();) {
    bool hit = false;
    for (const auto &[phrase, role] : markers) {
      if (phrase_at(words, i, phrase)) {
        hits.push_back({static_cast<int>(i), static_cast<int>(i + phrase.size()) - 1, role});
        i += phrase.size();
        hit = true;
        break;
      }
    }
    if (!hit) ++i;
  }
  return hits;
}

bool is_punct(const std::string &w) {
  return !w.empty() && std::all_of(w.begin(), w.end(), [](unsigned char c) { return std::ispunct(c); });
}

// Trims punctuation at both ends of a 0-based inclusive span.
std::pair<int, int> trim(const std::vector<std::string> &words, int first, int last) {
  while (first <= last && is_punct(words[first])) ++first;
  while (last >= first && is_punct(words[last])) --last;
  return {first, last};
}

void append_segment(std::optional<SentenceGraph> &slot, std::optional<std::string> &text,
                    SentenceGraph part) {
  if (!slot) {
    text = part.text();
    slot = std::move(part);
    return;
  }
  // Join a repeated segment with "and" under the first segment's root.
  SentenceGraph &g = *slot;
  int offset = g.size() + 1;
  int old_root = g.root();
  Token conj{offset, "and", "and", "CCONJ", old_root, "cc", false};
  g.tokens.push_back(conj);
  for (Token t : part.tokens) {
    t.index += offset;
    if (t.head == 0) {
      t.head = old_root;
      t.deprel = "conj";
    } else {
      t.head += offset;
    }
    g.tokens.push_back(std::move(t));
  }
  g.source = g.text();
  text = g.source;
}

}  // namespace

ProbabilityMap default_probability_map() {
  return {{"definitely", 1.0}, {"probably", 0.8}, {"possibly", 0.5}};
}

void check_patterns(const std::vector<SplitPattern> &patterns) {
  std::set<std::string> seen;
  for (const auto &p : patterns) {
    for (const auto *m : {&p.pre_marker, &p.post_marker}) {
      auto norm = split_words(*m);
      if (norm.empty()) throw Error("bad-patterns", "pattern '" + p.name.str() + "' has an empty marker");
      std::string key;
      for (const auto &w : norm) key += w + " ";
      if (!seen.insert(key).second) {
        throw Error("bad-patterns", "marker '" + *m + "' is used more than once");
      }
    }
  }
}

bool has_affordance_marker(const std::vector<std::string> &words,
                           const std::vector<SplitPattern> &patterns) {
  return !find_markers(words, patterns).empty();
}

std::optional<AffordanceSplit> split_affordance(const SentenceGraph &graph,
                                                const std::vector<SplitPattern> &patterns) {
  const auto words = words_of(graph);
  auto hits = find_markers(words, patterns);
  if (hits.empty()) return std::nullopt;
  AffordanceSplit out;
  out.draft.provenance = graph.provenance;
  const int n = static_cast<int>(words.size());

  std::pair<int, int> head{0, hits[0].first - 1};
  size_t first_segment = 0;
  std::vector<std::pair<Role, std::pair<int, int>>> segments;
  if (hits[0].first == 0 && hits[0].role == Role::kPre) {
    // "If he has an exam, Max goes to the library."
    int seg_end = hits.size() > 1 ? hits[1].first - 1 : n - 1;
    int comma = -1;
    for (int i = hits[0].last + 1; i <= seg_end; ++i) {
      if (words[i] == ",") {
        comma = i;
        break;
      }
    }
    if (comma < 0) return std::nullopt;
    segments.push_back({Role::kPre, {hits[0].last + 1, comma - 1}});
    head = {comma + 1, seg_end};
    first_segment = 1;
  }
  for (size_t k = first_segment; k < hits.size(); ++k) {
    int end = k + 1 < hits.size() ? hits[k + 1].first - 1 : n - 1;
    segments.push_back({hits[k].role, {hits[k].last + 1, end}});
  }
  for (const auto &h : hits) out.markers.push_back({h.first + 1, h.last + 1});

  auto [hb, he] = trim(words, head.first, head.second);
  if (hb > he) return std::nullopt;
  out.head = subgraph(graph, hb + 1, he + 1);
  out.draft.head_text = out.head.text();
  for (const auto &[role, span] : segments) {
    auto [b, e] = trim(words, span.first, span.second);
    if (b > e) continue;
    SentenceGraph part = subgraph(graph, b + 1, e + 1);
    if (role == Role::kPre) {
      append_segment(out.pre, out.draft.pre_text, std::move(part));
    } else {
      append_segment(out.post, out.draft.post_text, std::move(part));
    }
  }
  return out;
}

AffordanceDraft split_affordance(std::string_view sentence,
                                 const std::vector<SplitPattern> &patterns) {
  SentenceGraph g;
  int i = 0;
  for (auto &w : tokenize(sentence)) {
    ++i;
    g.tokens.push_back(Token{i, w, to_lower(w), "X", i == 1 ? 0 : 1, i == 1 ? "ROOT" : "dep", false});
  }
  g.source = std::string(sentence);
  auto split = split_affordance(g, patterns);
  if (!split) throw Error("not-an-affordance", "no affordance marker in: " + std::string(sentence));
  return split->draft;
}

Slug clause_subject(const SentenceGraph &graph) {
  for (int cur = content_verb(graph); cur != 0; cur = graph.at(cur).head) {
    if (int s = graph.first_child(cur, "nsubj")) {
      const Token &t = graph.at(s);
      if (t.pos == "PRON") {
        throw Error("missing-subject", "unresolved pronoun subject '" + t.text + "' in: " + graph.text());
      }
      return slugify(nominal_form(t));
    }
  }
  throw Error("missing-subject", "no subject in: " + graph.text());
}

Slug derive_affordance_name(const SentenceGraph &head) {
  int v = content_verb(head);
  if (v == 0 || (head.at(v).pos != "VERB" && head.at(v).pos != "AUX")) {
    throw Error("no-verb", "no main verb in affordance head: " + head.text());
  }
  std::vector<std::string> words = {to_lower(head.at(v).lemma)};
  if (int prt = head.first_child(v, "prt")) words.push_back(to_lower(head.at(prt).text));
  auto noun_phrase = [&](int n) {
    for (int c : head.children(n, "compound")) words.push_back(nominal_form(head.at(c)));
    words.push_back(nominal_form(head.at(n)));
  };
  for (int c : head.children(v)) {
    if (c < v) continue;
    const Token &t = head.at(c);
    if (t.deprel == "dobj") {
      noun_phrase(c);
    } else if (t.deprel == "prep") {
      words.push_back(to_lower(t.text));
      if (int o = head.first_child(c, "pobj")) noun_phrase(o);
    }
  }
  return slugify(words);
}

std::vector<Condition> extract_conditions(const SentenceGraph &segment, const RuleCatalog &catalog) {
  std::vector<Condition> out;
  if (segment.size() == 0) return out;
  int group = -1;
  bool first = true;
  for (const auto &clause : simplify(segment)) {
    int root = clause.root();
    bool disjunct = false;
    for (int c : clause.children(root, "cc")) disjunct = disjunct || to_lower(clause.at(c).text) == "or";
    if (first || !disjunct) ++group;
    first = false;
    auto found = extract(clause, StateKind::kBinary, catalog);
    for (auto &e : found) out.push_back({e.triple, e.polarity, group});
    if (!found.empty()) continue;
    int v = content_verb(clause);
    if (v == 0 || clause.at(v).pos != "VERB") continue;
    // Bare verb: "he sleeps".
    std::string lemma = to_lower(clause.at(v).lemma);
    if (auto it = catalog.predicate_aliases.find(lemma); it != catalog.predicate_aliases.end()) {
      lemma = it->second;
    }
    std::vector<std::string> pred = {lemma};
    if (int prt = clause.first_child(v, "prt")) pred.push_back(to_lower(clause.at(prt).text));
    StateTriple t{clause_subject(clause), slugify(pred), Slug()};
    bool negated = clause.first_child(v, "neg") != 0;
    out.push_back({t, !negated, group});
  }
  return out;
}

double detect_probability(const std::vector<std::string> &words, const ProbabilityMap &map) {
  for (const auto &[keyword, p] : map) {
    auto phrase = split_words(keyword);
    for (size_t i = 0; i < words.size(); ++i) {
      if (phrase_at(words, i, phrase)) return p;
    }
  }
  return 1.0;
}

double detect_probability(std::string_view segment_text, const ProbabilityMap &map) {
  return detect_probability(tokenize(segment_text), map);
}

std::variant<Literal, NewStateProposal> unify_condition(const Condition &condition,
                                                        const DomainBundle &bundle,
                                                        const Matcher &matcher) {
  std::vector<StateDecl> candidates;
  for (const auto *d : bundle.states_of(condition.triple.subject)) candidates.push_back(*d);
  std::optional<StateMatch> m;
  if (matcher.table) {
    m = match_state(condition.triple, candidates, *matcher.table, matcher.threshold, matcher.filters);
  } else {
    EmbeddingTable empty(1);
    m = match_state(condition.triple, candidates, empty, matcher.threshold, matcher.filters);
  }
  if (!m) return NewStateProposal{condition.triple, condition.polarity};
  return Literal{m->state, condition.polarity, m->value};
}

UnifiedConditions unify_conditions(const std::vector<Condition> &conditions, DomainBundle &bundle,
                                   const Matcher &matcher, const UnifyOptions &options) {
  UnifiedConditions out;
  std::map<int, size_t> clause_of_group;
  for (const auto &c : conditions) {
    auto r = unify_condition(c, bundle, matcher);
    Literal lit;
    if (auto *l = std::get_if<Literal>(&r)) {
      lit = *l;
    } else {
      const auto &p = std::get<NewStateProposal>(r);
      if (options.strict) {
        throw Error("unmatched-condition",
                    "no known state matches '" + p.triple.phrase() + "'; declare it as a state first");
      }
      std::string id = state_id(p.triple, StateKind::kBinary);
      bool existed = bundle.find_state(id) != nullptr;
      id = intern_state(bundle, p.triple, StateKind::kBinary);
      if (!existed) {
        out.new_states.push_back(id);
        out.diagnostics.push_back({"new-state", id, "created state '" + id + "' for an unmatched condition"});
      }
      lit = Literal{id, p.polarity, std::nullopt};
    }
    auto it = clause_of_group.find(c.group);
    if (it == clause_of_group.end()) {
      clause_of_group[c.group] = out.cnf.clauses.size();
      out.cnf.clauses.push_back({lit});
    } else {
      auto &clause = out.cnf.clauses[it->second];
      if (std::find(clause.begin(), clause.end(), lit) == clause.end()) clause.push_back(lit);
    }
  }
  // Drop repeated singleton clauses.
  std::vector<Clause> unique;
  for (auto &c : out.cnf.clauses) {
    if (std::find(unique.begin(), unique.end(), c) == unique.end()) unique.push_back(std::move(c));
  }
  out.cnf.clauses = std::move(unique);
  return out;
}

AffordanceResult build_affordance(const AffordanceSplit &split, DomainBundle &bundle,
                                  const Matcher &matcher, const AffordanceOptions &options) {
  if (!options.rules) throw Error("bad-config", "affordance extraction needs a rule catalog");
  AffordanceResult out;
  Affordance &a = out.affordance;
  a.name = derive_affordance_name(split.head);
  a.owner = clause_subject(split.head);
  if (bundle.find_affordance(a.owner, a.name)) {
    throw Error("duplicate-affordance",
                "'" + a.owner.str() + "' already offers '" + a.name.str() + "'");
  }
  bundle.declare_object(a.owner, slugify("object"));
  auto absorb = [&](UnifiedConditions &u) {
    out.new_states.insert(out.new_states.end(), u.new_states.begin(), u.new_states.end());
    out.diagnostics.insert(out.diagnostics.end(), u.diagnostics.begin(), u.diagnostics.end());
  };
  if (split.pre) {
    auto u = unify_conditions(extract_conditions(*split.pre, *options.rules), bundle, matcher, options.unify);
    a.preconditions = u.cnf;
    absorb(u);
  }
  if (split.post) {
    auto conditions = extract_conditions(*split.post, *options.rules);
    for (auto &c : conditions) c.group = 0;
    double p = detect_probability(words_of(*split.post), options.probabilities);
    auto u = unify_conditions(conditions, bundle, matcher, options.unify);
    for (const auto &clause : u.cnf.clauses) {
      for (const auto &lit : clause) a.postconditions.push_back({lit, p});
    }
    absorb(u);
  }
  bundle.affordances.push_back(a);
  return out;
}

}  // namespace nlplan
