#include "nlplan/ingestion.h"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace nlplan {
namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

enum class Animacy { kAnimate, kInanimate, kAny };

struct PronounInfo {
  Animacy animacy;
  bool possessive;
};

std::optional<PronounInfo> pronoun(std::string_view word) {
  static const std::set<std::string, std::less<>> animate = {"he", "she", "him"};
  static const std::set<std::string, std::less<>> animate_poss = {"his", "her"};
  std::string w = lower(word);
  if (animate.count(w)) return PronounInfo{Animacy::kAnimate, false};
  if (animate_poss.count(w)) return PronounInfo{Animacy::kAnimate, true};
  if (w == "it") return PronounInfo{Animacy::kInanimate, false};
  if (w == "its") return PronounInfo{Animacy::kInanimate, true};
  if (w == "they" || w == "them") return PronounInfo{Animacy::kAny, false};
  if (w == "their") return PronounInfo{Animacy::kAny, true};
  return std::nullopt;
}

struct Mention {
  const Entity *entity;
  std::string surface;  // as written, e.g. "Max"
};

const Entity *entity_for(const Token &t, const std::vector<Entity> &entities) {
  if (t.pos == "PRON" || t.pos == "PUNCT") return nullptr;
  std::string w = lower(t.text);
  if (w.size() > 2 && w.ends_with("'s")) w.resize(w.size() - 2);
  for (const auto &e : entities) {
    if (e.name.str() == w) return &e;
  }
  return nullptr;
}

bool compatible(Animacy a, const Entity &e) {
  return a == Animacy::kAny || (a == Animacy::kAnimate) == e.animate;
}

}  // namespace

CorefResult resolve_coreferences(const std::vector<SentenceGraph> &sentences,
                                 const std::vector<Entity> &entities) {
  CorefResult out;
  std::vector<Mention> mentions;  // most recent last
  for (const auto &g : sentences) {
    SentenceGraph r = g;
    bool changed = false;
    for (auto &t : r.tokens) {
      if (const Entity *e = entity_for(t, entities)) {
        std::string surface = t.text;
        if (surface.ends_with("'s")) surface.resize(surface.size() - 2);
        mentions.push_back({e, surface});
        continue;
      }
      auto info = pronoun(t.text);
      if (!info) continue;
      // "her" is ambiguous between object and possessive; the parse decides.
      bool possessive = info->possessive && (lower(t.text) != "her" || t.deprel == "poss");
      const Mention *found = nullptr;
      for (auto it = mentions.rbegin(); it != mentions.rend(); ++it) {
        if (compatible(info->animacy, *it->entity)) {
          found = &*it;
          break;
        }
      }
      if (!found) {
        out.diagnostics.push_back(
            {"unresolved-pronoun", t.text,
             "no preceding mention for '" + t.text + "' in: " + g.source});
        continue;
      }
      t.text = possessive ? found->surface + "'s" : found->surface;
      t.lemma = t.text;
      t.pos = "PROPN";
      changed = true;
    }
    if (changed) r.source = r.text();
    out.graphs.push_back(std::move(r));
  }
  return out;
}

std::vector<SentenceGraph> simplify(const SentenceGraph &graph) {
  const int root = graph.root();
  if (root == 0) return {graph};
  auto verbal = [&](int i) {
    const auto &pos = graph.at(i).pos;
    return pos == "VERB" || pos == "AUX";
  };
  // Clause heads: the root plus verbs hanging off a clause head by conj/advcl.
  std::vector<int> heads = {root};
  std::vector<int> parent = {0};
  for (size_t k = 0; k < heads.size(); ++k) {
    for (int c : graph.children(heads[k])) {
      const auto &rel = graph.at(c).deprel;
      if ((rel == "conj" || rel == "advcl") && verbal(c) && verbal(heads[k])) {
        heads.push_back(c);
        parent.push_back(heads[k]);
      }
    }
  }
  if (heads.size() == 1) return {graph};

  std::set<int> head_set(heads.begin(), heads.end());
  // Owner clause of each token: walk up until a clause head is reached.
  std::vector<int> owner(graph.size() + 1, 0);
  for (int i = 1; i <= graph.size(); ++i) {
    int cur = i;
    while (!head_set.count(cur)) cur = graph.at(cur).head;
    owner[i] = cur;
  }

  std::vector<std::pair<int, SentenceGraph>> clauses;
  for (size_t k = 0; k < heads.size(); ++k) {
    const int h = heads[k];
    std::vector<int> members;
    for (int i = 1; i <= graph.size(); ++i) {
      if (owner[i] == h) members.push_back(i);
    }
    // Subject-less clause: borrow the nearest governing clause's subject.
    std::vector<int> borrowed;
    if (graph.first_child(h, "nsubj") == 0) {
      for (size_t j = k; j > 0 && borrowed.empty();) {
        int p = parent[j];
        if (int s = graph.first_child(p, "nsubj")) borrowed = graph.subtree(s);
        auto it = std::find(heads.begin(), heads.end(), p);
        j = static_cast<size_t>(it - heads.begin());
      }
    }
    // Copied subject goes before the first token that is not a clause
    // connector.
    size_t insert_at = 0;
    while (insert_at < members.size()) {
      const Token &t = graph.at(members[insert_at]);
      bool connector = t.head == h && (t.deprel == "cc" || t.deprel == "mark" ||
                                       t.deprel == "punct" || t.deprel == "advmod");
      bool fixed = t.deprel == "fixed";
      if (!connector && !fixed) break;
      ++insert_at;
    }
    std::vector<std::pair<int, bool>> order;  // (original index, copied)
    for (size_t m = 0; m < members.size(); ++m) {
      if (m == insert_at) {
        for (int b : borrowed) order.push_back({b, true});
      }
      order.push_back({members[m], false});
    }
    if (insert_at >= members.size()) {
      for (int b : borrowed) order.push_back({b, true});
    }
    std::map<int, int> remap;  // original -> new, for the non-copied tokens
    std::map<int, int> remap_copy;
    for (size_t n = 0; n < order.size(); ++n) {
      (order[n].second ? remap_copy : remap)[order[n].first] = static_cast<int>(n) + 1;
    }
    SentenceGraph out;
    out.provenance = graph.provenance;
    int subj_root = borrowed.empty() ? 0 : graph.first_child(parent[k], "nsubj");
    if (!borrowed.empty() && subj_root == 0) {
      // subject came from further up; its own head is outside the span
      for (int b : borrowed) {
        if (std::find(borrowed.begin(), borrowed.end(), graph.at(b).head) == borrowed.end()) {
          subj_root = b;
        }
      }
    }
    for (size_t n = 0; n < order.size(); ++n) {
      auto [orig, copied] = order[n];
      Token t = graph.at(orig);
      t.index = static_cast<int>(n) + 1;
      t.copied = t.copied || copied;
      if (copied) {
        if (orig == subj_root || !remap_copy.count(t.head)) {
          t.head = remap.at(h);
          t.deprel = "nsubj";
        } else {
          t.head = remap_copy.at(t.head);
        }
      } else if (orig == h) {
        t.head = 0;
        t.deprel = "ROOT";
      } else {
        t.head = remap.at(t.head);
      }
      out.tokens.push_back(std::move(t));
    }
    out.source = out.text();
    clauses.push_back({h, std::move(out)});
  }
  std::sort(clauses.begin(), clauses.end(),
            [](const auto &a, const auto &b) { return a.first < b.first; });
  std::vector<SentenceGraph> result;
  for (auto &c : clauses) result.push_back(std::move(c.second));
  return result;
}

std::vector<std::string> default_fluent_keywords() {
  return {"including", "such as", "consist of", "consists of"};
}

StateKind classify_state_kind(const SentenceGraph &graph,
                              const std::vector<std::string> &keywords) {
  for (const auto &kw : keywords) {
    std::istringstream in(lower(kw));
    std::vector<std::string> words;
    for (std::string w; in >> w;) words.push_back(w);
    if (words.empty()) continue;
    for (int i = 1; i + static_cast<int>(words.size()) - 1 <= graph.size(); ++i) {
      bool ok = true;
      for (size_t k = 0; k < words.size() && ok; ++k) {
        const Token &t = graph.at(i + static_cast<int>(k));
        ok = lower(t.text) == words[k] || lower(t.lemma) == words[k];
      }
      if (ok) return StateKind::kFluent;
    }
  }
  return StateKind::kBinary;
}

}  // namespace nlplan
