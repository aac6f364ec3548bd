#include "nlplan/graph.h"

#include <algorithm>
#include <cctype>
#include <functional>

#include "nlplan/error.h"

namespace nlplan {

int SentenceGraph::root() const {
  for (const auto &t : tokens) {
    if (t.head == 0) return t.index;
  }
  return 0;
}

std::vector<int> SentenceGraph::children(int index) const {
  std::vector<int> out;
  for (const auto &t : tokens) {
    if (t.head == index && t.index != index) out.push_back(t.index);
  }
  return out;
}

std::vector<int> SentenceGraph::children(int index, std::string_view deprel) const {
  std::vector<int> out;
  for (const auto &t : tokens) {
    if (t.head == index && t.index != index && t.deprel == deprel) out.push_back(t.index);
  }
  return out;
}

int SentenceGraph::first_child(int index, std::string_view deprel) const {
  for (const auto &t : tokens) {
    if (t.head == index && t.index != index && t.deprel == deprel) return t.index;
  }
  return 0;
}

std::vector<int> SentenceGraph::subtree(int index) const {
  std::vector<bool> in(tokens.size() + 1, false);
  std::function<void(int)> visit = [&](int i) {
    if (in[i]) return;
    in[i] = true;
    for (int c : children(i)) visit(c);
  };
  visit(index);
  std::vector<int> out;
  for (int i = 1; i <= size(); ++i) {
    if (in[i]) out.push_back(i);
  }
  return out;
}

std::string nominal_form(const Token &token) {
  std::string out = token.pos == "PROPN" || token.lemma.empty() ? token.text : token.lemma;
  if (out.size() > 2 && out.ends_with("'s")) out.resize(out.size() - 2);
  if (token.pos != "PROPN") {
    for (auto &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string join_tokens(const std::vector<std::string> &words) {
  std::string out;
  for (const auto &w : words) {
    bool attach = w == "," || w == "." || w == "!" || w == "?" || w == ";" ||
                  w == ":" || w == "'s" || w == "'" || w == "n't";
    if (!out.empty() && !attach) out.push_back(' ');
    out += w;
  }
  return out;
}

std::string SentenceGraph::text() const {
  std::vector<std::string> words;
  for (const auto &t : tokens) words.push_back(t.text);
  return join_tokens(words);
}

void check_tree(const SentenceGraph &graph) {
  int roots = 0;
  for (int i = 1; i <= graph.size(); ++i) {
    const Token &t = graph.at(i);
    if (t.index != i) {
      throw Error("bad-graph", "token " + std::to_string(i) + " carries index " +
                                   std::to_string(t.index));
    }
    if (t.head < 0 || t.head > graph.size()) {
      throw Error("bad-graph", "token " + std::to_string(i) + " has head out of range");
    }
    if (t.head == i) {
      throw Error("bad-graph", "token " + std::to_string(i) + " is its own head (cycle)");
    }
    if (t.deprel.empty()) {
      throw Error("bad-graph", "token " + std::to_string(i) + " has no dependency label");
    }
    if (t.head == 0) ++roots;
  }
  if (graph.size() > 0 && roots != 1) {
    throw Error("bad-graph", "expected exactly one root, found " + std::to_string(roots));
  }
  for (int i = 1; i <= graph.size(); ++i) {
    int steps = 0;
    for (int cur = i; cur != 0; cur = graph.at(cur).head) {
      if (++steps > graph.size()) {
        throw Error("bad-graph", "head links through token " + std::to_string(i) +
                                     " form a cycle");
      }
    }
  }
}

SentenceGraph subgraph(const SentenceGraph &graph, int first, int last) {
  SentenceGraph out;
  out.provenance = graph.provenance;
  first = std::max(first, 1);
  last = std::min(last, graph.size());
  if (first > last) return out;

  auto inside = [&](int i) { return i >= first && i <= last; };
  // The token whose head chain leaves the span first becomes the new root;
  // prefer verbs so clause fragments keep their predicate as root.
  int new_root = 0;
  for (int i = first; i <= last; ++i) {
    const Token &t = graph.at(i);
    if (inside(t.head)) continue;
    if (new_root == 0) new_root = i;
    if ((t.pos == "VERB" || t.pos == "AUX") && graph.at(new_root).pos != "VERB") {
      new_root = i;
    }
  }
  for (int i = first; i <= last; ++i) {
    Token t = graph.at(i);
    t.index = i - first + 1;
    if (i == new_root) {
      t.head = 0;
      t.deprel = "ROOT";
    } else if (inside(t.head)) {
      t.head = t.head - first + 1;
    } else {
      t.head = new_root - first + 1;
      if (t.deprel == "ROOT") t.deprel = "dep";
    }
    out.tokens.push_back(std::move(t));
  }
  out.source = out.text();
  return out;
}

}  // namespace nlplan
