#ifndef NLPLAN_GRAPH_H_
#define NLPLAN_GRAPH_H_

#include <string>
#include <string_view>
#include <vector>

namespace nlplan {

// One word of a dependency-parsed sentence. Indices are 1-based; head 0 is
// the root. Labels follow the ClearNLP/spaCy English set (nsubj, dobj, prep,
// pobj, pcomp, acomp, xcomp, conj, cc, ...).
struct Token {
  int index = 0;
  std::string text;
  std::string lemma;
  std::string pos;  // UPOS
  int head = 0;
  std::string deprel;
  bool copied = false;  // subject copied in by sentence simplification

  bool operator==(const Token &) const = default;
};

struct SentenceGraph {
  std::vector<Token> tokens;
  std::string source;
  int provenance = 0;  // sentence number within the submission

  const Token &at(int index) const { return tokens.at(index - 1); }
  Token &at(int index) { return tokens.at(index - 1); }
  int size() const { return static_cast<int>(tokens.size()); }

  int root() const;  // index of the head-0 token, 0 if none
  std::vector<int> children(int index) const;
  std::vector<int> children(int index, std::string_view deprel) const;
  int first_child(int index, std::string_view deprel) const;  // 0 if none
  // Token indices of the subtree rooted at `index`, in sentence order.
  std::vector<int> subtree(int index) const;

  // Tokens joined with single spaces, punctuation and clitics attached.
  std::string text() const;

  bool operator==(const SentenceGraph &) const = default;
};

// Throws Error("bad-graph") unless there is exactly one root, every head is
// in range and the head links are acyclic.
void check_tree(const SentenceGraph &graph);

// Keeps tokens [first, last] (1-based, inclusive) and re-indexes them. Tokens
// whose head falls outside the range are re-attached to the span's root: the
// first such verb, or the first such token.
SentenceGraph subgraph(const SentenceGraph &graph, int first, int last);

// Word a nominal token contributes to identifiers: proper names as written
// (possessive clitic stripped), everything else by lowercase lemma.
std::string nominal_form(const Token &token);

// Renders a token sequence as text (no space before punctuation / 's).
std::string join_tokens(const std::vector<std::string> &words);

}  // namespace nlplan

#endif  // NLPLAN_GRAPH_H_
