#include "nlplan/builtin_parser.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <set>
#include <sstream>

#include "nlplan/domain.h"
#include "nlplan/error.h"

namespace nlplan {
namespace {

using WordSet = std::set<std::string, std::less<>>;

const WordSet kDeterminers = {"a",    "an",   "the",     "some",  "any",   "every",
                              "each", "this", "that",    "these", "those", "no",
                              "all",  "both", "another", "many",  "few",   "several"};
const WordSet kPossessives = {"my", "your", "his", "her", "its", "our", "their"};
const WordSet kPronouns = {"he",       "she",       "it",        "they",     "him",
                           "them",     "i",         "you",       "we",       "me",
                           "us",       "himself",   "herself",   "itself",   "themselves",
                           "someone",  "something", "everyone",  "everything",
                           "anyone",   "anything",  "nobody",    "nothing"};
const WordSet kPrepositions = {
    "about",  "above",   "across",  "after",     "against", "along",  "among",
    "around", "as",      "at",      "before",    "behind",  "below",  "beside",
    "between", "beyond", "by",      "despite",   "during",  "except", "for",
    "from",   "in",      "including", "inside",  "into",    "near",   "of",
    "on",     "onto",    "outside", "over",      "per",     "since",  "than",
    "through", "throughout", "toward", "towards", "under",  "until",  "upon",
    "with",   "within",  "without"};
const WordSet kModals = {"can", "could", "will", "would", "shall", "should", "may", "might", "must"};
const WordSet kNegations = {"not", "never", "n't"};
const WordSet kCoordinators = {"and", "or", "but"};
const WordSet kRelatives = {"which", "who"};
const WordSet kParticles = {"out", "up", "down", "off", "away", "back"};
const WordSet kNotAdverbs = {"family", "reply", "supply", "apply", "belly", "jelly", "bully",
                             "rally",  "lily",  "july",   "italy", "assembly", "anomaly",
                             "monopoly", "melancholy", "butterfly", "dragonfly", "fly"};
const WordSet kCoordinatingConnectors = {"and", "or", "but", ",", "and then", "then", ", and"};

enum class Cls {
  kPunct,
  kDet,
  kPoss,
  kPron,
  kPrep,
  kModal,
  kNeg,
  kCconj,
  kAdv,
  kNum,
  kClitic,
  kTo,
  kRel,
  kParticle,
  kOpen
};

bool is_punct_text(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::ispunct(c) && c != '\'';
  });
}

bool is_number_text(std::string_view s) {
  bool digit = false;
  for (char c : s) {
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digit = true;
    } else if (c != '.' && c != ',') {
      return false;
    }
  }
  return digit;
}

std::string lowercase(std::string_view s) {
  std::string out(s);
  for (auto &c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

size_t edit_distance(const std::string &a, const std::string &b) {
  std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

struct Work {
  std::string text;
  std::string lower;
  Cls cls = Cls::kOpen;
  std::string pos;
  std::string lemma;
  std::string deprel;
  int head = -2;  // -2 unassigned, -1 sentence root, otherwise 0-based index
};

struct ClauseSpan {
  int begin = 0;
  int end = 0;
  int connector_begin = -1;
  int connector_end = -1;
  std::string connector;
  int root = -1;
};

enum class NpContext { kSubject, kObject, kPrepObject, kConjunct };

class Parse {
 public:
  Parse(const Lexicon &lex, const ParserOptions &opts, std::vector<std::string> words)
      : lex_(lex), opts_(opts) {
    for (auto &w : words) {
      Work t;
      t.lower = lowercase(w);
      t.text = std::move(w);
      toks_.push_back(std::move(t));
    }
    for (size_t i = 0; i < toks_.size(); ++i) toks_[i].cls = classify(static_cast<int>(i));
  }

  SentenceGraph run(const std::string &source, int provenance) {
    auto clauses = segment();
    for (auto &c : clauses) c.root = parse_clause(c);
    link(clauses);
    SentenceGraph g;
    g.source = source;
    g.provenance = provenance;
    for (int i = 0; i < n(); ++i) {
      Work &w = toks_[i];
      Token t;
      t.index = i + 1;
      t.text = w.text;
      t.pos = w.pos.empty() ? "X" : w.pos;
      t.lemma = w.lemma.empty() ? default_lemma(i) : w.lemma;
      t.head = w.head + 1;
      t.deprel = w.head == -1 ? "ROOT" : (w.deprel.empty() ? "dep" : w.deprel);
      g.tokens.push_back(std::move(t));
    }
    check_tree(g);
    return g;
  }

 private:
  int n() const { return static_cast<int>(toks_.size()); }
  const std::string &lw(int i) const { return toks_[i].lower; }
  Cls cls(int i) const { return toks_[i].cls; }
  bool is(int i, Cls c, int e) const { return i >= 0 && i < e && toks_[i].cls == c; }

  Cls classify(int i) const {
    const std::string &w = toks_[i].lower;
    if (w == "'s") return Cls::kClitic;
    if (is_number_text(w)) return Cls::kNum;
    if (is_punct_text(w)) return Cls::kPunct;
    if (w == "to") return Cls::kTo;
    if (w == "such" && i + 1 < n() && toks_[i + 1].lower == "as") return Cls::kPrep;
    if (kDeterminers.count(w)) return Cls::kDet;
    if (kPossessives.count(w)) {
      // "her" without a following nominal is an object pronoun.
      if (w == "her" && (i + 1 >= n() || is_punct_text(toks_[i + 1].lower))) return Cls::kPron;
      return Cls::kPoss;
    }
    if (kPronouns.count(w)) return Cls::kPron;
    if (kPrepositions.count(w)) return Cls::kPrep;
    if (kModals.count(w)) return Cls::kModal;
    if (kNegations.count(w)) return Cls::kNeg;
    if (kCoordinators.count(w)) return Cls::kCconj;
    if (kRelatives.count(w)) return Cls::kRel;
    if (kParticles.count(w)) return Cls::kParticle;
    if (!kNotAdverbs.count(w) && lex_.is_adverb(w) && !lex_.verb_lemma(w)) return Cls::kAdv;
    return Cls::kOpen;
  }

  bool capitalized(int i) const {
    return !toks_[i].text.empty() && std::isupper(static_cast<unsigned char>(toks_[i].text[0]));
  }

  std::optional<std::string> known_verb(int i) const {
    if (cls(i) != Cls::kOpen) return std::nullopt;
    return lex_.verb_lemma(lw(i));
  }
  bool gerund(int i, int e) const {
    return i < e && cls(i) == Cls::kOpen && lw(i).size() > 4 && ends_with(lw(i), "ing");
  }
  bool participle(int i) const {
    if (cls(i) != Cls::kOpen) return false;
    auto v = known_verb(i);
    if (!v || *v == lw(i)) return false;
    return ends_with(lw(i), "ed") || ends_with(lw(i), "en") || ends_with(lw(i), "t");
  }
  // Known verb form usable as a finite predicate.
  bool finite_verb(int i, int e) const {
    if (i >= e || cls(i) != Cls::kOpen || ends_with(lw(i), "ing")) return false;
    return known_verb(i).has_value();
  }
  bool adjective(int i, int e) const {
    return i < e && cls(i) == Cls::kOpen && lex_.is_adjective(lw(i)) &&
           !(known_verb(i) && !lex_.is_adjective(lw(i)));
  }
  bool np_start(int i, int e) const {
    if (i >= e) return false;
    switch (cls(i)) {
      case Cls::kDet:
      case Cls::kPoss:
      case Cls::kPron:
      case Cls::kNum:
      case Cls::kOpen:
        return true;
      default:
        return false;
    }
  }
  // Gerund heading its own verb phrase ("riding a horse").
  bool gerund_phrase(int i, int e) const {
    if (!gerund(i, e)) return false;
    int j = i + 1;
    if (j >= e) return false;
    Cls c = cls(j);
    if (c == Cls::kDet || c == Cls::kPoss || c == Cls::kPron || c == Cls::kNum) return true;
    return c == Cls::kOpen;
  }

  std::string default_lemma(int i) const {
    const Work &w = toks_[i];
    if (w.pos == "NOUN") return singularize(w.lower);
    if (w.pos == "PROPN") return w.text;
    return w.lower;
  }

  void attach(int dep, int head, const std::string &rel) {
    toks_[dep].head = head;
    toks_[dep].deprel = rel;
  }
  void tag(int i, const std::string &pos, std::string lemma = {}) {
    toks_[i].pos = pos;
    if (!lemma.empty()) toks_[i].lemma = std::move(lemma);
  }
  void tag_verb(int i) {
    auto v = known_verb(i);
    tag(i, "VERB", v ? *v : Lexicon::guess_verb_lemma(lw(i)));
  }

  // ---- clause segmentation ------------------------------------------------

  int match_connector(int i, std::string *phrase) const {
    int best = 0;
    for (const auto &c : opts_.connectors) {
      std::istringstream in(c);
      std::vector<std::string> parts;
      for (std::string w; in >> w;) parts.push_back(lowercase(w));
      int len = static_cast<int>(parts.size());
      if (len == 0 || len <= best || i + len > n()) continue;
      bool ok = true;
      for (int k = 0; k < len && ok; ++k) ok = lw(i + k) == parts[k];
      if (ok) {
        best = len;
        *phrase = lowercase(c);
      }
    }
    return best;
  }

  // Does a clause (optional subject, auxiliaries, finite verb) start at j?
  bool clause_start(int j) const {
    const int e = n();
    if (j >= e) return false;
    if (finite_verb(j, e)) {
      // Subject-less conjunct: needs something after its verb.
      return j + 1 < e && cls(j + 1) != Cls::kPunct && cls(j + 1) != Cls::kCconj;
    }
    int k = j;
    if (cls(k) == Cls::kPron) {
      ++k;
    } else {
      if (k < e && (cls(k) == Cls::kDet || cls(k) == Cls::kPoss)) ++k;
      int start = k;
      while (k < e && (cls(k) == Cls::kClitic || (cls(k) == Cls::kOpen && !finite_verb(k, e)))) ++k;
      if (k == start) return false;
    }
    bool aux = false;
    while (k < e && (cls(k) == Cls::kModal || cls(k) == Cls::kNeg || cls(k) == Cls::kAdv)) {
      aux = aux || cls(k) == Cls::kModal;
      ++k;
    }
    if (k >= e || cls(k) != Cls::kOpen) return false;
    return finite_verb(k, e) || (aux && known_verb(k));
  }

  std::vector<ClauseSpan> segment() const {
    std::vector<ClauseSpan> out;
    ClauseSpan cur;
    cur.begin = 0;
    for (int i = 0; i < n();) {
      std::string phrase;
      int len = match_connector(i, &phrase);
      bool split = false;
      if (len > 0) {
        // Single-word connectors that double as other parts of speech only
        // split when a clause follows.
        bool ambiguous = len == 1 || kCoordinatingConnectors.count(phrase);
        split = !ambiguous || clause_start(i + len);
      } else if ((lw(i) == "," || cls(i) == Cls::kCconj) && i > cur.begin) {
        int j = i + 1;
        std::string p = lw(i);
        if (lw(i) == "," && j < n() && cls(j) == Cls::kCconj) {
          p = ", " + lw(j);
          ++j;
        }
        if (clause_start(j)) {
          split = true;
          len = j - i;
          phrase = p;
        }
      }
      if (!split) {
        ++i;
        continue;
      }
      if (i > cur.begin || cur.connector_begin >= 0) {
        cur.end = i;
        if (cur.end > cur.begin) out.push_back(cur);
      }
      cur = ClauseSpan();
      cur.connector_begin = i;
      cur.connector_end = i + len;
      cur.connector = phrase;
      cur.begin = i + len;
      i += len;
    }
    cur.end = n();
    if (cur.end > cur.begin) out.push_back(cur);
    return out;
  }

  void link(std::vector<ClauseSpan> &clauses) {
    if (clauses.empty()) throw_unparseable("no words");
    size_t main = 0;
    bool leading_sub = clauses[0].connector_begin >= 0 &&
                       !kCoordinatingConnectors.count(clauses[0].connector);
    if (leading_sub && clauses.size() > 1) main = 1;
    int root = clauses[main].root;
    toks_[root].head = -1;
    toks_[root].deprel = "ROOT";
    for (size_t k = 0; k < clauses.size(); ++k) {
      auto &c = clauses[k];
      if (k != main) {
        bool coord = kCoordinatingConnectors.count(c.connector) > 0;
        attach(c.root, root, coord ? "conj" : "advcl");
      }
      if (c.connector_begin < 0) continue;
      bool coord = kCoordinatingConnectors.count(c.connector) > 0;
      if (k == main) {
        // "If he is hungry, Max eats": the comma before the main clause.
        for (int i = c.connector_begin; i < c.connector_end; ++i) {
          attach(i, root, "punct");
          tag(i, "PUNCT");
        }
        continue;
      }
      int first = c.connector_begin;
      for (int i = first; i < c.connector_end; ++i) {
        if (cls(i) == Cls::kPunct) {
          attach(i, c.root, "punct");
          tag(i, "PUNCT");
        } else if (i == first || (coord && cls(i) == Cls::kCconj)) {
          attach(i, c.root, coord ? "cc" : "mark");
          tag(i, coord ? "CCONJ" : "SCONJ");
        } else if (coord) {
          attach(i, c.root, "advmod");
          tag(i, "ADV");
        } else {
          attach(i, first, "fixed");
          tag(i, cls(i) == Cls::kPrep ? "ADP" : "SCONJ");
        }
      }
    }
  }

  // ---- clauses --------------------------------------------------------------

  [[noreturn]] void throw_unparseable(const std::string &why) const {
    std::string shape = shape_of(0, n());
    const GrammarTemplate *best = nullptr;
    size_t best_d = 0;
    for (const auto &t : opts_.templates) {
      auto words = tokenize(t.example);
      Parse probe(lex_, opts_, words);
      size_t d = edit_distance(shape, probe.shape_of(0, probe.n()));
      if (!best || d < best_d) {
        best = &t;
        best_d = d;
      }
    }
    std::string msg = "cannot parse '" + join_text() + "': " + why;
    if (best) msg += "; nearest template: " + best->name + " (e.g. \"" + best->example + "\")";
    throw Error("unparseable", msg);
  }

  std::string join_text() const {
    std::vector<std::string> words;
    for (const auto &t : toks_) words.push_back(t.text);
    return join_tokens(words);
  }

  // Coarse word-class string used to rank grammar templates.
  std::string shape_of(int b, int e) const {
    std::string s;
    for (int i = b; i < e; ++i) {
      switch (cls(i)) {
        case Cls::kPunct:
          break;
        case Cls::kDet:
        case Cls::kPoss:
          s.push_back('D');
          break;
        case Cls::kPron:
        case Cls::kNum:
          s.push_back('N');
          break;
        case Cls::kPrep:
        case Cls::kTo:
          s.push_back('P');
          break;
        case Cls::kModal:
          s.push_back('M');
          break;
        case Cls::kNeg:
        case Cls::kAdv:
        case Cls::kParticle:
          s.push_back('R');
          break;
        case Cls::kCconj:
        case Cls::kRel:
        case Cls::kClitic:
          s.push_back('C');
          break;
        case Cls::kOpen:
          s.push_back(known_verb(i) ? 'V' : lex_.is_adjective(lw(i)) ? 'J' : 'N');
          break;
      }
    }
    return s;
  }

  bool aux_before_verb(int i, int e) const {
    auto lemma = known_verb(i);
    if (!lemma) return false;
    int j = i + 1;
    while (j < e && (cls(j) == Cls::kNeg || cls(j) == Cls::kAdv)) ++j;
    if (j >= e || cls(j) != Cls::kOpen) return false;
    if (*lemma == "be") return gerund(j, e) && known_verb(j);
    if (*lemma == "do") return finite_verb(j, e) && lw(j) == *known_verb(j);
    if (*lemma == "have") return participle(j);
    return false;
  }

  bool verb_slot(int i, int e) const {
    if (i >= e || cls(i) != Cls::kOpen) return false;
    if (known_verb(i)) return true;
    return !lex_.is_adjective(lw(i)) && !capitalized(i);
  }

  void reset(int b, int e) {
    for (int i = b; i < e; ++i) {
      Work &w = toks_[i];
      w.pos.clear();
      w.lemma.clear();
      w.deprel.clear();
      w.head = -2;
    }
  }

  int parse_clause(const ClauseSpan &c) {
    const int b = c.begin;
    const int e = c.end;
    // First attempt: the subject NP runs as far as it can. On failure, cut
    // the subject before a word that can be read as a verb.
    std::optional<int> root = try_clause(b, e, e);
    if (root) return *root;
    for (int cut = e - 1; cut > b; --cut) {
      if (cls(cut) != Cls::kOpen) continue;
      const std::string &w = lw(cut);
      if (!(ends_with(w, "s") || ends_with(w, "ed"))) continue;
      reset(b, e);
      root = try_clause(b, e, cut);
      if (root) return *root;
    }
    reset(b, e);
    throw_unparseable("no main verb found in '" + span_text(b, e) + "'");
  }

  std::string span_text(int b, int e) const {
    std::vector<std::string> words;
    for (int i = b; i < e; ++i) words.push_back(toks_[i].text);
    return join_tokens(words);
  }

  std::optional<int> try_clause(int b, int e, int subject_limit) {
    int p = b;
    int subj = -1;
    while (p < e && cls(p) == Cls::kPunct) ++p;
    if (!(finite_verb(p, e) && !capitalized(p)) && np_start(p, e)) {
      subj = parse_np(p, std::min(e, subject_limit), NpContext::kSubject);
    }
    std::vector<int> pre;
    while (p < e) {
      if (cls(p) == Cls::kModal || cls(p) == Cls::kNeg || cls(p) == Cls::kAdv) {
        pre.push_back(p++);
      } else if (cls(p) == Cls::kOpen && aux_before_verb(p, e)) {
        pre.push_back(p++);
      } else {
        break;
      }
    }
    if (!verb_slot(p, e)) return std::nullopt;
    int verb = p++;
    tag_verb(verb);
    if (subj >= 0) attach(subj, verb, "nsubj");
    for (int a : pre) {
      switch (cls(a)) {
        case Cls::kModal:
          tag(a, "AUX", lw(a));
          attach(a, verb, "aux");
          break;
        case Cls::kNeg:
          tag(a, "PART", "not");
          attach(a, verb, "neg");
          break;
        case Cls::kAdv:
          tag(a, "ADV", lw(a));
          attach(a, verb, "advmod");
          break;
        default: {
          auto lemma = known_verb(a);
          tag(a, "AUX", lemma ? *lemma : lw(a));
          attach(a, verb, "aux");
        }
      }
    }
    p = parse_predicate(verb, p, e);
    for (int i = b; i < e; ++i) {
      if (toks_[i].head == -2 && i != verb) {
        attach(i, verb, cls(i) == Cls::kPunct ? "punct" : "dep");
        if (toks_[i].pos.empty()) tag(i, cls(i) == Cls::kPunct ? "PUNCT" : "X");
      }
    }
    return verb;
  }

  // Complements of `verb` from p up to e; returns the next unread position.
  int parse_predicate(int verb, int p, int e) {
    const std::string verb_lemma = toks_[verb].lemma;
    if (lex_.is_catenative(verb_lemma)) {
      if (p + 1 < e && cls(p) == Cls::kTo && verb_slot(p + 1, e)) {
        int x = p + 1;
        tag(p, "PART", "to");
        attach(p, x, "aux");
        tag_verb(x);
        attach(x, verb, "xcomp");
        return parse_predicate(x, p + 2, e);
      }
      if (gerund(p, e) && known_verb(p)) {
        tag_verb(p);
        attach(p, verb, "xcomp");
        return parse_predicate(p, p + 1, e);
      }
    }
    if (p < e && cls(p) == Cls::kParticle) {
      tag(p, "ADP", lw(p));
      attach(p, verb, "prt");
      ++p;
    }
    const bool linking = lex_.is_linking(verb_lemma);
    int last_head = -1;
    bool last_adj = false;
    bool has_object = false;
    std::vector<int> pending_adverbs;
    while (p < e) {
      Cls c = cls(p);
      if (c == Cls::kPunct) {
        tag(p, "PUNCT", lw(p));
        attach(p, verb, "punct");
        ++p;
        continue;
      }
      if (c == Cls::kNeg) {
        tag(p, "PART", "not");
        attach(p, verb, "neg");
        ++p;
        continue;
      }
      if (c == Cls::kTo && p + 1 < e && verb_slot(p + 1, e) &&
          (known_verb(p + 1) || !np_start(p + 2, e))) {
        int x = p + 1;
        tag(p, "PART", "to");
        attach(p, x, "aux");
        tag_verb(x);
        attach(x, verb, "xcomp");
        p = parse_predicate(x, p + 2, e);
        continue;
      }
      if (c == Cls::kPrep || c == Cls::kTo) {
        int head = choose_attachment(p, verb, last_head, last_adj);
        int object = -1;
        p = parse_pp(p, e, head, &object);
        if (object >= 0) {
          last_head = object;
          last_adj = false;
        }
        continue;
      }
      if (c == Cls::kAdv || c == Cls::kParticle) {
        // Adverbs directly before a complement adjective modify it.
        int j = p;
        while (j < e && cls(j) == Cls::kAdv) ++j;
        if (linking && !has_object && j < e && adjective_like(j, e)) {
          for (int k = p; k < j; ++k) pending_adverbs.push_back(k);
          p = j;
          continue;
        }
        tag(p, "ADV", lw(p));
        attach(p, verb, "advmod");
        // "very much"
        if (p + 1 < e && lw(p) == "very" && lw(p + 1) == "much") {
          tag(p + 1, "ADV", "much");
          attach(p + 1, verb, "advmod");
          attach(p, p + 1, "advmod");
          ++p;
        }
        ++p;
        continue;
      }
      if (linking && !has_object && adjective_like(p, e)) {
        tag(p, "ADJ", lw(p));
        attach(p, verb, "acomp");
        for (int a : pending_adverbs) {
          tag(a, "ADV", lw(a));
          attach(a, p, "advmod");
        }
        pending_adverbs.clear();
        last_head = p;
        last_adj = true;
        ++p;
        continue;
      }
      if (has_object && cls(p) == Cls::kOpen && known_verb(p) && !gerund(p, e)) {
        // "sees his team lose"
        tag_verb(p);
        attach(p, verb, "xcomp");
        p = parse_predicate(p, p + 1, e);
        continue;
      }
      if (np_start(p, e)) {
        int q = p;
        int head = parse_np(q, e, NpContext::kObject);
        if (head >= 0) {
          std::string rel = verb_lemma == "be" ? "attr" : has_object ? "npadvmod" : "dobj";
          attach(head, verb, rel);
          has_object = true;
          last_head = head;
          last_adj = false;
          p = q;
          continue;
        }
      }
      tag(p, "X", lw(p));
      attach(p, verb, "dep");
      ++p;
    }
    for (int a : pending_adverbs) {
      tag(a, "ADV", lw(a));
      attach(a, verb, "advmod");
    }
    return p;
  }

  bool adjective_like(int i, int e) const {
    if (i >= e || cls(i) != Cls::kOpen) return false;
    if (lex_.is_adjective(lw(i))) return true;
    if (participle(i)) return true;
    if (known_verb(i) || capitalized(i)) return false;
    // Unknown word not followed by a nominal reads as a predicate adjective.
    return !(i + 1 < e && cls(i + 1) == Cls::kOpen);
  }

  int choose_attachment(int prep, int verb, int last_head, bool last_adj) const {
    const std::string &w = lw(prep);
    if (w == "of") return last_head >= 0 ? last_head : verb;
    if (last_adj && last_head >= 0) return last_head;
    if ((w == "such" || w == "as" || w == "including") && last_head >= 0) return last_head;
    return verb;
  }

  int parse_pp(int p, int e, int attach_to, int *object) {
    int prep = p;
    if (lw(p) == "such" && p + 1 < e && lw(p + 1) == "as") {
      prep = p + 1;
      tag(p, "ADJ", "such");
      attach(p, prep, "amod");
      ++p;
    }
    tag(prep, "ADP", lw(prep));
    attach(prep, attach_to, "prep");
    p = prep + 1;
    if (p < e && gerund_phrase(p, e)) {
      tag_verb(p);
      attach(p, prep, "pcomp");
      *object = -1;
      return parse_predicate(p, p + 1, e);
    }
    if (np_start(p, e)) {
      int q = p;
      int head = parse_np(q, e, NpContext::kPrepObject);
      if (head >= 0) {
        attach(head, prep, "pobj");
        *object = head;
        return q;
      }
    }
    return p;
  }

  // Noun phrase starting at p (advanced past it); returns the head or -1.
  int parse_np(int &p, int e, NpContext ctx) {
    const int start = p;
    if (p < e && cls(p) == Cls::kPron) {
      tag(p, "PRON", lw(p));
      int head = p++;
      if (ctx != NpContext::kConjunct) coordinate(head, p, e, ctx);
      return head;
    }
    std::vector<int> dets;
    int poss = -1;
    int clitic = -1;
    if (p < e && cls(p) == Cls::kDet) dets.push_back(p++);
    if (p < e && cls(p) == Cls::kPoss) {
      poss = p++;
    } else if (p + 1 < e && cls(p) == Cls::kOpen && cls(p + 1) == Cls::kClitic) {
      poss = p;
      clitic = p + 1;
      p += 2;
    }
    bool after_modifier = !dets.empty() || poss >= 0;
    std::vector<int> words;
    auto proper = [&](int i) { return capitalized(i) && cls(i) == Cls::kOpen; };
    while (p < e) {
      Cls c = cls(p);
      if (c == Cls::kAdv && p + 1 < e && adjective(p + 1, e)) {
        words.push_back(p++);
        continue;
      }
      if (c == Cls::kNum) {
        words.push_back(p++);
        continue;
      }
      if (c != Cls::kOpen) break;
      if (ctx == NpContext::kSubject && !words.empty() && proper(words.back())) break;
      if (adjective(p, e)) {
        words.push_back(p++);
        continue;
      }
      bool ing = gerund(p, e);
      if (known_verb(p) && !ing) {
        bool loose = ctx == NpContext::kPrepObject || ctx == NpContext::kConjunct;
        bool nominal = words.empty() ? (after_modifier || loose)
                                     : lex_.is_adjective(lw(words.back()));
        if (!nominal) break;
        words.push_back(p++);
        continue;
      }
      if (ing && words.empty() && !after_modifier && ctx != NpContext::kSubject &&
          gerund_phrase(p, e)) {
        break;  // verb phrase, handled by the caller
      }
      words.push_back(p++);
    }
    if (words.empty()) {
      if (poss >= 0 && clitic >= 0) {
        // Bare possessor ("Max's").
        tag(poss, proper(poss) ? "PROPN" : "NOUN");
        tag(clitic, "PART", "'s");
        attach(clitic, poss, "case");
        return poss;
      }
      if (!dets.empty()) {
        tag(dets.back(), "PRON", lw(dets.back()));
        return dets.back();
      }
      p = start;
      return -1;
    }
    int head = words.back();
    if (adjective(head, e) && words.size() == 1) {
      tag(head, "ADJ", lw(head));
    } else if (cls(head) == Cls::kNum) {
      tag(head, "NUM", lw(head));
    } else {
      tag(head, proper(head) ? "PROPN" : "NOUN");
    }
    for (size_t k = 0; k + 1 < words.size(); ++k) {
      int w = words[k];
      if (cls(w) == Cls::kAdv) {
        tag(w, "ADV", lw(w));
        attach(w, words[k + 1], "advmod");
      } else if (cls(w) == Cls::kNum) {
        tag(w, "NUM", lw(w));
        attach(w, head, "nummod");
      } else if (adjective(w, e)) {
        tag(w, "ADJ", lw(w));
        attach(w, head, "amod");
      } else {
        tag(w, proper(w) ? "PROPN" : "NOUN");
        attach(w, head, "compound");
      }
    }
    for (int d : dets) {
      tag(d, "DET", lw(d));
      attach(d, head, "det");
    }
    if (poss >= 0) {
      if (clitic >= 0) {
        tag(poss, proper(poss) ? "PROPN" : "NOUN");
        tag(clitic, "PART", "'s");
        attach(clitic, poss, "case");
      } else {
        tag(poss, "PRON", lw(poss));
      }
      attach(poss, head, "poss");
    }
    if (ctx != NpContext::kConjunct) coordinate(head, p, e, ctx);
    return head;
  }

  // "restaurants and parks", "typing and helping customers", "a, b and c".
  void coordinate(int head, int &p, int e, NpContext ctx) {
    while (p < e) {
      int q = p;
      int comma = -1;
      int cc = -1;
      if (lw(q) == ",") comma = q++;
      if (q < e && cls(q) == Cls::kCconj) cc = q++;
      if (comma < 0 && cc < 0) return;
      if (!np_start(q, e)) return;
      if (ctx == NpContext::kSubject && known_verb(q) && !gerund(q, e)) return;
      int conj;
      int r = q;
      if (gerund_phrase(q, e)) {
        tag_verb(q);
        conj = q;
        r = parse_predicate(q, q + 1, e);
      } else {
        conj = parse_np(r, e, NpContext::kConjunct);
        if (conj < 0) return;
      }
      attach(conj, head, "conj");
      if (comma >= 0) {
        tag(comma, "PUNCT", ",");
        attach(comma, head, "punct");
      }
      if (cc >= 0) {
        tag(cc, "CCONJ", lw(cc));
        attach(cc, head, "cc");
      }
      p = r;
      (void)ctx;
    }
  }

  const Lexicon &lex_;
  const ParserOptions &opts_;
  std::vector<Work> toks_;
};

}  // namespace

std::vector<GrammarTemplate> load_grammar_templates(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("missing-resource", "cannot open grammar templates '" + path + "'");
  std::vector<GrammarTemplate> out;
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw Error("bad-resource", "grammar template line without a tab: " + line);
    }
    out.push_back({line.substr(0, tab), line.substr(tab + 1)});
  }
  return out;
}

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  auto flush = [&]() {
    size_t b = cur.find_first_not_of(" \t\r");
    if (b != std::string::npos) {
      size_t e = cur.find_last_not_of(" \t\r");
      out.push_back(cur.substr(b, e - b + 1));
    }
    cur.clear();
  };
  for (size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (c == '\n') {
      flush();
      continue;
    }
    cur.push_back(c);
    if (c == '.' || c == '!' || c == '?') {
      bool decimal = c == '.' && i > 0 && i + 1 < text.size() &&
                     std::isdigit(static_cast<unsigned char>(text[i - 1])) &&
                     std::isdigit(static_cast<unsigned char>(text[i + 1]));
      if (!decimal) flush();
    }
  }
  flush();
  return out;
}

std::vector<std::string> tokenize(std::string_view sentence) {
  std::vector<std::string> out;
  std::istringstream in{std::string(sentence)};
  for (std::string chunk; in >> chunk;) {
    std::vector<std::string> tail;
    while (!chunk.empty() && std::string_view("\"(").find(chunk.front()) != std::string_view::npos) {
      out.push_back(std::string(1, chunk.front()));
      chunk.erase(0, 1);
    }
    while (!chunk.empty()) {
      char c = chunk.back();
      bool trailing = std::string_view(".,!?;:)\"").find(c) != std::string_view::npos;
      if (!trailing) break;
      tail.insert(tail.begin(), std::string(1, c));
      chunk.pop_back();
    }
    std::string lower = lowercase(chunk);
    if (lower == "can't" || lower == "cannot") {
      out.push_back(chunk.substr(0, 2) == "Ca" ? "Can" : "can");
      out.push_back("not");
    } else if (lower == "won't") {
      out.push_back("will");
      out.push_back("not");
    } else if (ends_with(lower, "n't") && chunk.size() > 3) {
      out.push_back(chunk.substr(0, chunk.size() - 3));
      out.push_back("not");
    } else if (ends_with(lower, "'s") && chunk.size() > 2) {
      out.push_back(chunk.substr(0, chunk.size() - 2));
      out.push_back("'s");
    } else if (!chunk.empty()) {
      out.push_back(chunk);
    }
    for (auto &t : tail) out.push_back(std::move(t));
  }
  return out;
}

BuiltinParser::BuiltinParser(Lexicon lexicon, ParserOptions options)
    : lexicon_(std::move(lexicon)), options_(std::move(options)) {}

SentenceGraph BuiltinParser::parse(std::string_view sentence, int provenance) const {
  auto words = tokenize(sentence);
  if (words.empty()) throw Error("unparseable", "empty sentence");
  Parse parse(lexicon_, options_, std::move(words));
  return parse.run(std::string(sentence), provenance);
}

}  // namespace nlplan
