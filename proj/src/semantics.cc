#include "nlplan/semantics.h"

#include <charconv>
#include <fstream>
#include <sstream>

namespace nlplan {
namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

bool to_double(const std::string &s, double &out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::string> phrase_words(const StateTriple &t) {
  std::vector<std::string> out = t.predicate.words();
  if (!t.complement.empty()) {
    for (auto &w : t.complement.words()) out.push_back(w);
  }
  return out;
}

}  // namespace

bool EmbeddingTable::contains(std::string_view word) const {
  return index_.count(std::string(word)) > 0;
}

std::optional<Eigen::Ref<const Eigen::RowVectorXd>> EmbeddingTable::row(std::string_view word) const {
  auto it = index_.find(std::string(word));
  if (it == index_.end()) return std::nullopt;
  return Eigen::Ref<const Eigen::RowVectorXd>(vectors_.row(it->second));
}

bool EmbeddingTable::set(const std::string &word, const Eigen::Ref<const Eigen::RowVectorXd> &v) {
  if (v.size() != vectors_.cols()) {
    throw Error("bad-embeddings", "vector for '" + word + "' has " + std::to_string(v.size()) +
                                      " values, expected " + std::to_string(vectors_.cols()));
  }
  if (auto it = index_.find(word); it != index_.end()) {
    vectors_.row(it->second) = v;
    return false;
  }
  vectors_.conservativeResize(vectors_.rows() + 1, Eigen::NoChange);
  vectors_.row(vectors_.rows() - 1) = v;
  index_[word] = static_cast<int>(words_.size());
  words_.push_back(word);
  return true;
}

LoadedEmbeddings parse_embeddings(std::string_view text, const std::string &origin) {
  LoadedEmbeddings out;
  std::vector<std::pair<std::string, std::vector<double>>> rows;
  int dim = -1;
  int line_no = 0;
  bool first = true;
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    auto cols = split_ws(line);
    if (cols.empty()) continue;
    if (first) {
      first = false;
      double a = 0, b = 0;
      if (cols.size() == 2 && to_double(cols[0], a) && to_double(cols[1], b)) {
        dim = static_cast<int>(b);
        if (dim <= 0) throw Error("bad-embeddings", origin + ":1: dimension must be positive");
        continue;
      }
    }
    if (dim < 0) dim = static_cast<int>(cols.size()) - 1;
    if (static_cast<int>(cols.size()) - 1 != dim) {
      throw Error("bad-embeddings", origin + ":" + std::to_string(line_no) + ": expected " +
                                        std::to_string(dim) + " values, found " +
                                        std::to_string(cols.size() - 1));
    }
    std::vector<double> v(dim);
    for (int i = 0; i < dim; ++i) {
      if (!to_double(cols[i + 1], v[i])) {
        throw Error("bad-embeddings", origin + ":" + std::to_string(line_no) + ": bad number '" +
                                          cols[i + 1] + "'");
      }
    }
    std::string word = cols[0];
    for (auto &c : word) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    rows.emplace_back(std::move(word), std::move(v));
  }
  if (rows.empty() || dim <= 0) throw Error("bad-embeddings", origin + ": no vectors");
  out.table = EmbeddingTable(dim);
  for (auto &[word, v] : rows) {
    Eigen::Map<const Eigen::RowVectorXd> row(v.data(), dim);
    if (!out.table.set(word, row)) {
      out.diagnostics.push_back({"duplicate-word", word, "'" + word + "' listed twice; last vector wins"});
    }
  }
  return out;
}

LoadedEmbeddings load_embeddings(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("bad-embeddings", "cannot open embeddings '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_embeddings(buf.str(), path);
}

double similarity(const Vector &u, const Vector &v) {
  if (u.size() != v.size()) throw Error("dimension-mismatch", "vectors differ in size");
  return cosine(u, v);
}

PhraseFilters PhraseFilters::defaults() {
  PhraseFilters f;
  f.stopwords = {"a", "an", "the", "of", "to", "in", "on", "at", "for", "with", "and",
                 "or", "some", "his", "her", "its", "their", "my", "your", "s"};
  f.light_verbs = {"be", "do", "get", "have", "make", "take"};
  return f;
}

std::optional<PhraseVector> phrase_vector(const std::vector<std::string> &words,
                                          const EmbeddingTable &table,
                                          const PhraseFilters &filters) {
  std::vector<std::string> content;
  std::vector<std::string> light;
  for (const auto &w : words) {
    if (filters.stopwords.count(w)) continue;
    (filters.light_verbs.count(w) ? light : content).push_back(w);
  }
  const auto &kept = content.empty() ? light : content;
  if (kept.empty()) return std::nullopt;
  PhraseVector out;
  Vector sum = Vector::Zero(table.dimension());
  int found = 0;
  for (const auto &w : kept) {
    if (auto r = table.row(w)) {
      sum += r->transpose();
      ++found;
    } else {
      out.missing.push_back(w);
    }
  }
  if (found == 0) return std::nullopt;
  double norm = sum.norm();
  if (norm == 0.0) return std::nullopt;
  out.unit = sum / norm;
  out.coverage = static_cast<double>(found) / static_cast<double>(kept.size());
  return out;
}

double phrase_similarity(const std::vector<std::string> &a, const std::vector<std::string> &b,
                         const EmbeddingTable &table, const PhraseFilters &filters) {
  auto va = phrase_vector(a, table, filters);
  auto vb = phrase_vector(b, table, filters);
  if (!va || !vb) return 0.0;
  return cosine(va->unit, vb->unit) * std::min(va->coverage, vb->coverage);
}

std::optional<StateMatch> match_state(const StateTriple &query,
                                      const std::vector<StateDecl> &candidates,
                                      const EmbeddingTable &table, double threshold,
                                      const PhraseFilters &filters) {
  struct Candidate {
    const StateDecl *decl;
    std::optional<Slug> value;
    StateTriple triple;
  };
  std::vector<Candidate> all;
  for (const auto &d : candidates) {
    if (d.kind == StateKind::kBinary) {
      all.push_back({&d, std::nullopt, d.triple});
    } else {
      for (const auto &v : d.domain) {
        all.push_back({&d, v, {d.triple.subject, d.triple.predicate, v}});
      }
    }
  }
  auto q = phrase_vector(phrase_words(query), table, filters);
  std::optional<StateMatch> best;
  for (const auto &c : all) {
    double score = 0.0;
    if (c.triple.predicate == query.predicate && c.triple.complement == query.complement) {
      score = 1.0;
    } else if (q) {
      auto v = phrase_vector(phrase_words(c.triple), table, filters);
      if (!v) continue;
      score = cosine(q->unit, v->unit) * std::min(q->coverage, v->coverage);
    } else {
      continue;
    }
    if (score < threshold) continue;
    bool better = !best || score > best->score ||
                  (score == best->score &&
                   std::tie(c.decl->id, c.value) < std::tie(best->state, best->value));
    if (better) best = StateMatch{c.decl->id, c.value, score};
  }
  return best;
}

}  // namespace nlplan
