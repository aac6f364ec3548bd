#ifndef NLPLAN_SEMANTICS_H_
#define NLPLAN_SEMANTICS_H_

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "nlplan/domain.h"
#include "nlplan/error.h"

namespace nlplan {

using Vector = Eigen::VectorXd;

// Word vectors stored row-wise in one dense matrix.
class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  explicit EmbeddingTable(int dimension) : vectors_(0, dimension) {}

  int dimension() const { return static_cast<int>(vectors_.cols()); }
  int size() const { return static_cast<int>(vectors_.rows()); }
  bool contains(std::string_view word) const;

  // Row for `word`; absent words yield std::nullopt.
  std::optional<Eigen::Ref<const Eigen::RowVectorXd>> row(std::string_view word) const;

  // Adds or replaces a vector; returns false when `word` was already present.
  bool set(const std::string &word, const Eigen::Ref<const Eigen::RowVectorXd> &v);

  // Multiplies every vector by `factor`.
  void scale(double factor) { vectors_ *= factor; }

  const std::vector<std::string> &words() const { return words_; }

 private:
  Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> vectors_;
  std::vector<std::string> words_;
  std::unordered_map<std::string, int> index_;
};

struct LoadedEmbeddings {
  EmbeddingTable table;
  std::vector<Diagnostic> diagnostics;  // "duplicate-word"
};

// word2vec text format: optional "count dim" header, then "word v1 ... vd".
// Throws Error("bad-embeddings") on dimension mismatch or an empty file.
LoadedEmbeddings load_embeddings(const std::string &path);
LoadedEmbeddings parse_embeddings(std::string_view text, const std::string &origin = "<text>");

// Cosine of two same-sized vectors. Throws Error("zero-vector").
template <typename A, typename B>
double cosine(const Eigen::MatrixBase<A> &u, const Eigen::MatrixBase<B> &v) {
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) throw Error("zero-vector", "cosine of a zero vector");
  return std::clamp(u.dot(v) / (nu * nv), -1.0, 1.0);
}

double similarity(const Vector &u, const Vector &v);

struct PhraseFilters {
  std::set<std::string, std::less<>> stopwords;
  std::set<std::string, std::less<>> light_verbs;

  static PhraseFilters defaults();
};

struct PhraseVector {
  Vector unit;
  // Share of the phrase's content words found in the table.
  double coverage = 1.0;
  std::vector<std::string> missing;
};

// Mean of the in-vocabulary content words, normalized. Light verbs and
// stopwords are dropped when a content word remains.
std::optional<PhraseVector> phrase_vector(const std::vector<std::string> &words,
                                          const EmbeddingTable &table,
                                          const PhraseFilters &filters);

struct StateMatch {
  std::string state;
  std::optional<Slug> value;  // fluent value
  double score = 0.0;
};

// Best (predicate, complement) match among `candidates` scoring at least
// `threshold`; fluent values are separate candidates. Identical slugs score
// 1.0. Scores are scaled by vocabulary coverage. Ties go to the smaller
// state identifier, then value.
std::optional<StateMatch> match_state(const StateTriple &query,
                                      const std::vector<StateDecl> &candidates,
                                      const EmbeddingTable &table, double threshold,
                                      const PhraseFilters &filters);

// Similarity of two word lists (0 when either has no vector).
double phrase_similarity(const std::vector<std::string> &a, const std::vector<std::string> &b,
                         const EmbeddingTable &table, const PhraseFilters &filters);

}  // namespace nlplan

#endif  // NLPLAN_SEMANTICS_H_
