#ifndef NLPLAN_CONCEPTNET_H_
#define NLPLAN_CONCEPTNET_H_

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "nlplan/config.h"
#include "nlplan/domain.h"

namespace nlplan {

// One ConceptNet assertion. start/end are concept URIs ("/c/en/dog"),
// relation a relation URI ("/r/IsCapableOf").
struct ConceptNetEdge {
  std::string start;
  std::string relation;
  std::string end;
  double weight = 0.0;
  // Prompt template hint for capability edges ("type_does", "type_can",
  // "is_a_can"); empty means the catalog default.
  std::string style;

  bool operator==(const ConceptNetEdge &) const = default;
};

std::string concept_uri(const Slug &term);
std::string relation_uri(std::string_view relation);  // "IsCapableOf" -> "/r/IsCapableOf"
// "/c/en/guide_a_blind_person/n" -> "guide a blind person"
std::string concept_label(std::string_view uri);

// Raw edge source. Implementations may return edges of any weight and in
// any order; conceptnet_query does the filtering.
class ConceptNetClient {
 public:
  virtual ~ConceptNetClient() = default;
  virtual std::vector<ConceptNetEdge> fetch(const std::string &start_uri,
                                            const std::string &relation_uri) = 0;
};

// Recorded edges, one JSON object per line:
//   {"start": "/c/en/dog", "rel": "/r/IsCapableOf",
//    "end": "/c/en/guide_a_blind_person", "weight": 2.0, "style": "type_does"}
// Blank lines and lines starting with '#' are skipped.
class FixtureClient : public ConceptNetClient {
 public:
  explicit FixtureClient(std::vector<ConceptNetEdge> edges) : edges_(std::move(edges)) {}
  // Throws Error("bad-fixture") with the line number on a malformed record.
  static FixtureClient load(const std::string &path);
  static std::vector<ConceptNetEdge> parse(std::string_view text, const std::string &origin);

  std::vector<ConceptNetEdge> fetch(const std::string &start_uri, const std::string &relation_uri) override;

 private:
  std::vector<ConceptNetEdge> edges_;
};

// GET {base}/query?start=...&rel=...&limit=... on the ConceptNet web API.
// Throws Error("conceptnet-unavailable") on network or HTTP failure.
class LiveClient : public ConceptNetClient {
 public:
  LiveClient(std::string base_url, int limit) : base_url_(std::move(base_url)), limit_(limit) {}
  std::vector<ConceptNetEdge> fetch(const std::string &start_uri, const std::string &relation_uri) override;

 private:
  std::string base_url_;
  int limit_;
};

// Live queries appended to a fixture file for later offline replay.
class RecordingClient : public ConceptNetClient {
 public:
  RecordingClient(std::unique_ptr<ConceptNetClient> inner, std::string fixture_path)
      : inner_(std::move(inner)), path_(std::move(fixture_path)) {}
  std::vector<ConceptNetEdge> fetch(const std::string &start_uri, const std::string &relation_uri) override;

 private:
  std::unique_ptr<ConceptNetClient> inner_;
  std::string path_;
  std::mutex mu_;
};

std::string edge_to_jsonl(const ConceptNetEdge &edge);

// Backend selected by config.conceptnet_mode.
std::unique_ptr<ConceptNetClient> make_conceptnet_client(const Config &config);

// Edges of `relation` out of `term` with weight >= min_weight, without
// duplicates (same start, relation and end), at most `page_size`.
std::vector<ConceptNetEdge> conceptnet_query(const Slug &term, std::string_view relation,
                                             ConceptNetClient &client, double min_weight = 1.0,
                                             int page_size = 20);

// Which relations feed which suggestion kind, plus the prompt templates.
struct ConceptNetCatalog {
  std::vector<std::string> capability_relations;
  // relation -> "pre" | "post"
  std::map<std::string, std::string> condition_relations;
  std::vector<std::string> trigger_relations;
  // Placeholders: {object} {type} {end} {start} {state} {affect}.
  std::map<std::string, std::string> templates;
  std::string default_capability_style = "type_does";

  static ConceptNetCatalog load(const std::string &path);
};

// Replaces {key} placeholders; unknown placeholders are left as written.
std::string fill_template(std::string_view tmpl, const std::map<std::string, std::string> &values);

}  // namespace nlplan

#endif  // NLPLAN_CONCEPTNET_H_
