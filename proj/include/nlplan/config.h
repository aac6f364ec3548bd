#ifndef NLPLAN_CONFIG_H_
#define NLPLAN_CONFIG_H_

#include <string>

#include <json.hpp>

namespace nlplan {

// Where ConceptNet edges come from. kRecord queries the live API and appends
// every edge it sees to the fixture file.
enum class ConceptNetMode { kOffline, kLive, kRecord };

struct Config {
  // Resource files; relative paths resolve against data_dir.
  std::string data_dir;
  std::string embeddings = "toy_embeddings.txt";
  std::string patterns = "patterns.json";
  std::string relation_rules = "relation_rules.json";
  std::string lexicon = "lexicon.json";
  std::string grammar_templates = "grammar_templates.tsv";
  std::string affect_lexicon = "affect_lexicon.json";
  std::string emotions = "emotions.json";
  std::string dictionary = "dictionary.txt";
  std::string conceptnet_catalog = "conceptnet.json";
  std::string conceptnet_fixture = "conceptnet_fixture.jsonl";

  ConceptNetMode conceptnet_mode = ConceptNetMode::kOffline;
  std::string conceptnet_url = "http://api.conceptnet.io";
  double conceptnet_min_weight = 1.0;
  int conceptnet_page_size = 20;

  double match_threshold = 0.75;     // condition -> existing state
  double rule_threshold = 0.75;      // missing affect-rule proposals
  double trigger_threshold = 0.6;    // ConceptNet affect triggers
  int min_pre = 1;
  int min_post = 1;
  bool strict = false;               // unmatched conditions fail the sentence

  // Session persistence root; empty keeps sessions in memory only.
  std::string store_dir;

  // Absolute path of a resource entry.
  std::string resolve(const std::string &file) const;
};

// Built-in defaults with data_dir taken from NLPLAN_DATA_DIR, else the
// source-tree data directory.
Config default_config();

// Overlays the keys present in `doc` on `base`. Unknown keys are rejected
// with Error("bad-config").
Config config_from_json(const nlohmann::json &doc, Config base = default_config());
nlohmann::json config_to_json(const Config &config);

// Defaults, then the file named by NLPLAN_CONFIG (if set), then `path` (if
// non-empty).
Config load_config(const std::string &path = "");

}  // namespace nlplan

#endif  // NLPLAN_CONFIG_H_
