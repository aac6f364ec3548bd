#include "nlplan/config.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "nlplan/error.h"

#ifndef NLPLAN_DEFAULT_DATA_DIR
#define NLPLAN_DEFAULT_DATA_DIR "data"
#endif

namespace nlplan {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string mode_name(ConceptNetMode m) {
  switch (m) {
    case ConceptNetMode::kOffline:
      return "offline";
    case ConceptNetMode::kLive:
      return "live";
    case ConceptNetMode::kRecord:
      return "record";
  }
  return "offline";
}

ConceptNetMode parse_mode(const std::string &s) {
  if (s == "offline") return ConceptNetMode::kOffline;
  if (s == "live") return ConceptNetMode::kLive;
  if (s == "record") return ConceptNetMode::kRecord;
  throw Error("bad-config", "conceptnet_mode must be offline, live or record, not '" + s + "'");
}

}  // namespace

std::string Config::resolve(const std::string &file) const {
  if (file.empty()) return file;
  fs::path p(file);
  if (p.is_absolute() || data_dir.empty()) return p.string();
  return (fs::path(data_dir) / p).string();
}

Config default_config() {
  Config c;
  const char *env = std::getenv("NLPLAN_DATA_DIR");
  c.data_dir = env && *env ? env : NLPLAN_DEFAULT_DATA_DIR;
  return c;
}

Config config_from_json(const json &doc, Config c) {
  if (!doc.is_object()) throw Error("bad-config", "configuration must be a JSON object");
  try {
    for (const auto &[key, v] : doc.items()) {
      if (key == "data_dir") c.data_dir = v.get<std::string>();
      else if (key == "embeddings") c.embeddings = v.get<std::string>();
      else if (key == "patterns") c.patterns = v.get<std::string>();
      else if (key == "relation_rules") c.relation_rules = v.get<std::string>();
      else if (key == "lexicon") c.lexicon = v.get<std::string>();
      else if (key == "grammar_templates") c.grammar_templates = v.get<std::string>();
      else if (key == "affect_lexicon") c.affect_lexicon = v.get<std::string>();
      else if (key == "emotions") c.emotions = v.get<std::string>();
      else if (key == "dictionary") c.dictionary = v.get<std::string>();
      else if (key == "conceptnet_catalog") c.conceptnet_catalog = v.get<std::string>();
      else if (key == "conceptnet_fixture") c.conceptnet_fixture = v.get<std::string>();
      else if (key == "conceptnet_mode") c.conceptnet_mode = parse_mode(v.get<std::string>());
      else if (key == "conceptnet_url") c.conceptnet_url = v.get<std::string>();
      else if (key == "conceptnet_min_weight") c.conceptnet_min_weight = v.get<double>();
      else if (key == "conceptnet_page_size") c.conceptnet_page_size = v.get<int>();
      else if (key == "match_threshold") c.match_threshold = v.get<double>();
      else if (key == "rule_threshold") c.rule_threshold = v.get<double>();
      else if (key == "trigger_threshold") c.trigger_threshold = v.get<double>();
      else if (key == "min_pre") c.min_pre = v.get<int>();
      else if (key == "min_post") c.min_post = v.get<int>();
      else if (key == "strict") c.strict = v.get<bool>();
      else if (key == "store_dir") c.store_dir = v.get<std::string>();
      else throw Error("bad-config", "unknown configuration key '" + key + "'");
    }
  } catch (const json::exception &e) {
    throw Error("bad-config", e.what());
  }
  for (double t : {c.match_threshold, c.rule_threshold, c.trigger_threshold}) {
    if (!(t > 0.0)) throw Error("bad-config", "thresholds must be positive");
  }
  if (c.min_pre < 0 || c.min_post < 0) throw Error("bad-config", "min_pre/min_post must be >= 0");
  if (c.conceptnet_page_size <= 0) throw Error("bad-config", "conceptnet_page_size must be positive");
  return c;
}

json config_to_json(const Config &c) {
  return {{"data_dir", c.data_dir},
          {"embeddings", c.embeddings},
          {"patterns", c.patterns},
          {"relation_rules", c.relation_rules},
          {"lexicon", c.lexicon},
          {"grammar_templates", c.grammar_templates},
          {"affect_lexicon", c.affect_lexicon},
          {"emotions", c.emotions},
          {"dictionary", c.dictionary},
          {"conceptnet_catalog", c.conceptnet_catalog},
          {"conceptnet_fixture", c.conceptnet_fixture},
          {"conceptnet_mode", mode_name(c.conceptnet_mode)},
          {"conceptnet_url", c.conceptnet_url},
          {"conceptnet_min_weight", c.conceptnet_min_weight},
          {"conceptnet_page_size", c.conceptnet_page_size},
          {"match_threshold", c.match_threshold},
          {"rule_threshold", c.rule_threshold},
          {"trigger_threshold", c.trigger_threshold},
          {"min_pre", c.min_pre},
          {"min_post", c.min_post},
          {"strict", c.strict},
          {"store_dir", c.store_dir}};
}

Config load_config(const std::string &path) {
  Config c = default_config();
  auto overlay = [&](const std::string &file) {
    std::ifstream in(file);
    if (!in) throw Error("bad-config", "cannot open configuration '" + file + "'");
    json doc;
    try {
      in >> doc;
    } catch (const json::exception &e) {
      throw Error("bad-config", file + ": " + e.what());
    }
    c = config_from_json(doc, c);
  };
  if (const char *env = std::getenv("NLPLAN_CONFIG"); env && *env) overlay(env);
  if (!path.empty()) overlay(path);
  return c;
}

}  // namespace nlplan
