#include "nlplan/resources.h"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nlplan/ingestion.h"

namespace nlplan {
using nlohmann::json;

PatternCatalog PatternCatalog::from_json_text(std::string_view text, const std::string &origin) {
  PatternCatalog c;
  try {
    auto doc = json::parse(text);
    for (const auto &p : doc.at("affordance")) {
      c.affordance.push_back({Slug::parse(p.at("name").get<std::string>()), p.at("pre_marker").get<std::string>(),
                              p.at("post_marker").get<std::string>()});
    }
    c.affect_markers = doc.at("affect").get<std::vector<std::string>>();
    for (const auto &p : doc.at("probability")) {
      double v = p.at("probability").get<double>();
      if (!(v > 0.0 && v <= 1.0)) throw Error("bad-patterns", origin + ": probabilities must be in (0, 1]");
      c.probabilities.emplace_back(p.at("keyword").get<std::string>(), v);
    }
    if (doc.contains("clause_connectors")) {
      c.clause_connectors = doc.at("clause_connectors").get<std::vector<std::string>>();
    }
  } catch (const json::exception &e) {
    throw Error("bad-patterns", origin + ": " + e.what());
  } catch (const Error &e) {
    if (e.code() == "bad-patterns") throw;
    throw Error("bad-patterns", origin + ": " + e.what());
  }
  check_patterns(c.affordance);
  for (const auto &m : c.affect_markers) {
    for (const auto &p : c.affordance) {
      if (m == p.pre_marker || m == p.post_marker) {
        throw Error("bad-patterns", origin + ": '" + m + "' is both an affect and an affordance marker");
      }
    }
  }
  return c;
}

PatternCatalog PatternCatalog::load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("missing-resource", "cannot open patterns '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return from_json_text(buf.str(), path);
}

std::vector<std::string> PatternCatalog::connectors() const {
  std::vector<std::string> out;
  auto add = [&](const std::string &s) {
    if (std::find(out.begin(), out.end(), s) == out.end()) out.push_back(s);
  };
  for (const auto &p : affordance) {
    add(p.pre_marker);
    add(p.post_marker);
  }
  for (const auto &m : affect_markers) add(m);
  for (const auto &m : clause_connectors) add(m);
  return out;
}

Matcher Resources::matcher() const {
  Matcher m;
  m.table = &embeddings;
  m.threshold = config.match_threshold;
  return m;
}

DomainBundle Resources::empty_bundle() const {
  DomainBundle b;
  b.emotion_catalog = emotions;
  b.motivation_catalog = motivations;
  return b;
}

std::shared_ptr<const Resources> load_resources(const Config &config) {
  auto r = std::make_shared<Resources>();
  r->config = config;
  r->patterns = PatternCatalog::load(config.resolve(config.patterns));
  r->rules = load_rule_catalog(config.resolve(config.relation_rules), default_fluent_keywords());
  ParserOptions po;
  po.connectors = r->patterns.connectors();
  po.templates = load_grammar_templates(config.resolve(config.grammar_templates));
  r->parser = std::make_unique<BuiltinParser>(Lexicon::load(config.resolve(config.lexicon)), std::move(po));
  r->emotions = load_emotion_catalog(config.resolve(config.emotions));
  r->motivations = MotivationCatalog::reiss();
  r->affect_lexicon = AffectLexicon::load(config.resolve(config.affect_lexicon));
  check_lexicon(r->affect_lexicon, r->emotions, r->motivations);
  auto emb = load_embeddings(config.resolve(config.embeddings));
  r->embeddings = std::move(emb.table);
  r->diagnostics = std::move(emb.diagnostics);
  r->dictionary = Dictionary::load(config.resolve(config.dictionary));
  r->conceptnet = ConceptNetCatalog::load(config.resolve(config.conceptnet_catalog));
  return r;
}

}  // namespace nlplan
