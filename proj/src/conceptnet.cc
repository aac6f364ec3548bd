#include "nlplan/conceptnet.h"

#include <fstream>
#include <set>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "nlplan/error.h"

namespace nlplan {
using nlohmann::json;

namespace {

ConceptNetEdge edge_from_json(const json &j) {
  ConceptNetEdge e;
  e.start = j.at("start").get<std::string>();
  e.relation = j.at("rel").get<std::string>();
  e.end = j.at("end").get<std::string>();
  e.weight = j.at("weight").get<double>();
  if (j.contains("style")) e.style = j.at("style").get<std::string>();
  return e;
}

// Strips a trailing part-of-speech segment: /c/en/dog/n -> /c/en/dog.
std::string base_concept(std::string_view uri) {
  std::string s(uri);
  size_t n = 0;
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '/' && ++n == 4) return s.substr(0, i);
  }
  return s;
}

}  // namespace

std::string concept_uri(const Slug &term) { return "/c/en/" + term.str(); }

std::string relation_uri(std::string_view relation) {
  if (relation.starts_with("/r/")) return std::string(relation);
  return "/r/" + std::string(relation);
}

std::string concept_label(std::string_view uri) {
  std::string s = base_concept(uri);
  if (s.starts_with("/c/")) {
    size_t cut = s.find('/', 3);
    s = cut == std::string::npos ? s.substr(3) : s.substr(cut + 1);
  }
  for (auto &c : s) {
    if (c == '_') c = ' ';
  }
  return s;
}

std::string edge_to_jsonl(const ConceptNetEdge &e) {
  json j = {{"start", e.start}, {"rel", e.relation}, {"end", e.end}, {"weight", e.weight}};
  if (!e.style.empty()) j["style"] = e.style;
  return j.dump();
}

std::vector<ConceptNetEdge> FixtureClient::parse(std::string_view text, const std::string &origin) {
  std::vector<ConceptNetEdge> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int n = 0;
  while (std::getline(in, line)) {
    ++n;
    size_t first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      out.push_back(edge_from_json(json::parse(line)));
    } catch (const json::exception &e) {
      throw Error("bad-fixture", origin + ":" + std::to_string(n) + ": " + e.what());
    }
  }
  return out;
}

FixtureClient FixtureClient::load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("missing-resource", "cannot open ConceptNet fixture '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return FixtureClient(parse(buf.str(), path));
}

std::vector<ConceptNetEdge> FixtureClient::fetch(const std::string &start_uri, const std::string &relation_uri) {
  std::vector<ConceptNetEdge> out;
  for (const auto &e : edges_) {
    if (base_concept(e.start) == start_uri && e.relation == relation_uri) out.push_back(e);
  }
  return out;
}

std::vector<ConceptNetEdge> LiveClient::fetch(const std::string &start_uri, const std::string &relation_uri) {
  httplib::Client cli(base_url_);
  cli.set_follow_location(true);
  cli.set_connection_timeout(5);
  cli.set_read_timeout(10);
  httplib::Params params = {{"start", start_uri}, {"rel", relation_uri}, {"limit", std::to_string(limit_)}};
  auto res = cli.Get("/query", params, httplib::Headers{});
  const std::string hint = "; retry later or run offline with --offline-conceptnet PATH";
  if (!res) throw Error("conceptnet-unavailable", "ConceptNet request failed: " + httplib::to_string(res.error()) + hint);
  if (res->status != 200) {
    throw Error("conceptnet-unavailable", "ConceptNet answered HTTP " + std::to_string(res->status) + hint);
  }
  std::vector<ConceptNetEdge> out;
  try {
    auto doc = json::parse(res->body);
    for (const auto &e : doc.at("edges")) {
      ConceptNetEdge edge;
      edge.start = e.at("start").at("@id").get<std::string>();
      edge.relation = e.at("rel").at("@id").get<std::string>();
      edge.end = e.at("end").at("@id").get<std::string>();
      edge.weight = e.at("weight").get<double>();
      out.push_back(std::move(edge));
    }
  } catch (const json::exception &e) {
    throw Error("conceptnet-unavailable", std::string("unexpected ConceptNet response: ") + e.what() + hint);
  }
  return out;
}

std::vector<ConceptNetEdge> RecordingClient::fetch(const std::string &start_uri, const std::string &relation_uri) {
  auto edges = inner_->fetch(start_uri, relation_uri);
  std::lock_guard<std::mutex> lock(mu_);
  std::ofstream out(path_, std::ios::app);
  if (!out) throw Error("missing-resource", "cannot append to ConceptNet fixture '" + path_ + "'");
  for (const auto &e : edges) out << edge_to_jsonl(e) << "\n";
  return edges;
}

std::unique_ptr<ConceptNetClient> make_conceptnet_client(const Config &config) {
  switch (config.conceptnet_mode) {
    case ConceptNetMode::kOffline:
      return std::make_unique<FixtureClient>(FixtureClient::load(config.resolve(config.conceptnet_fixture)));
    case ConceptNetMode::kLive:
      return std::make_unique<LiveClient>(config.conceptnet_url, config.conceptnet_page_size);
    case ConceptNetMode::kRecord:
      return std::make_unique<RecordingClient>(
          std::make_unique<LiveClient>(config.conceptnet_url, config.conceptnet_page_size),
          config.resolve(config.conceptnet_fixture));
  }
  return nullptr;
}

std::vector<ConceptNetEdge> conceptnet_query(const Slug &term, std::string_view relation,
                                             ConceptNetClient &client, double min_weight, int page_size) {
  std::vector<ConceptNetEdge> out;
  std::set<std::tuple<std::string, std::string, std::string>> seen;
  for (auto &e : client.fetch(concept_uri(term), relation_uri(relation))) {
    if (e.weight < min_weight) continue;
    if (!seen.emplace(base_concept(e.start), e.relation, base_concept(e.end)).second) continue;
    out.push_back(std::move(e));
    if (static_cast<int>(out.size()) >= page_size) break;
  }
  return out;
}

ConceptNetCatalog ConceptNetCatalog::load(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("missing-resource", "cannot open ConceptNet catalog '" + path + "'");
  ConceptNetCatalog c;
  try {
    json doc;
    in >> doc;
    c.capability_relations = doc.at("capability_relations").get<std::vector<std::string>>();
    for (const auto &[rel, role] : doc.at("condition_relations").items()) {
      auto r = role.get<std::string>();
      if (r != "pre" && r != "post") throw Error("bad-resource", "relation " + rel + " must map to pre or post");
      c.condition_relations[rel] = r;
    }
    c.trigger_relations = doc.at("trigger_relations").get<std::vector<std::string>>();
    c.templates = doc.at("templates").get<std::map<std::string, std::string>>();
    c.default_capability_style = doc.value("default_capability_style", c.default_capability_style);
  } catch (const json::exception &e) {
    throw Error("bad-resource", "ConceptNet catalog '" + path + "': " + e.what());
  }
  for (const char *key : {"type_does", "type_can", "is_a_can", "pre", "post", "trigger"}) {
    if (!c.templates.count(key)) throw Error("bad-resource", std::string("ConceptNet catalog lacks template '") + key + "'");
  }
  return c;
}

std::string fill_template(std::string_view tmpl, const std::map<std::string, std::string> &values) {
  std::string out;
  size_t i = 0;
  while (i < tmpl.size()) {
    if (tmpl[i] == '{') {
      size_t close = tmpl.find('}', i);
      if (close != std::string_view::npos) {
        auto it = values.find(std::string(tmpl.substr(i + 1, close - i - 1)));
        if (it != values.end()) {
          out += it->second;
          i = close + 1;
          continue;
        }
      }
    }
    out += tmpl[i++];
  }
  return out;
}

}  // namespace nlplan
