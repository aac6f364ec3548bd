#include "nlplan/service.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "nlplan/bundle_io.h"
#include "nlplan/codegen.h"

namespace nlplan {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void write_file(const fs::path &p, const std::string &content) {
  fs::path tmp = p;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("store-failed", "cannot write " + tmp.string());
    out << content;
  }
  fs::rename(tmp, p);
}

std::string read_file(const fs::path &p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error("store-failed", "cannot read " + p.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json diagnostics_json(const std::vector<Diagnostic> &ds) {
  json out = json::array();
  for (const auto &d : ds) out.push_back(diagnostic_to_json(d));
  return out;
}

void apply_event(DomainBundle &b, const json &ev, const Resources &res) {
  const std::string kind = ev.at("kind").get<std::string>();
  if (kind == "text") {
    SubmitOptions opt;
    opt.category = parse_category(ev.value("category", "auto"));
    if (ev.contains("conllu")) opt.conllu = ev.at("conllu").get<std::string>();
    compile_text(b, ev.at("text").get<std::string>(), res, opt);
  } else if (kind == "object") {
    set_object_type(b, slugify(ev.at("name").get<std::string>()), slugify(ev.at("type").get<std::string>()));
  } else if (kind == "accept") {
    apply_suggestion(b, suggestion_from_json(ev.at("suggestion")));
  } else if (kind != "reject") {
    throw Error("bad-transcript", "unknown event kind '" + kind + "'");
  }
}

}  // namespace

Toolkit make_toolkit(const Config &config) {
  Toolkit t;
  t.resources = load_resources(config);
  t.conceptnet = make_conceptnet_client(config);
  return t;
}

DomainBundle replay_transcript(const std::vector<json> &transcript, const Resources &resources) {
  DomainBundle b = resources.empty_bundle();
  for (const auto &ev : transcript) apply_event(b, ev, resources);
  return b;
}

void set_object_type(DomainBundle &bundle, const Slug &name, const Slug &type) {
  for (auto &o : bundle.objects) {
    if (o.name == name) {
      o.type = type;
      return;
    }
  }
  bundle.objects.push_back({name, type});
}

std::set<std::string, std::less<>> domain_vocabulary(const DomainBundle &b) {
  std::set<std::string, std::less<>> v;
  auto add = [&](const std::string &s) {
    if (s.empty()) return;
    v.insert(s);
    std::istringstream parts(s);
    std::string piece;
    while (std::getline(parts, piece, '_')) {
      if (!piece.empty()) v.insert(piece);
    }
  };
  for (const auto &o : b.objects) {
    add(o.name.str());
    add(o.type.str());
  }
  for (const auto &s : b.states) {
    add(s.id);
    add(s.triple.predicate.str());
    add(s.triple.complement.str());
    for (const auto &d : s.domain) add(d.str());
  }
  for (const auto &a : b.affordances) add(a.name.str());
  for (const auto &e : b.emotion_catalog) add(e.name.str());
  for (const auto &m : b.motivation_catalog.factors) add(m.str());
  return v;
}

// ---- Session ---------------------------------------------------------------

Session::Session(std::string id, Toolkit toolkit, json config_overlay)
    : id_(std::move(id)), toolkit_(std::move(toolkit)), config_overlay_(std::move(config_overlay)) {
  bundle_ = toolkit_.resources->empty_bundle();
  refresh_suggestions();
}

void Session::refresh_suggestions() {
  const Resources &res = *toolkit_.resources;
  const Config &cfg = res.config;
  suggestion_diagnostics_.clear();
  Matcher m = res.matcher();
  std::vector<Suggestion> all = propose_missing_rules(bundle_, m, cfg.rule_threshold);
  for (auto &s : flag_incomplete_affordances(bundle_, cfg.min_pre, cfg.min_post)) all.push_back(std::move(s));
  if (toolkit_.conceptnet) {
    CommonsenseOptions opt;
    opt.min_weight = cfg.conceptnet_min_weight;
    opt.page_size = cfg.conceptnet_page_size;
    opt.trigger_threshold = cfg.trigger_threshold;
    try {
      for (auto &s : commonsense_suggestions(bundle_, *toolkit_.conceptnet, res.conceptnet, m, opt)) {
        all.push_back(std::move(s));
      }
    } catch (const Error &e) {
      suggestion_diagnostics_.push_back({e.code(), "conceptnet", e.what()});
    }
  }
  suggestions_.clear();
  std::set<std::string> seen;
  for (auto &s : all) {
    if (decided_.count(s.id) || !seen.insert(s.id).second) continue;
    suggestions_.push_back(std::move(s));
  }
  sort_suggestions(suggestions_);
}

json Session::result(json body) const {
  json pending = json::array();
  for (const auto &s : suggestions_) pending.push_back(suggestion_to_json(s));
  body["session"] = id_;
  body["revision"] = transcript_.size();
  body["suggestions"] = pending;
  if (!suggestion_diagnostics_.empty()) body["suggestion_diagnostics"] = diagnostics_json(suggestion_diagnostics_);
  return body;
}

json Session::submit_text(std::string_view text, const SubmitOptions &options) {
  std::unique_lock lock(mu_);
  bool blank = text.find_first_not_of(" \t\r\n") == std::string_view::npos;
  if (blank && !(options.conllu && !options.conllu->empty())) {
    return result({{"report", report_to_json({})}});
  }
  auto report = compile_text(bundle_, text, *toolkit_.resources, options);
  json ev = {{"kind", "text"}, {"text", std::string(text)}, {"category", to_string(options.category)}};
  if (options.conllu) ev["conllu"] = *options.conllu;
  transcript_.push_back(std::move(ev));
  refresh_suggestions();
  store();
  return result({{"report", report_to_json(report)}});
}

json Session::declare_object(const std::string &name, const std::string &type) {
  std::unique_lock lock(mu_);
  Slug n = slugify(name);
  Slug t = slugify(type);
  set_object_type(bundle_, n, t);
  transcript_.push_back({{"kind", "object"}, {"name", n.str()}, {"type", t.str()}});
  refresh_suggestions();
  store();
  return result({{"object", {{"name", n.str()}, {"type", t.str()}}}});
}

json Session::decide(const std::string &sid, bool accept) {
  std::unique_lock lock(mu_);
  if (auto it = decided_.find(sid); it != decided_.end()) {
    throw Error("already-decided", "suggestion " + sid + " was already " + std::string(to_string(it->second.status)));
  }
  auto it = std::find_if(suggestions_.begin(), suggestions_.end(), [&](const Suggestion &s) { return s.id == sid; });
  if (it == suggestions_.end()) throw Error("unknown-suggestion", "no pending suggestion " + sid);
  Suggestion s = *it;
  if (accept) {
    apply_suggestion(bundle_, s);
    s.status = SuggestionStatus::kAccepted;
    json stored = suggestion_to_json(s);
    stored["status"] = "pending";
    transcript_.push_back({{"kind", "accept"}, {"suggestion", stored}});
  } else {
    s.status = SuggestionStatus::kRejected;
    transcript_.push_back({{"kind", "reject"}, {"id", sid}});
  }
  decided_[sid] = s;
  refresh_suggestions();
  store();
  return result({{"decided", suggestion_to_json(s)}});
}

DomainBundle Session::bundle() const {
  std::shared_lock lock(mu_);
  return bundle_;
}

std::vector<Suggestion> Session::pending() const {
  std::shared_lock lock(mu_);
  return suggestions_;
}

std::vector<json> Session::transcript() const {
  std::shared_lock lock(mu_);
  return transcript_;
}

std::string Session::code(std::string_view target) const {
  std::shared_lock lock(mu_);
  if (target == "sexpr") return emit_sexpr(bundle_);
  if (target == "pddl") return emit_pddl(bundle_);
  throw Error("bad-target", "target must be sexpr or pddl, not '" + std::string(target) + "'");
}

std::vector<SpellFlag> Session::spellcheck(std::string_view text) const {
  std::shared_lock lock(mu_);
  return nlplan::spellcheck(text, toolkit_.resources->dictionary, domain_vocabulary(bundle_));
}

json Session::snapshot() const {
  std::shared_lock lock(mu_);
  return result({{"domain", bundle_to_json(bundle_)}});
}

void Session::attach_store(std::string dir) {
  std::unique_lock lock(mu_);
  dir_ = std::move(dir);
  save_locked(dir_);
}

void Session::store() const {
  if (!dir_.empty()) save_locked(dir_);
}

void Session::save(const std::string &dir) const {
  std::shared_lock lock(mu_);
  save_locked(dir);
}

void Session::save_locked(const std::string &dir) const {
  fs::create_directories(dir);
  write_file(fs::path(dir) / "session.json", json{{"id", id_}, {"config", config_overlay_}}.dump(2) + "\n");
  write_file(fs::path(dir) / "bundle.json", write_bundle(bundle_));
  std::string lines;
  for (const auto &ev : transcript_) lines += ev.dump() + "\n";
  write_file(fs::path(dir) / "transcript.jsonl", lines);
  json decided = json::array();
  for (const auto &[id, s] : decided_) decided.push_back(suggestion_to_json(s));
  write_file(fs::path(dir) / "suggestions.json", decided.dump(2) + "\n");
}

json Session::read_overlay(const std::string &dir) {
  try {
    return json::parse(read_file(fs::path(dir) / "session.json")).value("config", json::object());
  } catch (const json::exception &e) {
    throw Error("store-failed", dir + "/session.json: " + e.what());
  }
}

std::unique_ptr<Session> Session::load(const std::string &dir, Toolkit toolkit) {
  json meta;
  std::vector<json> transcript;
  std::vector<Suggestion> decided;
  DomainBundle saved;
  try {
    meta = json::parse(read_file(fs::path(dir) / "session.json"));
    std::istringstream lines(read_file(fs::path(dir) / "transcript.jsonl"));
    std::string line;
    while (std::getline(lines, line)) {
      if (!line.empty()) transcript.push_back(json::parse(line));
    }
    for (const auto &s : json::parse(read_file(fs::path(dir) / "suggestions.json"))) {
      decided.push_back(suggestion_from_json(s));
    }
    saved = read_bundle(read_file(fs::path(dir) / "bundle.json"));
  } catch (const json::exception &e) {
    throw Error("store-failed", dir + ": " + e.what());
  }
  auto s = std::make_unique<Session>(meta.at("id").get<std::string>(), std::move(toolkit),
                                     meta.value("config", json::object()));
  s->bundle_ = replay_transcript(transcript, *s->toolkit_.resources);
  if (!(s->bundle_ == saved)) {
    throw Error("replay-mismatch", "replaying " + dir + "/transcript.jsonl does not rebuild bundle.json");
  }
  s->transcript_ = std::move(transcript);
  for (auto &d : decided) s->decided_[d.id] = std::move(d);
  s->refresh_suggestions();
  s->dir_ = dir;
  return s;
}

// ---- Service ---------------------------------------------------------------

Service::Service(Config config) : Service(config, make_toolkit(config)) {}

Service::Service(Config config, Toolkit toolkit) : config_(std::move(config)), toolkit_(std::move(toolkit)) {
  load_store();
}

void Service::load_store() {
  if (config_.store_dir.empty() || !fs::exists(config_.store_dir)) return;
  for (const auto &entry : fs::directory_iterator(config_.store_dir)) {
    if (!entry.is_directory() || !fs::exists(entry.path() / "session.json")) continue;
    std::string dir = entry.path().string();
    json overlay = Session::read_overlay(dir);
    Toolkit tk = overlay.empty() ? toolkit_ : make_toolkit(config_from_json(overlay, config_));
    auto s = Session::load(dir, std::move(tk));
    std::string id = s->id();
    sessions_[id] = std::move(s);
  }
}

std::string Service::fresh_id() {
  static thread_local std::mt19937_64 rng{std::random_device{}()};
  std::ostringstream os;
  os << std::hex << rng() << ++counter_;
  return os.str();
}

std::string Service::create_session(const json &overlay) {
  Toolkit tk = toolkit_;
  if (!overlay.is_object()) throw Error("bad-config", "session configuration must be a JSON object");
  if (!overlay.empty()) tk = make_toolkit(config_from_json(overlay, config_));
  std::lock_guard lock(mu_);
  std::string id;
  do {
    id = fresh_id();
  } while (sessions_.count(id));
  auto s = std::make_shared<Session>(id, std::move(tk), overlay);
  if (!config_.store_dir.empty()) s->attach_store((fs::path(config_.store_dir) / id).string());
  sessions_[id] = std::move(s);
  return id;
}

std::shared_ptr<Session> Service::get(const std::string &id) const {
  std::lock_guard lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw Error("unknown-session", "no session " + id);
  return it->second;
}

std::vector<std::string> Service::session_ids() const {
  std::lock_guard lock(mu_);
  std::vector<std::string> out;
  for (const auto &[id, _] : sessions_) out.push_back(id);
  return out;
}

std::vector<SpellFlag> Service::spellcheck(std::string_view text) const {
  return nlplan::spellcheck(text, toolkit_.resources->dictionary);
}

}  // namespace nlplan
