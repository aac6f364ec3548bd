#ifndef NLPLAN_SERVICE_H_
#define NLPLAN_SERVICE_H_

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlplan/conceptnet.h"
#include "nlplan/pipeline.h"
#include "nlplan/resources.h"
#include "nlplan/spellcheck.h"
#include "nlplan/suggestions.h"

namespace nlplan {

// What a session reads: resources plus the ConceptNet backend.
struct Toolkit {
  std::shared_ptr<const Resources> resources;
  std::shared_ptr<ConceptNetClient> conceptnet;
};

Toolkit make_toolkit(const Config &config);

// Transcript events, one JSON object each:
//   {"kind": "text", "text": ..., "category": "auto", "conllu": ...}
//   {"kind": "object", "name": ..., "type": ...}
//   {"kind": "accept", "suggestion": <suggestion>}
//   {"kind": "reject", "id": ...}
// Replaying them over an empty bundle rebuilds the session's bundle.
DomainBundle replay_transcript(const std::vector<nlohmann::json> &transcript, const Resources &resources);

// Sets (or adds) an object's type.
void set_object_type(DomainBundle &bundle, const Slug &name, const Slug &type);

// Every name the author introduced: objects, types, state ids and the words
// of their triples, fluent values, affordance names, catalog entries.
std::set<std::string, std::less<>> domain_vocabulary(const DomainBundle &bundle);

class Session {
 public:
  Session(std::string id, Toolkit toolkit, nlohmann::json config_overlay);

  const std::string &id() const { return id_; }

  nlohmann::json submit_text(std::string_view text, const SubmitOptions &options);
  nlohmann::json declare_object(const std::string &name, const std::string &type);
  // Throws Error("unknown-suggestion") or Error("already-decided").
  nlohmann::json decide(const std::string &suggestion_id, bool accept);

  DomainBundle bundle() const;
  std::vector<Suggestion> pending() const;
  std::vector<nlohmann::json> transcript() const;
  // Throws Error("bad-target") unless target is "sexpr" or "pddl".
  std::string code(std::string_view target) const;
  std::vector<SpellFlag> spellcheck(std::string_view text) const;
  nlohmann::json snapshot() const;  // domain + pending suggestions + revision

  // Every mutation is written to `dir` (session.json, bundle.json,
  // transcript.jsonl, suggestions.json) once set.
  void attach_store(std::string dir);
  void save(const std::string &dir) const;
  // Rebuilds the bundle by replaying the transcript and checks it against
  // the saved bundle.json; throws Error("replay-mismatch") on a difference.
  static std::unique_ptr<Session> load(const std::string &dir, Toolkit toolkit);
  static nlohmann::json read_overlay(const std::string &dir);

 private:
  void refresh_suggestions();  // caller holds the write lock
  void save_locked(const std::string &dir) const;
  void store() const;
  nlohmann::json result(nlohmann::json body) const;

  std::string id_;
  Toolkit toolkit_;
  nlohmann::json config_overlay_;
  mutable std::shared_mutex mu_;
  DomainBundle bundle_;
  std::vector<nlohmann::json> transcript_;
  std::vector<Suggestion> suggestions_;    // pending, sorted
  std::map<std::string, Suggestion> decided_;
  std::vector<Diagnostic> suggestion_diagnostics_;
  std::string dir_;
};

// Owns all sessions. Mutations of one session are serialized by that
// session's lock; different sessions proceed in parallel.
class Service {
 public:
  explicit Service(Config config);
  Service(Config config, Toolkit toolkit);

  // `overlay` may override config keys for this session only; resources are
  // then loaded afresh and any load failure is thrown.
  std::string create_session(const nlohmann::json &overlay = nlohmann::json::object());
  std::shared_ptr<Session> get(const std::string &id) const;  // throws Error("unknown-session")
  std::vector<std::string> session_ids() const;

  std::vector<SpellFlag> spellcheck(std::string_view text) const;
  const Config &config() const { return config_; }
  const Toolkit &toolkit() const { return toolkit_; }

 private:
  std::string fresh_id();
  void load_store();

  Config config_;
  Toolkit toolkit_;
  mutable std::mutex mu_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  uint64_t counter_ = 0;
};

}  // namespace nlplan

#endif  // NLPLAN_SERVICE_H_
