#include "nlplan/pipeline.h"

#include <set>

#include "nlplan/conllu.h"
#include "nlplan/ingestion.h"
#include "nlplan/text_util.h"

namespace nlplan {
using nlohmann::json;

namespace {

std::vector<std::string> lower_words(const SentenceGraph &g) {
  std::vector<std::string> out;
  for (const auto &t : g.tokens) out.push_back(to_lower(t.text));
  return out;
}

// Affordance routing: any pre marker, or a post marker that is not also a
// plain sequence coordinator ("and then" alone is just two events).
bool looks_like_affordance(const std::vector<std::string> &words, const std::vector<SplitPattern> &patterns) {
  for (const auto &p : patterns) {
    auto pre = split_words(p.pre_marker);
    auto post = split_words(p.post_marker);
    bool weak_post = !post.empty() && (post[0] == "and" || post[0] == "then");
    for (size_t i = 0; i < words.size(); ++i) {
      if (phrase_at(words, i, pre)) return true;
      if (!weak_post && phrase_at(words, i, post)) return true;
    }
  }
  return false;
}

std::set<std::string> state_ids(const DomainBundle &b) {
  std::set<std::string> out;
  for (const auto &s : b.states) out.insert(s.id);
  return out;
}

// Coreference candidates: proper names in the submission are animate,
// declared objects otherwise count as things unless typed.
std::vector<Entity> entities_for(const std::vector<SentenceGraph> &graphs, const DomainBundle &bundle) {
  std::vector<Entity> out;
  std::set<std::string> seen;
  for (const auto &g : graphs) {
    for (const auto &t : g.tokens) {
      if (t.pos != "PROPN") continue;
      std::string w = to_lower(t.text);
      if (w.ends_with("'s")) w.resize(w.size() - 2);
      if (!Slug::is_valid(w) || !seen.insert(w).second) continue;
      out.push_back({Slug::parse(w), true});
    }
  }
  for (const auto &o : bundle.objects) {
    if (seen.insert(o.name.str()).second) out.push_back({o.name, o.type.str() != "object"});
  }
  return out;
}

void run_state(const SentenceGraph &g, DomainBundle &b, const Resources &res, SentenceReport &rep) {
  rep.classification = "state";
  for (const auto &clause : simplify(g)) {
    StateKind kind = classify_state_kind(clause, res.rules.fluent_keywords);
    auto triples = extract_triples(clause, kind, res.rules);
    for (auto &id : build_state_decls(triples, kind, b)) {
      if (std::find(rep.states.begin(), rep.states.end(), id) == rep.states.end()) rep.states.push_back(id);
    }
  }
  if (rep.states.empty()) {
    rep.classification = "unmatched";
    rep.diagnostics.push_back({"no-state", rep.text, "no extraction rule matched: " + rep.text});
  }
}

void run_affordance(const SentenceGraph &g, DomainBundle &b, const Resources &res, SentenceReport &rep) {
  rep.classification = "affordance";
  auto split = split_affordance(g, res.patterns.affordance);
  if (!split) throw Error("not-an-affordance", "no affordance marker in: " + rep.text);
  AffordanceOptions opts;
  opts.rules = &res.rules;
  opts.probabilities = res.patterns.probabilities;
  opts.unify.strict = res.config.strict;
  auto r = build_affordance(*split, b, res.matcher(), opts);
  rep.affordance = r.affordance.owner.str() + "." + r.affordance.name.str();
  for (const auto &c : r.affordance.preconditions.clauses) {
    for (const auto &l : c) rep.states.push_back(l.state);
  }
  for (const auto &p : r.affordance.postconditions) rep.states.push_back(p.literal.state);
  rep.diagnostics.insert(rep.diagnostics.end(), r.diagnostics.begin(), r.diagnostics.end());
}

void run_affect(const SentenceGraph &g, DomainBundle &b, const Resources &res, SentenceReport &rep) {
  rep.classification = "affect";
  auto split = split_affect_sentence(g, res.patterns.affect_markers);
  if (!split) throw Error("not-an-affect-rule", "no affect marker in: " + rep.text);
  AffectOptions opts;
  opts.rules = &res.rules;
  opts.lexicon = &res.affect_lexicon;
  opts.unify.strict = res.config.strict;
  auto r = build_affect_rule(*split, b, res.matcher(), opts);
  rep.rule = true;
  for (const auto &c : r.rule.condition.clauses) {
    for (const auto &l : c) rep.states.push_back(l.state);
  }
  rep.diagnostics.insert(rep.diagnostics.end(), r.diagnostics.begin(), r.diagnostics.end());
}

}  // namespace

std::string_view to_string(Category c) {
  switch (c) {
    case Category::kAuto:
      return "auto";
    case Category::kState:
      return "state";
    case Category::kAffordance:
      return "affordance";
    case Category::kAffect:
      return "affect";
  }
  return "auto";
}

Category parse_category(std::string_view s) {
  if (s == "auto" || s.empty()) return Category::kAuto;
  if (s == "state" || s == "states") return Category::kState;
  if (s == "affordance" || s == "affordances") return Category::kAffordance;
  if (s == "affect" || s == "rule" || s == "rules") return Category::kAffect;
  throw Error("bad-category", "category must be auto, state, affordance or affect, not '" + std::string(s) + "'");
}

bool IngestionReport::ok() const {
  return std::all_of(sentences.begin(), sentences.end(), [](const auto &s) { return s.ok; });
}

IngestionReport compile_text(DomainBundle &bundle, std::string_view text, const Resources &res,
                             const SubmitOptions &options) {
  IngestionReport report;
  // Parse everything first; coreference looks across the whole submission.
  std::vector<SentenceReport> reps;
  std::vector<SentenceGraph> graphs;
  std::vector<size_t> graph_of;  // report index -> graph index, or npos
  if (options.conllu && !options.conllu->empty()) {
    graphs = parse_conllu(*options.conllu);
    for (size_t i = 0; i < graphs.size(); ++i) {
      SentenceReport r;
      r.index = static_cast<int>(i) + 1;
      r.text = graphs[i].source;
      reps.push_back(std::move(r));
      graph_of.push_back(i);
    }
    auto sentences = split_sentences(text);
    if (!text.empty() && sentences.size() != graphs.size()) {
      report.diagnostics.push_back({"sidecar-mismatch", "",
                                    "text has " + std::to_string(sentences.size()) + " sentences, sidecar has " +
                                        std::to_string(graphs.size()) + "; using the sidecar"});
    }
  } else {
    for (auto &s : split_sentences(text)) {
      SentenceReport r;
      r.index = static_cast<int>(reps.size()) + 1;
      r.text = s;
      try {
        graphs.push_back(res.parser->parse(s, r.index));
        graph_of.push_back(graphs.size() - 1);
      } catch (const Error &e) {
        r.ok = false;
        r.error_code = e.code();
        r.error = e.what();
        graph_of.push_back(std::string::npos);
      }
      reps.push_back(std::move(r));
    }
  }
  auto coref = resolve_coreferences(graphs, entities_for(graphs, bundle));
  report.diagnostics = coref.diagnostics;

  for (size_t i = 0; i < reps.size(); ++i) {
    SentenceReport &rep = reps[i];
    if (graph_of[i] == std::string::npos) {
      report.sentences.push_back(std::move(rep));
      continue;
    }
    const SentenceGraph &g = coref.graphs[graph_of[i]];
    auto words = lower_words(g);
    Category cat = options.category;
    if (cat == Category::kAuto) {
      if (looks_like_affordance(words, res.patterns.affordance)) cat = Category::kAffordance;
      else if (has_affect_marker(words, res.patterns.affect_markers)) cat = Category::kAffect;
      else cat = Category::kState;
    }
    DomainBundle work = bundle;
    auto before = state_ids(bundle);
    try {
      switch (cat) {
        case Category::kAffordance:
          run_affordance(g, work, res, rep);
          break;
        case Category::kAffect:
          run_affect(g, work, res, rep);
          break;
        default:
          run_state(g, work, res, rep);
          break;
      }
      if (auto bad = validate_bundle(work); !bad.empty()) {
        throw Error("invalid-bundle", bad[0].code + " " + bad[0].subject + ": " + bad[0].message);
      }
      for (const auto &s : work.states) {
        if (!before.count(s.id)) rep.new_states.push_back(s.id);
      }
      bundle = std::move(work);
    } catch (const Error &e) {
      rep.ok = false;
      rep.error_code = e.code();
      rep.error = e.what();
      rep.states.clear();
      rep.affordance.clear();
      rep.rule = false;
    }
    report.sentences.push_back(std::move(rep));
  }
  return report;
}

json diagnostic_to_json(const Diagnostic &d) {
  return {{"code", d.code}, {"subject", d.subject}, {"message", d.message}};
}

json report_to_json(const IngestionReport &report) {
  json sentences = json::array();
  for (const auto &s : report.sentences) {
    json j = {{"index", s.index},
              {"text", s.text},
              {"classification", s.classification},
              {"ok", s.ok},
              {"states", s.states},
              {"new_states", s.new_states},
              {"rule", s.rule}};
    if (!s.affordance.empty()) j["affordance"] = s.affordance;
    if (!s.ok) j["error"] = {{"code", s.error_code}, {"message", s.error}};
    json diags = json::array();
    for (const auto &d : s.diagnostics) diags.push_back(diagnostic_to_json(d));
    j["diagnostics"] = diags;
    sentences.push_back(std::move(j));
  }
  json diags = json::array();
  for (const auto &d : report.diagnostics) diags.push_back(diagnostic_to_json(d));
  return {{"sentences", sentences}, {"diagnostics", diags}, {"ok", report.ok()}};
}

}  // namespace nlplan
