#include "nlplan/eval.h"

#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "nlplan/pipeline.h"

namespace nlplan {
using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string &where, const std::string &what) {
  throw Error("bad-gold", where + ": " + what);
}

Slug slug_field(const json &j, const std::string &where) {
  if (!j.is_string()) bad(where, "expected a string");
  auto s = j.get<std::string>();
  if (!Slug::is_valid(s)) bad(where, "'" + s + "' is not a valid identifier");
  return Slug::parse(s);
}

// "max_has_exam", "not max_has_exam", "max_go=park" or
// {"state", "value", "polarity", "probability"}.
GoldLiteral gold_literal(const json &j, const std::string &where) {
  GoldLiteral g;
  if (j.is_string()) {
    std::string s = j.get<std::string>();
    if (s.starts_with("not ")) {
      g.polarity = false;
      s = s.substr(4);
    }
    if (auto eq = s.find('='); eq != std::string::npos) {
      g.value = slug_field(s.substr(eq + 1), where);
      s = s.substr(0, eq);
    }
    g.state = slug_field(s, where).str();
    return g;
  }
  if (!j.is_object()) bad(where, "expected a literal string or object");
  if (!j.contains("state")) bad(where, "missing 'state'");
  g.state = slug_field(j.at("state"), where + ".state").str();
  if (j.contains("value")) g.value = slug_field(j.at("value"), where + ".value");
  if (j.contains("polarity")) {
    if (!j.at("polarity").is_boolean()) bad(where + ".polarity", "expected true or false");
    g.polarity = j.at("polarity").get<bool>();
  }
  if (j.contains("probability")) {
    if (!j.at("probability").is_number()) bad(where + ".probability", "expected a number");
    g.probability = j.at("probability").get<double>();
    if (!(g.probability > 0.0 && g.probability <= 1.0)) bad(where + ".probability", "must be in (0, 1]");
  }
  return g;
}

std::vector<GoldLiteral> gold_literals(const json &j, const std::string &where) {
  if (!j.is_array()) bad(where, "expected a list");
  std::vector<GoldLiteral> out;
  for (size_t i = 0; i < j.size(); ++i) out.push_back(gold_literal(j[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

const json &need(const json &obj, const char *key, const std::string &where) {
  if (!obj.contains(key)) bad(where, std::string("missing '") + key + "'");
  return obj.at(key);
}

GoldCase gold_case(const json &c, const std::string &where0) {
  if (!c.is_object()) bad(where0, "a case must be an object");
  GoldCase g;
  const json &name = need(c, "name", where0);
  if (!name.is_string()) bad(where0 + ".name", "expected a string");
  g.name = name.get<std::string>();
  const std::string where = where0 + " (" + g.name + ")";
  const json &sents = need(c, "sentences", where);
  if (!sents.is_array() || sents.empty()) bad(where + ".sentences", "expected a non-empty list");
  for (const auto &s : sents) {
    if (!s.is_string()) bad(where + ".sentences", "expected strings");
    g.sentences.push_back(s.get<std::string>());
  }
  if (c.contains("conllu")) g.conllu = c.at("conllu").get<std::string>();
  if (c.contains("expected_states")) {
    const json &st = c.at("expected_states");
    if (!st.is_array()) bad(where + ".expected_states", "expected a list");
    for (size_t i = 0; i < st.size(); ++i) {
      const std::string w = where + ".expected_states[" + std::to_string(i) + "]";
      const json &t = need(st[i], "triple", w);
      if (!t.is_array() || t.size() < 2 || t.size() > 3) bad(w + ".triple", "expected [subject, predicate, complement?]");
      GoldState gs;
      gs.triple.subject = slug_field(t[0], w + ".triple[0]");
      gs.triple.predicate = slug_field(t[1], w + ".triple[1]");
      if (t.size() == 3) gs.triple.complement = slug_field(t[2], w + ".triple[2]");
      std::string kind = st[i].value("kind", "binary");
      if (kind == "fluent") {
        gs.kind = StateKind::kFluent;
        if (gs.triple.complement.empty()) bad(w, "a fluent needs its value as the complement");
      } else if (kind != "binary") {
        bad(w + ".kind", "expected binary or fluent");
      }
      g.expected_states.push_back(std::move(gs));
    }
  }
  if (c.contains("expected_affordances")) {
    const json &as = c.at("expected_affordances");
    if (!as.is_array()) bad(where + ".expected_affordances", "expected a list");
    for (size_t i = 0; i < as.size(); ++i) {
      const std::string w = where + ".expected_affordances[" + std::to_string(i) + "]";
      GoldAffordance ga;
      ga.owner = slug_field(need(as[i], "owner", w), w + ".owner");
      ga.name = slug_field(need(as[i], "name", w), w + ".name");
      if (as[i].contains("pre")) ga.pre = gold_literals(as[i].at("pre"), w + ".pre");
      if (as[i].contains("post")) ga.post = gold_literals(as[i].at("post"), w + ".post");
      g.expected_affordances.push_back(std::move(ga));
    }
  }
  if (c.contains("expected_rules")) {
    const json &rs = c.at("expected_rules");
    if (!rs.is_array()) bad(where + ".expected_rules", "expected a list");
    for (size_t i = 0; i < rs.size(); ++i) {
      const std::string w = where + ".expected_rules[" + std::to_string(i) + "]";
      GoldRule gr;
      std::istringstream target(need(rs[i], "target", w).get<std::string>());
      std::string kind, tname;
      target >> kind >> tname;
      if (kind == "mood") gr.target = AffectTarget::mood();
      else if (kind == "emotion") gr.target = AffectTarget::emotion(slug_field(tname, w + ".target"));
      else if (kind == "motivation") gr.target = AffectTarget::motivation(slug_field(tname, w + ".target"));
      else bad(w + ".target", "expected 'mood', 'emotion NAME' or 'motivation NAME'");
      std::istringstream change(need(rs[i], "change", w).get<std::string>());
      std::string mode;
      double mag = 0;
      if (!(change >> mode >> mag) || (mode != "shift" && mode != "set")) {
        bad(w + ".change", "expected 'shift X' or 'set X'");
      }
      gr.change = {mode == "set" ? AffectChange::Mode::kSet : AffectChange::Mode::kShift, mag};
      gr.when = gold_literals(need(rs[i], "when", w), w + ".when");
      g.expected_rules.push_back(std::move(gr));
    }
  }
  return g;
}

bool close(double a, double b) { return std::fabs(a - b) <= 1e-9; }

std::string show(const GoldLiteral &g) {
  std::string s = (g.polarity ? "" : "not ") + g.state;
  if (g.value) s += "=" + g.value->str();
  if (g.probability < 1.0) s += " p=" + std::to_string(g.probability);
  return s;
}

std::string show(const StateTriple &t) {
  return "(" + t.subject.str() + ", " + t.predicate.str() + (t.complement.empty() ? "" : ", " + t.complement.str()) + ")";
}

bool literal_matches(const Literal &l, const GoldLiteral &g) {
  return l.state == g.state && l.value == g.value && l.polarity == g.polarity;
}

}  // namespace

std::vector<GoldCase> parse_gold(std::string_view text, const std::string &origin) {
  if (text.find_first_not_of(" \t\r\n") == std::string_view::npos) return {};
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception &e) {
    throw Error("bad-gold", origin + ": " + e.what());
  }
  const json *cases = &doc;
  if (doc.is_object()) {
    if (!doc.contains("cases")) bad(origin, "missing 'cases'");
    cases = &doc.at("cases");
  }
  if (!cases->is_array()) bad(origin, "'cases' must be a list");
  std::vector<GoldCase> out;
  std::set<std::string> names;
  for (size_t i = 0; i < cases->size(); ++i) {
    out.push_back(gold_case((*cases)[i], origin + ": case " + std::to_string(i + 1)));
    if (!names.insert(out.back().name).second) bad(origin, "duplicate case name '" + out.back().name + "'");
  }
  return out;
}

std::vector<GoldCase> load_gold(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw Error("missing-resource", "cannot open gold corpus '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_gold(buf.str(), path);
}

EvalCounts &EvalCounts::operator+=(const EvalCounts &o) {
  gold_states += o.gold_states;
  predicted_states += o.predicted_states;
  matched_states += o.matched_states;
  gold_conditions += o.gold_conditions;
  correct_conditions += o.correct_conditions;
  gold_rules += o.gold_rules;
  correct_rules += o.correct_rules;
  return *this;
}

double ratio(int correct, int total) {
  return total == 0 ? 1.0 : static_cast<double>(correct) / static_cast<double>(total);
}

EvalMetrics metrics_from(const EvalCounts &c) {
  return {ratio(c.matched_states, c.predicted_states), ratio(c.matched_states, c.gold_states),
          ratio(c.correct_conditions, c.gold_conditions), ratio(c.correct_rules, c.gold_rules)};
}

EvalReport score(const std::vector<GoldCase> &cases, const Resources &resources) {
  auto t0 = std::chrono::steady_clock::now();
  EvalReport report;
  for (const auto &gc : cases) {
    CaseResult cr;
    cr.name = gc.name;
    DomainBundle b = resources.empty_bundle();
    std::string text;
    for (const auto &s : gc.sentences) text += s + "\n";
    SubmitOptions opt;
    opt.conllu = gc.conllu;
    auto rep = compile_text(b, text, resources, opt);
    for (const auto &s : rep.sentences) {
      if (!s.ok) cr.diffs.push_back("sentence " + std::to_string(s.index) + " failed: " + s.error);
    }

    // states
    std::set<std::pair<StateTriple, StateKind>> predicted;
    for (const auto &s : b.states) {
      if (s.kind == StateKind::kBinary) {
        predicted.insert({s.triple, s.kind});
      } else {
        for (const auto &v : s.domain) predicted.insert({{s.triple.subject, s.triple.predicate, v}, s.kind});
      }
    }
    std::set<std::pair<StateTriple, StateKind>> gold;
    for (const auto &g : gc.expected_states) gold.insert({g.triple, g.kind});
    cr.counts.gold_states = static_cast<int>(gold.size());
    cr.counts.predicted_states = static_cast<int>(predicted.size());
    for (const auto &g : gold) {
      if (predicted.count(g)) ++cr.counts.matched_states;
      else cr.diffs.push_back("missing state " + show(g.first) + " [" + std::string(to_string(g.second)) + "]");
    }
    for (const auto &p : predicted) {
      if (!gold.count(p)) cr.extra_states.push_back(show(p.first));
    }

    // affordance conditions
    for (const auto &ga : gc.expected_affordances) {
      const Affordance *a = b.find_affordance(ga.owner, ga.name);
      int total = static_cast<int>(ga.pre.size() + ga.post.size());
      cr.counts.gold_conditions += total;
      if (!a) {
        cr.diffs.push_back("missing affordance " + ga.owner.str() + "." + ga.name.str());
        continue;
      }
      for (const auto &g : ga.pre) {
        bool ok = false;
        for (const auto &c : a->preconditions.clauses) {
          for (const auto &l : c) ok = ok || literal_matches(l, g);
        }
        if (ok) ++cr.counts.correct_conditions;
        else cr.diffs.push_back(ga.name.str() + ": precondition " + show(g) + " not found");
      }
      for (const auto &g : ga.post) {
        bool ok = false;
        for (const auto &p : a->postconditions) ok = ok || (literal_matches(p.literal, g) && close(p.probability, g.probability));
        if (ok) ++cr.counts.correct_conditions;
        else cr.diffs.push_back(ga.name.str() + ": postcondition " + show(g) + " not found");
      }
    }

    // affect rules
    for (const auto &gr : gc.expected_rules) {
      ++cr.counts.gold_rules;
      bool ok = false;
      for (const auto &r : b.affect_rules) {
        if (!(r.target == gr.target) || r.change.mode != gr.change.mode ||
            !close(r.change.magnitude, gr.change.magnitude) || r.condition.clauses.size() != gr.when.size()) {
          continue;
        }
        bool all = true;
        for (const auto &g : gr.when) {
          bool found = false;
          for (const auto &c : r.condition.clauses) found = found || (c.size() == 1 && literal_matches(c[0], g));
          all = all && found;
        }
        ok = ok || all;
      }
      if (ok) ++cr.counts.correct_rules;
      else cr.diffs.push_back("rule on " + gr.target.label() + " not found");
    }
    report.totals += cr.counts;
    report.extra_states += static_cast<int>(cr.extra_states.size());
    report.cases.push_back(std::move(cr));
  }
  report.metrics = metrics_from(report.totals);
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return report;
}

json eval_report_to_json(const EvalReport &r) {
  json cases = json::array();
  for (const auto &c : r.cases) {
    cases.push_back({{"name", c.name},
                     {"states", {{"gold", c.counts.gold_states}, {"predicted", c.counts.predicted_states}, {"matched", c.counts.matched_states}}},
                     {"conditions", {{"gold", c.counts.gold_conditions}, {"correct", c.counts.correct_conditions}}},
                     {"rules", {{"gold", c.counts.gold_rules}, {"correct", c.counts.correct_rules}}},
                     {"extra_states", c.extra_states},
                     {"diffs", c.diffs}});
  }
  return {{"cases", cases},
          {"state_precision", r.metrics.state_precision},
          {"state_recall", r.metrics.state_recall},
          {"condition_accuracy", r.metrics.condition_accuracy},
          {"rule_accuracy", r.metrics.rule_accuracy},
          {"extra_states", r.extra_states},
          {"gold_conditions", r.totals.gold_conditions},
          {"correct_conditions", r.totals.correct_conditions},
          {"seconds", r.seconds}};
}

}  // namespace nlplan
