#include "nlplan/codegen.h"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "nlplan/sexpr.h"

namespace nlplan {
namespace {

void require_valid(const DomainBundle &bundle) {
  auto diags = validate_bundle(bundle);
  if (diags.empty()) return;
  std::string msg = "bundle fails validation:";
  for (const auto &d : diags) msg += "\n  " + d.code + " " + d.subject + ": " + d.message;
  throw Error("invalid-bundle", msg);
}

// ---- s-expression output ---------------------------------------------------

std::string literal_core(const Literal &l) {
  std::string s = "(" + l.state;
  if (l.value) s += " " + l.value->str();
  return s + ")";
}

std::string literal_sexpr(const Literal &l) {
  return l.polarity ? literal_core(l) : "(not " + literal_core(l) + ")";
}

std::string clause_sexpr(const Clause &c) {
  if (c.size() == 1) return literal_sexpr(c[0]);
  std::string s = "(or";
  for (const auto &l : c) s += " " + literal_sexpr(l);
  return s + ")";
}

std::string post_sexpr(const PostCondition &p) {
  std::string inner = p.literal.state;
  if (p.literal.value) inner += " " + p.literal.value->str();
  inner += p.literal.polarity ? " #t" : " #f";
  if (p.deterministic()) return "(" + inner + " " + format_decimal(p.probability) + ")";
  return "(probabilistic " + format_decimal(p.probability) + " (" + inner + "))";
}

std::string target_sexpr(const AffectTarget &t) {
  switch (t.kind) {
    case AffectTarget::Kind::kMood:
      return "(mood)";
    case AffectTarget::Kind::kEmotion:
      return "(emotion " + t.name.str() + ")";
    case AffectTarget::Kind::kMotivation:
      return "(motivation " + t.name.str() + ")";
  }
  return "";
}

std::string triple_sexpr(const StateTriple &t, bool with_complement) {
  std::string s = "(" + t.subject.str() + " " + t.predicate.str();
  if (with_complement && !t.complement.empty()) s += " " + t.complement.str();
  return s + ")";
}

// Closes the innermost open list of `out`: appends ")" to the last line.
void close(std::vector<std::string> &lines) { lines.back() += ")"; }

// ---- s-expression input ----------------------------------------------------

[[noreturn]] void bad(const SExpr &at, const std::string &what) {
  throw Error("bad-sexpr", what + " at " + at.where());
}

const SExpr &expect_list(const SExpr &e, const std::string &what) {
  if (!e.is_list) bad(e, "expected " + what);
  return e;
}

const std::string &expect_atom(const SExpr &e, const std::string &what) {
  if (e.is_list) bad(e, "expected " + what);
  return e.atom;
}

Slug slug_atom(const SExpr &e, const std::string &what) {
  const auto &a = expect_atom(e, what);
  if (!Slug::is_valid(a)) bad(e, "'" + a + "' is not a valid " + what);
  return Slug::parse(a);
}

bool bool_atom(const SExpr &e) {
  if (e.is_atom("#t")) return true;
  if (e.is_atom("#f")) return false;
  bad(e, "expected #t or #f");
}

// Keyword arguments of a form, starting at `from`.
std::map<std::string, const SExpr *> keywords(const SExpr &form, size_t from) {
  std::map<std::string, const SExpr *> out;
  for (size_t i = from; i < form.items.size(); i += 2) {
    const auto &k = form.items[i];
    if (k.is_list || k.atom.empty() || k.atom[0] != ':') bad(k, "expected a keyword");
    if (i + 1 >= form.items.size()) bad(k, "keyword " + k.atom + " has no value");
    if (!out.emplace(k.atom, &form.items[i + 1]).second) bad(k, "repeated keyword " + k.atom);
  }
  return out;
}

const SExpr &keyword(const std::map<std::string, const SExpr *> &kw, const SExpr &form, const std::string &key) {
  auto it = kw.find(key);
  if (it == kw.end()) bad(form, "missing " + key);
  return *it->second;
}

Literal parse_literal(const SExpr &e) {
  expect_list(e, "a literal");
  if (!e.items.empty() && e.items[0].is_atom("not")) {
    if (e.items.size() != 2) bad(e, "(not ...) takes one literal");
    Literal l = parse_literal(e.items[1]);
    if (!l.polarity) bad(e, "double negation");
    l.polarity = false;
    return l;
  }
  if (e.items.empty() || e.items.size() > 2) bad(e, "a literal is (state) or (state value)");
  Literal l;
  l.state = expect_atom(e.items[0], "a state identifier");
  if (e.items.size() == 2) l.value = slug_atom(e.items[1], "fluent value");
  return l;
}

Clause parse_clause(const SExpr &e) {
  expect_list(e, "a clause");
  if (!e.items.empty() && e.items[0].is_atom("or")) {
    Clause c;
    for (size_t i = 1; i < e.items.size(); ++i) c.push_back(parse_literal(e.items[i]));
    if (c.size() < 2) bad(e, "(or ...) needs two or more literals");
    return c;
  }
  return {parse_literal(e)};
}

PostCondition parse_post(const SExpr &e) {
  expect_list(e, "a postcondition");
  PostCondition p;
  const SExpr *body = &e;
  bool wrapped = !e.items.empty() && e.items[0].is_atom("probabilistic");
  if (wrapped) {
    if (e.items.size() != 3) bad(e, "(probabilistic p (...)) expected");
    p.probability = parse_decimal(e.items[1]);
    body = &expect_list(e.items[2], "a probabilistic effect");
  }
  const auto &items = body->items;
  size_t n = items.size();
  size_t expect_min = wrapped ? 2 : 3;
  if (n < expect_min || n > expect_min + 1) bad(*body, "malformed postcondition");
  p.literal.state = expect_atom(items[0], "a state identifier");
  size_t pol = 1;
  if (n == expect_min + 1) {
    p.literal.value = slug_atom(items[1], "fluent value");
    pol = 2;
  }
  p.literal.polarity = bool_atom(items[pol]);
  if (!wrapped) p.probability = parse_decimal(items[pol + 1]);
  return p;
}

void parse_object(const SExpr &form, DomainBundle &out) {
  if (form.items.size() < 2) bad(form, "define-smart-object needs a name");
  SmartObject obj;
  obj.name = slug_atom(form.items[1], "object name");
  bool have_type = false;
  for (size_t i = 2; i < form.items.size(); ++i) {
    const auto &sec = expect_list(form.items[i], "a section");
    if (sec.items.empty()) bad(sec, "empty section");
    const auto &head = expect_atom(sec.items[0], "a section name");
    if (head == "type") {
      if (sec.items.size() != 2) bad(sec, "(type t) expected");
      obj.type = slug_atom(sec.items[1], "type");
      have_type = true;
    } else if (head == "states" || head == "fluents") {
      bool fluent = head == "fluents";
      for (size_t k = 1; k < sec.items.size(); ++k) {
        const auto &d = expect_list(sec.items[k], "a state declaration");
        if (d.items.empty()) bad(d, "empty state declaration");
        StateDecl decl;
        decl.id = expect_atom(d.items[0], "a state identifier");
        decl.owner = obj.name;
        decl.kind = fluent ? StateKind::kFluent : StateKind::kBinary;
        auto kw = keywords(d, 1);
        const auto &tr = expect_list(keyword(kw, d, ":triple"), "a triple");
        size_t want_max = fluent ? 2 : 3;
        if (tr.items.size() < 2 || tr.items.size() > want_max) bad(tr, "malformed triple");
        decl.triple.subject = slug_atom(tr.items[0], "subject");
        decl.triple.predicate = slug_atom(tr.items[1], "predicate");
        if (tr.items.size() == 3) decl.triple.complement = slug_atom(tr.items[2], "complement");
        if (fluent) {
          const auto &vals = expect_list(keyword(kw, d, ":values"), "a value list");
          for (const auto &v : vals.items) decl.domain.push_back(slug_atom(v, "fluent value"));
        } else if (kw.count(":values")) {
          bad(d, "binary states take no :values");
        }
        for (const auto &[k, _] : kw) {
          if (k != ":triple" && k != ":values") bad(d, "unknown keyword " + k);
        }
        out.states.push_back(std::move(decl));
      }
    } else if (head == "affordances") {
      for (size_t k = 1; k < sec.items.size(); ++k) {
        const auto &d = expect_list(sec.items[k], "an affordance");
        if (d.items.empty()) bad(d, "empty affordance");
        Affordance a;
        a.name = slug_atom(d.items[0], "affordance name");
        a.owner = obj.name;
        auto kw = keywords(d, 1);
        for (const auto &c : expect_list(keyword(kw, d, ":pre"), "a precondition list").items) {
          a.preconditions.clauses.push_back(parse_clause(c));
        }
        for (const auto &p : expect_list(keyword(kw, d, ":post"), "a postcondition list").items) {
          a.postconditions.push_back(parse_post(p));
        }
        for (const auto &[key, _] : kw) {
          if (key != ":pre" && key != ":post") bad(d, "unknown keyword " + key);
        }
        out.affordances.push_back(std::move(a));
      }
    } else {
      bad(sec, "unknown section '" + head + "'");
    }
  }
  if (!have_type) bad(form, "object '" + obj.name.str() + "' has no (type ...)");
  out.objects.push_back(std::move(obj));
}

void parse_rule(const SExpr &form, DomainBundle &out) {
  auto kw = keywords(form, 1);
  AffectRule r;
  const auto &t = expect_list(keyword(kw, form, ":target"), "a target");
  if (t.items.empty()) bad(t, "empty target");
  const auto &kind = expect_atom(t.items[0], "a target kind");
  if (kind == "mood") {
    if (t.items.size() != 1) bad(t, "(mood) takes no name");
    r.target = AffectTarget::mood();
  } else if (kind == "emotion" || kind == "motivation") {
    if (t.items.size() != 2) bad(t, "target needs a name");
    Slug name = slug_atom(t.items[1], "target name");
    r.target = kind == "emotion" ? AffectTarget::emotion(name) : AffectTarget::motivation(name);
  } else {
    bad(t, "unknown target kind '" + kind + "'");
  }
  const auto &c = expect_list(keyword(kw, form, ":change"), "a change");
  if (c.items.size() != 2) bad(c, "(shift x) or (set x) expected");
  if (c.items[0].is_atom("shift")) {
    r.change.mode = AffectChange::Mode::kShift;
  } else if (c.items[0].is_atom("set")) {
    r.change.mode = AffectChange::Mode::kSet;
  } else {
    bad(c.items[0], "unknown change mode");
  }
  r.change.magnitude = parse_decimal(c.items[1]);
  const auto &w = expect_list(keyword(kw, form, ":when"), "a condition");
  if (w.items.empty() || !w.items[0].is_atom("and")) bad(w, "(and ...) expected");
  for (size_t i = 1; i < w.items.size(); ++i) r.condition.clauses.push_back(parse_clause(w.items[i]));
  for (const auto &[key, _] : kw) {
    if (key != ":target" && key != ":change" && key != ":when") bad(form, "unknown keyword " + key);
  }
  out.affect_rules.push_back(std::move(r));
}

// ---- PDDL ------------------------------------------------------------------

std::string pddl_literal(const Literal &l) {
  std::string atom = "(" + l.state + (l.value ? " " + l.value->str() : "") + ")";
  return l.polarity ? atom : "(not " + atom + ")";
}

std::string pddl_conjunction(const std::vector<std::string> &parts) {
  if (parts.size() == 1) return parts[0];
  std::string s = "(and";
  for (const auto &p : parts) s += " " + p;
  return s + ")";
}

// Atoms a postcondition sets: a fluent value also clears the others.
std::vector<std::string> pddl_effect_atoms(const PostCondition &p, const DomainBundle &b) {
  std::vector<std::string> out = {pddl_literal(p.literal)};
  if (p.literal.value && p.literal.polarity) {
    if (const StateDecl *d = b.find_state(p.literal.state)) {
      for (const auto &v : d->domain) {
        if (v != *p.literal.value) out.push_back("(not (" + p.literal.state + " " + v.str() + "))");
      }
    }
  }
  return out;
}

}  // namespace

DomainBundle canonical_order(const DomainBundle &bundle) {
  DomainBundle out = bundle;
  out.states.clear();
  out.affordances.clear();
  for (const auto &o : bundle.objects) {
    for (StateKind kind : {StateKind::kBinary, StateKind::kFluent}) {
      for (const auto &s : bundle.states) {
        if (s.owner == o.name && s.kind == kind) out.states.push_back(s);
      }
    }
    for (const auto &a : bundle.affordances) {
      if (a.owner == o.name) out.affordances.push_back(a);
    }
  }
  // Anything owned by an undeclared object keeps its place at the end.
  for (const auto &s : bundle.states) {
    if (!bundle.find_object(s.owner)) out.states.push_back(s);
  }
  for (const auto &a : bundle.affordances) {
    if (!bundle.find_object(a.owner)) out.affordances.push_back(a);
  }
  return out;
}

std::string emit_sexpr(const DomainBundle &bundle) {
  require_valid(bundle);
  std::ostringstream os;
  os << kSexprHeader << "\n";
  for (const auto &o : bundle.objects) {
    std::vector<std::string> lines;
    lines.push_back("(define-smart-object " + o.name.str());
    lines.push_back("  (type " + o.type.str() + ")");
    for (StateKind kind : {StateKind::kBinary, StateKind::kFluent}) {
      bool fluent = kind == StateKind::kFluent;
      lines.push_back(fluent ? "  (fluents" : "  (states");
      for (const auto &s : bundle.states) {
        if (s.owner != o.name || s.kind != kind) continue;
        std::string line = "    (" + s.id + " :triple " + triple_sexpr(s.triple, !fluent);
        if (fluent) {
          line += " :values (";
          for (size_t i = 0; i < s.domain.size(); ++i) line += (i ? " " : "") + s.domain[i].str();
          line += ")";
        }
        lines.push_back(line + ")");
      }
      close(lines);
    }
    lines.push_back("  (affordances");
    for (const auto &a : bundle.affordances) {
      if (a.owner != o.name) continue;
      lines.push_back("    (" + a.name.str());
      std::string pre = "      :pre (";
      for (size_t i = 0; i < a.preconditions.clauses.size(); ++i) {
        pre += (i ? " " : "") + clause_sexpr(a.preconditions.clauses[i]);
      }
      lines.push_back(pre + ")");
      std::string post = "      :post (";
      for (size_t i = 0; i < a.postconditions.size(); ++i) {
        post += (i ? " " : "") + post_sexpr(a.postconditions[i]);
      }
      lines.push_back(post + "))");
    }
    close(lines);
    close(lines);
    os << "\n";
    for (const auto &l : lines) os << l << "\n";
  }
  for (const auto &r : bundle.affect_rules) {
    std::string when = "(and";
    for (const auto &c : r.condition.clauses) when += " " + clause_sexpr(c);
    when += ")";
    os << "\n(rule :target " << target_sexpr(r.target) << " :change ("
       << (r.change.mode == AffectChange::Mode::kSet ? "set " : "shift ")
       << format_decimal(r.change.magnitude) << ") :when " << when << ")\n";
  }
  if (!bundle.emotion_catalog.empty()) {
    os << "\n(emotion-catalog";
    for (const auto &e : bundle.emotion_catalog) {
      os << "\n  (" << e.name.str();
      for (double v : e.pad) os << " " << format_decimal(v);
      os << ")";
    }
    os << ")\n";
  }
  if (!bundle.motivation_catalog.factors.empty()) {
    os << "\n(motivation-catalog";
    for (const auto &m : bundle.motivation_catalog.factors) os << "\n  " << m.str();
    os << ")\n";
  }
  return os.str();
}

DomainBundle parse_sexpr(std::string_view text) {
  DomainBundle out;
  bool saw_emotions = false;
  bool saw_motivations = false;
  for (const auto &form : read_sexprs(text)) {
    if (!form.is_list || form.items.empty()) bad(form, "expected a top-level form");
    const auto &head = expect_atom(form.items[0], "a form name");
    if (head == "define-smart-object") {
      parse_object(form, out);
    } else if (head == "rule") {
      parse_rule(form, out);
    } else if (head == "emotion-catalog") {
      if (saw_emotions) bad(form, "second emotion-catalog");
      saw_emotions = true;
      for (size_t i = 1; i < form.items.size(); ++i) {
        const auto &e = expect_list(form.items[i], "an emotion");
        if (e.items.size() != 4) bad(e, "(name p a d) expected");
        EmotionSpec spec;
        spec.name = slug_atom(e.items[0], "emotion name");
        for (int k = 0; k < 3; ++k) spec.pad[k] = parse_decimal(e.items[k + 1]);
        out.emotion_catalog.push_back(std::move(spec));
      }
    } else if (head == "motivation-catalog") {
      if (saw_motivations) bad(form, "second motivation-catalog");
      saw_motivations = true;
      for (size_t i = 1; i < form.items.size(); ++i) {
        out.motivation_catalog.factors.push_back(slug_atom(form.items[i], "motivation name"));
      }
    } else {
      bad(form, "unknown form '" + head + "'");
    }
  }
  return out;
}

std::string emit_pddl(const DomainBundle &bundle, std::string_view domain_name) {
  require_valid(bundle);
  bool negative = false;
  bool disjunctive = false;
  bool probabilistic = false;
  for (const auto &a : bundle.affordances) {
    for (const auto &c : a.preconditions.clauses) {
      disjunctive = disjunctive || c.size() > 1;
      for (const auto &l : c) negative = negative || !l.polarity;
    }
    for (const auto &p : a.postconditions) probabilistic = probabilistic || !p.deterministic();
  }
  std::vector<std::string> constants;
  for (const auto &s : bundle.states) {
    for (const auto &v : s.domain) {
      if (std::find(constants.begin(), constants.end(), v.str()) == constants.end()) constants.push_back(v.str());
    }
  }
  std::ostringstream os;
  os << ";; nlplan domain (PDDL)\n";
  os << "(define (domain " << domain_name << ")\n";
  os << "  (:requirements :strips :typing";
  if (negative) os << " :negative-preconditions";
  if (disjunctive) os << " :disjunctive-preconditions";
  if (probabilistic) os << " :probabilistic-effects";
  os << ")\n";
  os << "  (:types value)\n";
  if (!constants.empty()) {
    os << "  (:constants";
    for (const auto &c : constants) os << " " << c;
    os << " - value)\n";
  }
  os << "  (:predicates";
  for (const auto &s : bundle.states) {
    os << "\n    (" << s.id << (s.kind == StateKind::kFluent ? " ?v - value" : "") << ")";
  }
  os << ")\n";
  std::map<std::string, int> name_count;
  for (const auto &a : bundle.affordances) ++name_count[a.name.str()];
  for (const auto &a : bundle.affordances) {
    std::string name = a.name.str();
    if (name_count[name] > 1) name = a.owner.str() + "_" + name;
    os << "  (:action " << name;
    if (!a.preconditions.empty()) {
      std::vector<std::string> parts;
      for (const auto &c : a.preconditions.clauses) {
        if (c.size() == 1) {
          parts.push_back(pddl_literal(c[0]));
        } else {
          std::string s = "(or";
          for (const auto &l : c) s += " " + pddl_literal(l);
          parts.push_back(s + ")");
        }
      }
      os << " :precondition " << pddl_conjunction(parts);
    }
    if (!a.postconditions.empty()) {
      std::vector<std::string> parts;
      for (const auto &p : a.postconditions) {
        auto atoms = pddl_effect_atoms(p, bundle);
        if (p.deterministic()) {
          parts.insert(parts.end(), atoms.begin(), atoms.end());
        } else {
          parts.push_back("(probabilistic " + format_decimal(p.probability) + " " + pddl_conjunction(atoms) + ")");
        }
      }
      os << " :effect " << pddl_conjunction(parts);
    }
    os << ")\n";
  }
  int n = 0;
  for (const auto &r : bundle.affect_rules) {
    std::string when = "(and";
    for (const auto &c : r.condition.clauses) when += " " + clause_sexpr(c);
    os << "  ;; rule " << ++n << ": " << r.target.label() << " "
       << (r.change.mode == AffectChange::Mode::kSet ? "set " : "shift ") << format_decimal(r.change.magnitude)
       << "\n  ;;   when " << when << ")\n";
  }
  os << ")\n";
  return os.str();
}

std::vector<Diagnostic> check_pddl(std::string_view text) {
  std::vector<Diagnostic> out;
  std::vector<SExpr> forms;
  try {
    forms = read_sexprs(text);
  } catch (const Error &e) {
    return {{"unbalanced", "", e.what()}};
  }
  if (forms.size() != 1 || !forms[0].is_list || forms[0].items.size() < 2 || !forms[0].items[0].is_atom("define")) {
    return {{"no-domain", "", "expected exactly one (define (domain ...) ...) form"}};
  }
  const SExpr &def = forms[0];
  const SExpr &dname = def.items[1];
  if (!dname.is_list || dname.items.size() != 2 || !dname.items[0].is_atom("domain")) {
    out.push_back({"no-domain", "", "missing (domain name) at " + dname.where()});
  }
  std::map<std::string, size_t> predicates;
  std::set<std::string> types = {"object"};
  std::set<std::string> constants;
  const SExpr *actions_start = nullptr;
  std::vector<const SExpr *> actions;
  for (size_t i = 2; i < def.items.size(); ++i) {
    const SExpr &sec = def.items[i];
    if (!sec.is_list || sec.items.empty() || sec.items[0].is_list) {
      out.push_back({"bad-section", "", "unexpected element at " + sec.where()});
      continue;
    }
    const std::string &head = sec.items[0].atom;
    if (head == ":requirements") {
      continue;
    } else if (head == ":types") {
      for (size_t k = 1; k < sec.items.size(); ++k) {
        if (!sec.items[k].is_list && sec.items[k].atom != "-") types.insert(sec.items[k].atom);
      }
    } else if (head == ":constants") {
      for (size_t k = 1; k < sec.items.size(); ++k) {
        const auto &a = sec.items[k].atom;
        if (a == "-") {
          if (k + 1 >= sec.items.size() || !types.count(sec.items[k + 1].atom)) {
            out.push_back({"untyped", "", "constant type missing or undeclared at " + sec.items[k].where()});
          }
          ++k;
        } else {
          constants.insert(a);
        }
      }
    } else if (head == ":predicates") {
      for (size_t k = 1; k < sec.items.size(); ++k) {
        const auto &p = sec.items[k];
        if (!p.is_list || p.items.empty()) {
          out.push_back({"bad-predicate", "", "malformed predicate at " + p.where()});
          continue;
        }
        size_t arity = 0;
        for (size_t j = 1; j < p.items.size(); ++j) {
          const auto &a = p.items[j].atom;
          if (!a.empty() && a[0] == '?') {
            ++arity;
            if (j + 2 >= p.items.size() + 0 || !p.items[j + 1].is_atom("-")) {
              out.push_back({"untyped", p.items[0].atom, "parameter " + a + " has no type at " + p.items[j].where()});
            }
          } else if (a == "-") {
            ++j;
            if (j >= p.items.size() || !types.count(p.items[j].atom)) {
              out.push_back({"untyped", p.items[0].atom, "unknown type at " + p.where()});
            }
          }
        }
        predicates[p.items[0].atom] = arity;
      }
    } else if (head == ":action") {
      if (!actions_start) actions_start = &sec;
      actions.push_back(&sec);
    } else {
      out.push_back({"bad-section", head, "unknown section at " + sec.where()});
    }
  }
  for (const SExpr *act : actions) {
    const std::string name = act->items.size() > 1 ? act->items[1].atom : "";
    std::set<std::string> params;
    auto kw = std::map<std::string, const SExpr *>{};
    for (size_t k = 2; k + 1 < act->items.size(); k += 2) kw[act->items[k].atom] = &act->items[k + 1];
    if (auto it = kw.find(":parameters"); it != kw.end()) {
      const auto &ps = it->second->items;
      for (size_t j = 0; j < ps.size(); ++j) {
        if (!ps[j].atom.empty() && ps[j].atom[0] == '?') {
          params.insert(ps[j].atom);
          if (j + 2 >= ps.size() + 1 || !ps[j + 1].is_atom("-")) {
            out.push_back({"untyped", name, "parameter " + ps[j].atom + " has no type"});
          }
        }
      }
    }
    std::function<void(const SExpr &)> walk = [&](const SExpr &e) {
      if (!e.is_list || e.items.empty()) {
        out.push_back({"bad-formula", name, "expected a formula at " + e.where()});
        return;
      }
      const std::string &op = e.items[0].atom;
      if (op == "and" || op == "or") {
        for (size_t k = 1; k < e.items.size(); ++k) walk(e.items[k]);
      } else if (op == "not") {
        if (e.items.size() != 2) out.push_back({"bad-formula", name, "(not x) takes one argument at " + e.where()});
        else walk(e.items[1]);
      } else if (op == "probabilistic") {
        for (size_t k = 1; k + 1 < e.items.size(); k += 2) {
          double p = -1;
          try {
            p = parse_decimal(e.items[k]);
          } catch (const Error &) {
          }
          if (p < 0 || p > 1) out.push_back({"bad-probability", name, "probability outside [0, 1] at " + e.items[k].where()});
          walk(e.items[k + 1]);
        }
      } else {
        auto it = predicates.find(op);
        if (it == predicates.end()) {
          out.push_back({"undeclared-predicate", op, "used in action " + name + " at " + e.where()});
          return;
        }
        if (it->second != e.items.size() - 1) {
          out.push_back({"arity", op, "wrong number of arguments at " + e.where()});
        }
        for (size_t k = 1; k < e.items.size(); ++k) {
          const auto &arg = e.items[k].atom;
          if (!arg.empty() && arg[0] == '?' ? !params.count(arg) : !constants.count(arg)) {
            out.push_back({"undeclared-term", arg, "in action " + name + " at " + e.items[k].where()});
          }
        }
      }
    };
    if (auto it = kw.find(":precondition"); it != kw.end()) walk(*it->second);
    if (auto it = kw.find(":effect"); it != kw.end()) walk(*it->second);
  }
  return out;
}

}  // namespace nlplan
