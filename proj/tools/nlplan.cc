// nlplan command line: compile, serve, suggest, eval.
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "nlplan/service.h"  // before httplib (Eigen vs resolv.h)
#include "nlplan/codegen.h"
#include "nlplan/bundle_io.h"
#include "nlplan/eval.h"
#include "nlplan/http_api.h"
#include "nlplan/pipeline.h"
#include "nlplan/sexpr.h"

#include <CLI11.hpp>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace nlplan;

namespace {

std::string slurp(const std::string &path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("io", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("io", "cannot write " + path.string());
  out << text;
}

struct Common {
  std::string config_path;
  std::string embeddings;
  std::string patterns;
  std::string offline_conceptnet;
  std::optional<double> threshold;
  bool strict = false;

  Config build() const {
    Config c = load_config(config_path);
    if (!embeddings.empty()) c.embeddings = fs::absolute(embeddings).string();
    if (!patterns.empty()) c.patterns = fs::absolute(patterns).string();
    if (!offline_conceptnet.empty()) {
      c.conceptnet_mode = ConceptNetMode::kOffline;
      c.conceptnet_fixture = fs::absolute(offline_conceptnet).string();
    }
    if (threshold) c.match_threshold = *threshold;
    if (strict) c.strict = true;
    return c;
  }
};

void print_diagnostics(const json &report) {
  for (const auto &d : report.value("diagnostics", json::array())) {
    std::cerr << "note: " << d.value("code", "") << ": " << d.value("message", "") << "\n";
  }
  for (const auto &s : report.value("sentences", json::array())) {
    if (!s.value("ok", true)) {
      std::cerr << "error: sentence " << s.value("index", 0) << ": " << s.value("error_code", "") << ": "
                << s.value("error", "") << "\n";
    }
    for (const auto &d : s.value("diagnostics", json::array())) {
      std::cerr << "note: sentence " << s.value("index", 0) << ": " << d.value("code", "") << ": "
                << d.value("message", "") << "\n";
    }
  }
}

struct CompileArgs {
  std::string input;
  std::string conllu;
  std::string category = "auto";
  std::string target = "sexpr";
  std::string out_dir;
  std::vector<std::string> objects;  // name:type
};

// Runs the input through a throwaway session; returns it for further use.
std::unique_ptr<Session> run_input(const Config &config, const CompileArgs &a, json &report) {
  auto session = std::make_unique<Session>("cli", make_toolkit(config), json::object());
  for (const auto &o : a.objects) {
    auto colon = o.find(':');
    if (colon == std::string::npos) throw Error("bad-object", "expected name:type, got " + o);
    session->declare_object(o.substr(0, colon), o.substr(colon + 1));
  }
  SubmitOptions opts;
  opts.category = parse_category(a.category);
  if (!a.conllu.empty()) opts.conllu = slurp(a.conllu);
  report = session->submit_text(slurp(a.input), opts);
  print_diagnostics(report.value("report", report));
  return session;
}

bool report_ok(const json &result) {
  const json &r = result.value("report", result);
  for (const auto &s : r.value("sentences", json::array())) {
    if (!s.value("ok", true)) return false;
  }
  return true;
}

int do_compile(const Config &config, const CompileArgs &a) {
  json result;
  auto session = run_input(config, a, result);
  if (a.out_dir.empty()) {
    std::cout << session->code(a.target);
  } else {
    fs::create_directories(a.out_dir);
    fs::path dir(a.out_dir);
    spit(dir / "domain.sexpr", session->code("sexpr"));
    spit(dir / "domain.pddl", session->code("pddl"));
    spit(dir / "bundle.json", write_bundle(session->bundle()));
    spit(dir / "report.json", result.value("report", result).dump(2) + "\n");
    std::cerr << "wrote " << (dir / "domain.sexpr").string() << ", domain.pddl, bundle.json, report.json\n";
  }
  return report_ok(result) || !config.strict ? 0 : 1;
}

int do_suggest(const Config &config, const CompileArgs &a, bool as_json) {
  json result;
  auto session = run_input(config, a, result);
  auto pending = session->pending();
  if (as_json) {
    json arr = json::array();
    for (const auto &s : pending) arr.push_back(suggestion_to_json(s));
    std::cout << arr.dump(2) << "\n";
    return 0;
  }
  for (const auto &s : pending) {
    std::cout << s.id << "\t" << to_string(s.kind) << "\t" << format_decimal(s.score) << "\t" << s.prompt
              << "\n";
  }
  return 0;
}

int do_eval(const Config &config, const std::string &gold, double min_recall, double min_accuracy,
            bool as_json) {
  auto resources = load_resources(config);
  auto cases = load_gold(gold);
  auto report = score(cases, *resources);
  if (as_json) {
    std::cout << eval_report_to_json(report).dump(2) << "\n";
  } else {
    for (const auto &c : report.cases) {
      for (const auto &d : c.diffs) std::cout << c.name << ": " << d << "\n";
      for (const auto &e : c.extra_states) std::cout << c.name << ": extra state " << e << "\n";
    }
    const auto &m = report.metrics;
    const auto &t = report.totals;
    std::cout << "cases              " << report.cases.size() << "\n"
              << "state precision    " << format_decimal(m.state_precision) << "\n"
              << "state recall       " << format_decimal(m.state_recall) << " (" << t.matched_states << "/"
              << t.gold_states << ")\n"
              << "condition accuracy " << format_decimal(m.condition_accuracy) << " ("
              << t.correct_conditions << "/" << t.gold_conditions << ")\n"
              << "rule accuracy      " << format_decimal(m.rule_accuracy) << " (" << t.correct_rules << "/"
              << t.gold_rules << ")\n"
              << "extra states       " << report.extra_states << "\n"
              << "seconds            " << report.seconds << "\n";
  }
  bool pass = report.metrics.state_recall + 1e-12 >= min_recall &&
              report.metrics.condition_accuracy + 1e-12 >= min_accuracy;
  if (!pass) std::cerr << "eval: below threshold\n";
  return pass ? 0 : 2;
}

int do_serve(const Config &config, const std::string &host, int port) {
  Service service(config);
  httplib::Server server;
  register_routes(server, service);
  if (port == 0) {
    port = server.bind_to_any_port(host);
    std::cerr << "listening on " << host << ":" << port << "\n";
    return server.listen_after_bind() ? 0 : 1;
  }
  std::cerr << "listening on " << host << ":" << port << "\n";
  return server.listen(host, port) ? 0 : 1;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"nlplan: compile controlled English into planning domains"};
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--config", common.config_path, "JSON config file");
  app.add_option("--embeddings", common.embeddings, "word2vec text file");
  app.add_option("--threshold", common.threshold, "state match threshold")->check(CLI::Range(0.0, 1.0));
  app.add_option("--patterns", common.patterns, "marker pattern catalog");
  app.add_option("--offline-conceptnet", common.offline_conceptnet, "ConceptNet fixture file (JSONL)");
  app.add_flag("--strict", common.strict, "fail sentences with unmatched conditions");

  CompileArgs ca;
  auto *compile = app.add_subcommand("compile", "text -> domain files");
  compile->add_option("input", ca.input, "text file, - for stdin")->required();
  compile->add_option("--conllu", ca.conllu, "CoNLL-U sidecar");
  compile->add_option("--category", ca.category, "auto|state|affordance|affect");
  compile->add_option("--target", ca.target, "printed to stdout without --out-dir")
      ->check(CLI::IsMember({"sexpr", "pddl"}));
  compile->add_option("-o,--out-dir", ca.out_dir, "write domain.sexpr, domain.pddl, bundle.json, report.json");
  compile->add_option("--object", ca.objects, "declare name:type before compiling");

  CompileArgs sa;
  bool suggest_json = false;
  auto *suggest = app.add_subcommand("suggest", "print pending suggestions for a text");
  suggest->add_option("input", sa.input, "text file, - for stdin")->required();
  suggest->add_option("--conllu", sa.conllu, "CoNLL-U sidecar");
  suggest->add_option("--category", sa.category, "auto|state|affordance|affect");
  suggest->add_option("--object", sa.objects, "declare name:type before compiling");
  suggest->add_flag("--json", suggest_json);

  std::string host = "127.0.0.1";
  int port = 8080;
  auto *serve = app.add_subcommand("serve", "HTTP API");
  serve->add_option("--host", host);
  serve->add_option("--port", port, "0 picks a free port");

  std::string gold;
  double min_recall = 1.0, min_accuracy = 1.0;
  bool eval_json = false;
  auto *eval = app.add_subcommand("eval", "score a gold corpus");
  eval->add_option("gold", gold, "gold corpus (default: bundled)");
  eval->add_option("--min-recall", min_recall);
  eval->add_option("--min-accuracy", min_accuracy);
  eval->add_flag("--json", eval_json);

  CLI11_PARSE(app, argc, argv);

  try {
    Config config = common.build();
    if (*compile) return do_compile(config, ca);
    if (*suggest) return do_suggest(config, sa, suggest_json);
    if (*serve) return do_serve(config, host, port);
    if (*eval) {
      if (gold.empty()) gold = config.resolve("gold_corpus.json");
      return do_eval(config, gold, min_recall, min_accuracy, eval_json);
    }
  } catch (const Error &e) {
    std::cerr << "nlplan: " << e.code() << ": " << e.what() << "\n";
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "nlplan: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
