#ifndef NLPLAN_EVAL_H_
#define NLPLAN_EVAL_H_

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlplan/domain.h"
#include "nlplan/resources.h"

namespace nlplan {

struct GoldState {
  StateTriple triple;  // fluents give the value as complement
  StateKind kind = StateKind::kBinary;
};

struct GoldLiteral {
  std::string state;
  std::optional<Slug> value;
  bool polarity = true;
  double probability = 1.0;  // postconditions only
};

struct GoldAffordance {
  Slug owner;
  Slug name;
  std::vector<GoldLiteral> pre;
  std::vector<GoldLiteral> post;
};

struct GoldRule {
  AffectTarget target;
  AffectChange change;
  std::vector<GoldLiteral> when;  // conjunction
};

struct GoldCase {
  std::string name;
  std::vector<std::string> sentences;
  std::optional<std::string> conllu;
  std::vector<GoldState> expected_states;
  std::vector<GoldAffordance> expected_affordances;
  std::vector<GoldRule> expected_rules;
};

// Gold corpus JSON (docs/formats.md). An empty file is an empty corpus.
// Throws Error("bad-gold") naming the case and field at fault.
std::vector<GoldCase> load_gold(const std::string &path);
std::vector<GoldCase> parse_gold(std::string_view text, const std::string &origin = "<gold>");

struct EvalCounts {
  int gold_states = 0;
  int predicted_states = 0;
  int matched_states = 0;
  int gold_conditions = 0;
  int correct_conditions = 0;
  int gold_rules = 0;
  int correct_rules = 0;

  EvalCounts &operator+=(const EvalCounts &o);
};

struct EvalMetrics {
  double state_precision = 1.0;
  double state_recall = 1.0;
  double condition_accuracy = 1.0;
  double rule_accuracy = 1.0;
};

// correct / total, 1 when there is nothing to get right.
double ratio(int correct, int total);
EvalMetrics metrics_from(const EvalCounts &counts);

struct CaseResult {
  std::string name;
  EvalCounts counts;
  std::vector<std::string> extra_states;  // predicted but not in the gold
  std::vector<std::string> diffs;         // human-readable misses
};

struct EvalReport {
  std::vector<CaseResult> cases;
  EvalCounts totals;
  EvalMetrics metrics;
  int extra_states = 0;
  double seconds = 0.0;
};

// Compiles every case into a fresh bundle and compares. States match on the
// exact slug triple; a gold condition is correct when the predicted
// affordance carries a literal with the same state id, value, polarity and
// probability (to 1e-9). Extra states are listed but do not lower recall.
EvalReport score(const std::vector<GoldCase> &cases, const Resources &resources);

nlohmann::json eval_report_to_json(const EvalReport &report);

}  // namespace nlplan

#endif  // NLPLAN_EVAL_H_
