#ifndef NLPLAN_PIPELINE_H_
#define NLPLAN_PIPELINE_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "nlplan/domain.h"
#include "nlplan/resources.h"

namespace nlplan {

// kAuto routes each sentence by marker precedence: affordance markers, then
// affect markers, otherwise state extraction.
enum class Category { kAuto, kState, kAffordance, kAffect };

std::string_view to_string(Category c);
// "auto", "state", "affordance", "affect"; throws Error("bad-category").
Category parse_category(std::string_view s);

struct SentenceReport {
  int index = 0;  // 1-based within the submission
  std::string text;
  // state | affordance | affect | unmatched
  std::string classification = "unmatched";
  bool ok = true;
  std::string error_code;
  std::string error;
  std::vector<std::string> states;      // state ids the sentence produced or used
  std::vector<std::string> new_states;  // ids declared by this sentence
  std::string affordance;               // "owner.name" when one was added
  bool rule = false;                    // an affect rule was added
  std::vector<Diagnostic> diagnostics;
};

struct IngestionReport {
  std::vector<SentenceReport> sentences;
  std::vector<Diagnostic> diagnostics;  // submission-level (coreference, sidecar)

  bool ok() const;
};

struct SubmitOptions {
  Category category = Category::kAuto;
  // CoNLL-U parses replacing the builtin parser, one block per sentence.
  std::optional<std::string> conllu;
};

// Runs the whole pipeline over `text` and mutates `bundle` sentence by
// sentence. A sentence that fails leaves the bundle exactly as before it.
IngestionReport compile_text(DomainBundle &bundle, std::string_view text, const Resources &resources,
                             const SubmitOptions &options = {});

nlohmann::json report_to_json(const IngestionReport &report);
nlohmann::json diagnostic_to_json(const Diagnostic &d);

}  // namespace nlplan

#endif  // NLPLAN_PIPELINE_H_
