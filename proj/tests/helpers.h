#ifndef NLPLAN_TESTS_HELPERS_H_
#define NLPLAN_TESTS_HELPERS_H_

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "nlplan/bundle_io.h"
#include "nlplan/codegen.h"
#include "nlplan/config.h"
#include "nlplan/pipeline.h"
#include "nlplan/resources.h"

namespace nlplan::testing {

inline constexpr const char *kStates =
    "Max can go to different places such as restaurants and parks. "
    "Max can engage in different activities including riding a horse. "
    "Max can be aware of his surroundings. "
    "Max can stand at the bus station. "
    "Max would like to drink some juice.";

inline constexpr const char *kTryOut = "Max would like to try out different activities such as racing and climbing.";

inline constexpr const char *kLibrary =
    "Max goes to the library only if he has an exam after which he feels more knowledgeable.";
inline constexpr const char *kLibraryPossibly =
    "Max goes to the library only if he has an exam after which he possibly feels more knowledgeable.";

inline constexpr const char *kAnger = "Max will get extremely angry whenever he fails his exams.";
inline constexpr const char *kSlightly = "Max becomes slightly angry in case he sees his favorite sports team lose.";

inline const Resources &res() {
  static std::shared_ptr<const Resources> r = load_resources(default_config());
  return *r;
}

inline SentenceGraph parse(std::string_view sentence) { return res().parser->parse(sentence); }

inline DomainBundle compile(std::string_view text, IngestionReport *report = nullptr,
                            const SubmitOptions &options = {}) {
  DomainBundle b = res().empty_bundle();
  auto r = compile_text(b, text, res(), options);
  if (report) *report = std::move(r);
  return b;
}

inline std::string read_file(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::filesystem::path golden(const std::string &name) {
  return std::filesystem::path(NLPLAN_TEST_DIR) / "golden" / name;
}

// Fresh empty directory under the system temp dir.
inline std::filesystem::path temp_dir(const std::string &tag) {
  static std::mt19937_64 rng(std::random_device{}());
  auto dir = std::filesystem::temp_directory_path() / ("nlplan-" + tag + "-" + std::to_string(rng()));
  std::filesystem::create_directories(dir);
  return dir;
}

// Every sentence set the round-trip and replay properties run over.
inline std::vector<std::string> corpus() {
  return {
      kStates,
      kTryOut,
      kLibrary,
      kLibraryPossibly,
      kAnger,
      kSlightly,
      "Max brings the book and then he reads it.",
      "Max gets angry whenever he does not have money.",
      "Max's honor increases whenever he helps customers.",
      "Max feels very happy each time he plays the guitar.",
      "Max drinks juice provided that he has juice and then he probably feels happy.",
      "Max eats an apple when he is hungry which causes he is full.",
      "Max opens the window which causes the room is bright.",
      "Max does not like the rain.",
      std::string(kStates) + " " + kLibrary + " " + kAnger,
  };
}

}  // namespace nlplan::testing

#endif  // NLPLAN_TESTS_HELPERS_H_
