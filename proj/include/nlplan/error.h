#ifndef NLPLAN_ERROR_H_
#define NLPLAN_ERROR_H_

#include <stdexcept>
#include <string>
#include <utility>

namespace nlplan {

// Failure carrying a machine-readable code ("missing-subject",
// "kind-conflict", ...) alongside the human-readable message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string &message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string &code() const { return code_; }

 private:
  std::string code_;
};

// Non-fatal finding reported back to the author.
struct Diagnostic {
  std::string code;
  std::string subject;  // offending identifier, token or sentence
  std::string message;

  bool operator==(const Diagnostic &other) const = default;
};

}  // namespace nlplan

#endif  // NLPLAN_ERROR_H_
