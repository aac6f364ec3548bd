#ifndef NLPLAN_BUNDLE_IO_H_
#define NLPLAN_BUNDLE_IO_H_

#include <string>
#include <string_view>

#include <json.hpp>

#include "nlplan/domain.h"

namespace nlplan {

// Canonical JSON form of a bundle: keys sorted, list order preserved, two
// space indentation, trailing newline. Layout documented in docs/formats.md.
nlohmann::json bundle_to_json(const DomainBundle &bundle);
DomainBundle bundle_from_json(const nlohmann::json &doc);

std::string write_bundle(const DomainBundle &bundle);
DomainBundle read_bundle(std::string_view text);

nlohmann::json literal_to_json(const Literal &literal);
Literal literal_from_json(const nlohmann::json &doc);
nlohmann::json cnf_to_json(const Cnf &cnf);
Cnf cnf_from_json(const nlohmann::json &doc);
nlohmann::json triple_to_json(const StateTriple &triple);
StateTriple triple_from_json(const nlohmann::json &doc);
nlohmann::json affordance_to_json(const Affordance &affordance);
Affordance affordance_from_json(const nlohmann::json &doc);
nlohmann::json rule_to_json(const AffectRule &rule);
AffectRule rule_from_json(const nlohmann::json &doc);

}  // namespace nlplan

#endif  // NLPLAN_BUNDLE_IO_H_
