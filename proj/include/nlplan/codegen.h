#ifndef NLPLAN_CODEGEN_H_
#define NLPLAN_CODEGEN_H_

#include <string>
#include <string_view>
#include <vector>

#include "nlplan/domain.h"
#include "nlplan/error.h"

namespace nlplan {

// First line of every emitted s-expression document.
inline constexpr std::string_view kSexprHeader = ";; nlplan domain (s-expression dialect 1)";

// Per-object grouping used by the emitters: states, then fluents, then
// affordances of each object in object order; everything else untouched.
DomainBundle canonical_order(const DomainBundle &bundle);

// Throws Error("invalid-bundle") listing the validator diagnostics.
std::string emit_sexpr(const DomainBundle &bundle);

// Inverse of emit_sexpr; the result is in canonical order. Throws
// Error("bad-sexpr") carrying the offending position.
DomainBundle parse_sexpr(std::string_view text);

std::string emit_pddl(const DomainBundle &bundle, std::string_view domain_name = "nlplan");

// Syntactic checks: balanced parentheses, a single domain definition,
// declared predicates with matching arity, typed parameters, declared
// constants, probabilities in [0, 1]. Empty when the text passes.
std::vector<Diagnostic> check_pddl(std::string_view text);

}  // namespace nlplan

#endif  // NLPLAN_CODEGEN_H_
