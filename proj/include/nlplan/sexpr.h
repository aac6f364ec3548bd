#ifndef NLPLAN_SEXPR_H_
#define NLPLAN_SEXPR_H_

#include <string>
#include <string_view>
#include <vector>

namespace nlplan {

// A parsed s-expression: an atom or a list, with its source position.
struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;
  int line = 1;
  int column = 1;

  bool is_atom(std::string_view text) const { return !is_list && atom == text; }
  std::string where() const;  // "line L, column C"
};

// Reads every top-level form. ';' starts a comment running to end of line.
// Throws Error("bad-sexpr") with a position on unbalanced parentheses.
std::vector<SExpr> read_sexprs(std::string_view text);

// Shortest decimal that reads back to `v`, always with a fractional part:
// 1 -> "1.0", 0.25 -> "0.25".
std::string format_decimal(double v);

// Parses a decimal atom. Throws Error("bad-sexpr").
double parse_decimal(const SExpr &e);

}  // namespace nlplan

#endif  // NLPLAN_SEXPR_H_
