#include "nlplan/sexpr.h"

#include <cctype>
#include <charconv>
#include <cmath>

#include "nlplan/error.h"

namespace nlplan {

std::string SExpr::where() const {
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

std::vector<SExpr> read_sexprs(std::string_view text) {
  std::vector<SExpr> top;
  std::vector<SExpr> stack;
  int line = 1;
  int col = 1;
  auto fail = [&](const std::string &what) {
    throw Error("bad-sexpr", what + " at line " + std::to_string(line) + ", column " + std::to_string(col));
  };
  auto emit = [&](SExpr e) {
    if (stack.empty()) {
      top.push_back(std::move(e));
    } else {
      stack.back().items.push_back(std::move(e));
    }
  };
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    if (c == ';') {
      while (i < text.size() && text[i] != '\n') ++i;
      continue;
    }
    if (c == '(') {
      SExpr e;
      e.is_list = true;
      e.line = line;
      e.column = col;
      stack.push_back(std::move(e));
      ++col;
      ++i;
      continue;
    }
    if (c == ')') {
      if (stack.empty()) fail("unexpected ')'");
      SExpr e = std::move(stack.back());
      stack.pop_back();
      emit(std::move(e));
      ++col;
      ++i;
      continue;
    }
    SExpr e;
    e.line = line;
    e.column = col;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i])) && text[i] != '(' &&
           text[i] != ')' && text[i] != ';') {
      e.atom.push_back(text[i]);
      ++i;
      ++col;
    }
    emit(std::move(e));
  }
  if (!stack.empty()) {
    const SExpr &open = stack.back();
    throw Error("bad-sexpr", "unclosed '(' opened at " + open.where() + " (input ends at line " +
                                 std::to_string(line) + ", column " + std::to_string(col) + ")");
  }
  return top;
}

std::string format_decimal(double v) {
  if (v == 0.0) v = 0.0;  // no "-0.0"
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  std::string out(buf, ptr);
  if (out.find_first_of(".e") == std::string::npos) out += ".0";
  return out;
}

double parse_decimal(const SExpr &e) {
  if (e.is_list) throw Error("bad-sexpr", "expected a number at " + e.where());
  double v = 0;
  auto [ptr, ec] = std::from_chars(e.atom.data(), e.atom.data() + e.atom.size(), v);
  if (ec != std::errc() || ptr != e.atom.data() + e.atom.size() || !std::isfinite(v)) {
    throw Error("bad-sexpr", "expected a number, found '" + e.atom + "' at " + e.where());
  }
  return v;
}

}  // namespace nlplan
