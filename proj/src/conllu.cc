#include "nlplan/conllu.h"

#include <charconv>
#include <set>
#include <sstream>

#include "nlplan/error.h"

namespace nlplan {
namespace {

[[noreturn]] void fail(int line, const std::string &what) {
  throw Error("bad-conllu", "line " + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  size_t start = 0;
  while (true) {
    size_t tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string_view::npos ? tab : tab - start));
    if (tab == std::string_view::npos) break;
    start = tab + 1;
  }
  return out;
}

bool parse_int(std::string_view s, int &out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

std::vector<SentenceGraph> parse_conllu(std::string_view text) {
  std::vector<SentenceGraph> out;
  SentenceGraph cur;
  std::set<int> ids;
  int block_start = 0;
  int line_no = 0;
  bool in_block = false;

  auto finish = [&]() {
    if (cur.tokens.empty()) {
      cur = SentenceGraph();
      return;
    }
    try {
      check_tree(cur);
    } catch (const Error &e) {
      fail(block_start, std::string("sentence is not a tree: ") + e.what());
    }
    if (cur.source.empty()) cur.source = cur.text();
    cur.provenance = static_cast<int>(out.size()) + 1;
    out.push_back(std::move(cur));
    cur = SentenceGraph();
    ids.clear();
  };

  std::string_view rest = text;
  while (!rest.empty()) {
    size_t nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view() : rest.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.empty()) {
      finish();
      in_block = false;
      continue;
    }
    if (!in_block) {
      in_block = true;
      block_start = line_no;
    }
    if (line.front() == '#') {
      constexpr std::string_view kText = "# text = ";
      if (line.substr(0, kText.size()) == kText) cur.source = std::string(line.substr(kText.size()));
      continue;
    }
    auto cols = split_tabs(line);
    if (cols.size() != 10) {
      fail(line_no, "expected 10 tab-separated columns, found " + std::to_string(cols.size()));
    }
    if (cols[0].find('-') != std::string_view::npos ||
        cols[0].find('.') != std::string_view::npos) {
      continue;  // multiword token range or empty node
    }
    Token t;
    if (!parse_int(cols[0], t.index) || t.index < 1) fail(line_no, "bad token ID '" + std::string(cols[0]) + "'");
    if (!ids.insert(t.index).second) fail(line_no, "duplicate token ID " + std::to_string(t.index));
    if (t.index != static_cast<int>(cur.tokens.size()) + 1) {
      fail(line_no, "token IDs must be consecutive from 1");
    }
    if (!parse_int(cols[6], t.head) || t.head < 0) fail(line_no, "bad HEAD '" + std::string(cols[6]) + "'");
    if (t.head == t.index) fail(line_no, "token " + std::to_string(t.index) + " is its own head (cycle)");
    t.text = std::string(cols[1]);
    t.lemma = cols[2] == "_" ? t.text : std::string(cols[2]);
    t.pos = std::string(cols[3]);
    t.deprel = std::string(cols[7]);
    if (t.deprel.empty() || t.deprel == "_") fail(line_no, "missing DEPREL");
    cur.tokens.push_back(std::move(t));
  }
  finish();
  return out;
}

std::string serialize_conllu(const std::vector<SentenceGraph> &graphs) {
  std::ostringstream os;
  for (const auto &g : graphs) {
    if (!g.source.empty()) os << "# text = " << g.source << "\n";
    for (const auto &t : g.tokens) {
      os << t.index << '\t' << t.text << '\t' << t.lemma << '\t' << t.pos << "\t_\t_\t"
         << t.head << '\t' << t.deprel << "\t_\t_\n";
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace nlplan
