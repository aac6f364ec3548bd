#ifndef NLPLAN_CONLLU_H_
#define NLPLAN_CONLLU_H_

#include <string>
#include <string_view>
#include <vector>

#include "nlplan/graph.h"

namespace nlplan {

// Reads CoNLL-U: ten tab-separated columns, blank lines between sentences,
// '#' comments ("# text = ..." becomes the graph source). Only ID, FORM,
// LEMMA, UPOS, HEAD and DEPREL are consumed; multiword ranges and empty
// nodes are skipped. Errors are Error("bad-conllu") naming the line.
std::vector<SentenceGraph> parse_conllu(std::string_view text);

// Writes the consumed columns back out; unused columns are "_".
std::string serialize_conllu(const std::vector<SentenceGraph> &graphs);

}  // namespace nlplan

#endif  // NLPLAN_CONLLU_H_
