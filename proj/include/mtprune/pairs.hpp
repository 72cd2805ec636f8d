#pragma once

#include <string>
#include <vector>

#include "mtprune/pruning.hpp"

namespace mtprune {

// A sentence as the pairing step sees it: just identity and surface.
struct SentenceRef {
  std::string id;
  std::string text;
};

// One checkable unit: a sentence and the sentence pruned from it. The
// derived sentence must translate to something covered by its parent's
// translation.
struct SentencePair {
  std::string pair_id;
  SentenceRef parent;
  SentenceRef derived;
  std::string original_id;  // the unpruned ancestor of both
};

// Builds one pair per derivation edge: (original, g) for every depth-1
// sentence and (parent, child) for every deeper one. The result has exactly
// one pair per generated sentence, in input order. Throws ContractError when
// a parent_id refers to nothing in scope.
std::vector<SentencePair> make_pairs(const SentenceRef& original,
                                     const std::vector<GeneratedSentence>& generated);

}  // namespace mtprune
