#include "mtprune/pairs.hpp"

#include <map>

#include "mtprune/errors.hpp"

namespace mtprune {

std::vector<SentencePair> make_pairs(const SentenceRef& original,
                                     const std::vector<GeneratedSentence>& generated) {
  std::map<std::string, const GeneratedSentence*> by_id;
  for (const GeneratedSentence& g : generated) by_id[g.id] = &g;

  std::vector<SentencePair> pairs;
  pairs.reserve(generated.size());
  for (const GeneratedSentence& g : generated) {
    SentencePair p;
    p.pair_id = g.id + "~pair";
    p.original_id = original.id;
    p.derived = {g.id, g.text};
    if (g.parent_id == original.id) {
      p.parent = original;
    } else {
      auto it = by_id.find(g.parent_id);
      if (it == by_id.end())
        throw ContractError("generated sentence " + g.id +
                            " has unknown parent " + g.parent_id);
      p.parent = {it->second->id, it->second->text};
    }
    pairs.push_back(std::move(p));
  }
  return pairs;
}

}  // namespace mtprune
