#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mtprune/clause.hpp"
#include "mtprune/dep_tree.hpp"

namespace mtprune {

// What pruning may do to a token, decided by its dependency relation.
//   Unprunable:        must stay (clause trunk material, punctuation, ...)
//   Prunable:          may go, taking its subtree along
//   PartiallyPrunable: function word; goes together with related material
enum class PruneAction { Unprunable, Prunable, PartiallyPrunable };

const char* to_string(PruneAction a);
PruneAction prune_action_from_string(const std::string& s);  // "up"|"pr"|"pp"

// Relation label -> action. Labels not in the map default to Unprunable.
struct RelationPolicy {
  std::map<std::string, PruneAction> actions;
};

// The built-in policy table.
RelationPolicy default_policy();

// Merges a JSON object {"relation": "up"|"pr"|"pp", ...} over the built-in
// table. Unknown relations extend the table; known ones are overridden.
// Throws IoError when the file is unreadable, ParseError on bad content.
RelationPolicy load_policy(const std::string& path);

// Action for a lowercase, subtype-free relation label.
PruneAction action_for(const RelationPolicy& policy, const std::string& relation);

// The index set that pruning `index` removes, or nullopt when the token must
// stay: Unprunable tokens, core tokens, and head-bound markers ("case",
// "mark") never anchor a removal of their own. A removable token takes its
// subtree along, except descendants that are themselves Unprunable
// (punctuation orphaned by a removal stays in the sentence).
std::optional<std::set<int>> removal_unit(const DependencyTree& tree, int index,
                                          const CoreSemantics& core,
                                          const RelationPolicy& policy);

// One sentence produced by pruning.
struct GeneratedSentence {
  std::string id;                // "<sentence_id>/p<n>"
  std::string text;
  std::string parent_id;         // the sentence this one was pruned from
  std::set<int> removed_indices; // vs the tree handed to generate(), cumulative
  int depth = 0;                 // 1 for children of the input sentence
};

struct GenerationLimits {
  int max_depth = 10;
  int max_sentences = 64;
};

// Prunes `tree` step by step until only the core is left or a limit stops
// it. Candidates are visited bottom-up (deepest first), leftmost first among
// equals; every applied removal yields one sentence that becomes the parent
// of the next. Steps that would remove nothing are skipped, so no two
// outputs share a removed-index set.
std::vector<GeneratedSentence> generate(const DependencyTree& tree,
                                        const CoreSemantics& core,
                                        const RelationPolicy& policy,
                                        const GenerationLimits& limits = {});

}  // namespace mtprune
