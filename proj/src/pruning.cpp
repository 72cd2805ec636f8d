#include "mtprune/pruning.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mtprune/errors.hpp"

namespace mtprune {

const char* to_string(PruneAction a) {
  switch (a) {
    case PruneAction::Unprunable: return "up";
    case PruneAction::Prunable: return "pr";
    case PruneAction::PartiallyPrunable: return "pp";
  }
  return "?";
}

PruneAction prune_action_from_string(const std::string& s) {
  if (s == "up") return PruneAction::Unprunable;
  if (s == "pr") return PruneAction::Prunable;
  if (s == "pp") return PruneAction::PartiallyPrunable;
  throw ArgumentError("unknown prune action '" + s + "' (want up, pr or pp)");
}

RelationPolicy default_policy() {
  static const std::map<std::string, PruneAction> table = {
      {"ROOT", PruneAction::Unprunable},
      {"dep", PruneAction::PartiallyPrunable},
      {"aux", PruneAction::PartiallyPrunable},
      {"auxpass", PruneAction::PartiallyPrunable},
      {"cop", PruneAction::Unprunable},
      {"ccomp", PruneAction::PartiallyPrunable},
      {"xcomp", PruneAction::PartiallyPrunable},
      {"obj", PruneAction::Unprunable},
      {"iobj", PruneAction::Unprunable},
      {"nsubj", PruneAction::Unprunable},
      {"dobj", PruneAction::Unprunable},
      {"det", PruneAction::PartiallyPrunable},
      {"expl", PruneAction::PartiallyPrunable},
      {"amod", PruneAction::Prunable},
      {"nmod", PruneAction::Prunable},
      {"nummod", PruneAction::PartiallyPrunable},
      {"predet", PruneAction::Prunable},
      {"preconj", PruneAction::Prunable},
      {"mwe", PruneAction::PartiallyPrunable},
      {"mark", PruneAction::PartiallyPrunable},
      {"advmod", PruneAction::Prunable},
      {"neg", PruneAction::Prunable},
      {"tmod", PruneAction::Prunable},
      {"punct", PruneAction::Unprunable},
      {"poss", PruneAction::Prunable},
      {"prt", PruneAction::PartiallyPrunable},
      {"compound", PruneAction::Prunable},
      {"goeswith", PruneAction::PartiallyPrunable},
      {"ref", PruneAction::PartiallyPrunable},
      {"xsubj", PruneAction::Unprunable},
      {"case", PruneAction::PartiallyPrunable},
      {"obl", PruneAction::Prunable},
  };
  return RelationPolicy{table};
}

RelationPolicy load_policy(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open policy file " + path);
  std::stringstream buf;
  buf << in.rdbuf();

  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("policy file " + path + " is not JSON: " + e.what());
  }
  if (!doc.is_object())
    throw ParseError("policy file " + path + " must hold a JSON object");

  RelationPolicy policy = default_policy();
  for (const auto& [relation, value] : doc.items()) {
    if (!value.is_string())
      throw ParseError("policy value for '" + relation + "' must be a string");
    try {
      policy.actions[relation] = prune_action_from_string(value.get<std::string>());
    } catch (const ArgumentError& e) {
      throw ParseError(std::string(e.what()) + " for relation '" + relation + "'");
    }
  }
  return policy;
}

PruneAction action_for(const RelationPolicy& policy, const std::string& relation) {
  auto it = policy.actions.find(relation);
  if (it == policy.actions.end() && relation == "root") it = policy.actions.find("ROOT");
  if (it == policy.actions.end()) return PruneAction::Unprunable;
  return it->second;
}

std::optional<std::set<int>> removal_unit(const DependencyTree& tree, int index,
                                          const CoreSemantics& core,
                                          const RelationPolicy& policy) {
  const Token& anchor = tree.token(index);  // range-checks
  if (core.indices.count(index) > 0) return std::nullopt;
  const PruneAction action = action_for(policy, anchor.relation);
  if (action == PruneAction::Unprunable) return std::nullopt;
  // Markers like "in" or "that" only ever leave together with the phrase
  // they mark; they are swept up by their head's unit below.
  if (anchor.relation == "case" || anchor.relation == "mark") return std::nullopt;

  std::set<int> unit;
  for (int member : subtree(tree, index)) {
    if (core.indices.count(member) > 0) continue;
    if (member != index &&
        action_for(policy, tree.token(member).relation) == PruneAction::Unprunable)
      continue;
    unit.insert(member);
  }
  return unit;
}

std::vector<GeneratedSentence> generate(const DependencyTree& tree,
                                        const CoreSemantics& core,
                                        const RelationPolicy& policy,
                                        const GenerationLimits& limits) {
  if (classify(tree) != SentenceType::Simple)
    throw ContractError("cannot prune a " + std::string(to_string(classify(tree))) +
                        " sentence; split it first [" + tree.sentence_id() + "]");

  // Bottom-up, leftmost-first visiting order.
  std::vector<int> order;
  for (const Token& t : tree.tokens()) order.push_back(t.index);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (tree.depth(a) != tree.depth(b)) return tree.depth(a) > tree.depth(b);
    return a < b;
  });

  std::set<int> all;
  for (const Token& t : tree.tokens()) all.insert(t.index);

  std::vector<GeneratedSentence> out;
  std::set<int> removed;
  std::string parent_id = tree.sentence_id();

  for (int anchor : order) {
    if (static_cast<int>(out.size()) >= limits.max_sentences) break;
    if (static_cast<int>(out.size()) >= limits.max_depth) break;
    if (removed.count(anchor) > 0) continue;

    const auto unit = removal_unit(tree, anchor, core, policy);
    if (!unit) continue;

    std::set<int> next = removed;
    next.insert(unit->begin(), unit->end());
    if (next == removed) continue;  // nothing new would go

    std::set<int> kept;
    std::set_difference(all.begin(), all.end(), next.begin(), next.end(),
                        std::inserter(kept, kept.begin()));
    if (kept.empty()) continue;

    GeneratedSentence g;
    g.id = tree.sentence_id() + "/p" + std::to_string(out.size() + 1);
    g.text = detokenize(tree, kept);
    g.parent_id = parent_id;
    g.removed_indices = next;
    g.depth = static_cast<int>(out.size()) + 1;
    parent_id = g.id;
    removed = std::move(next);
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace mtprune
