#pragma once

#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtprune/dep_tree.hpp"

namespace testutil {

inline std::string fixture_path(const std::string& name) {
  return std::string(MTPRUNE_FIXTURES) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name));
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::vector<mtprune::DependencyTree> load_trees(const std::string& name) {
  return mtprune::parse_conllu(read_fixture(name));
}

inline mtprune::DependencyTree load_tree(const std::string& name,
                                         const std::string& sentence_id) {
  for (mtprune::DependencyTree& tree : load_trees(name)) {
    if (tree.sentence_id() == sentence_id) return tree;
  }
  throw std::runtime_error("no sentence " + sentence_id + " in " + name);
}

inline int index_of(const mtprune::DependencyTree& tree, const std::string& surface) {
  for (const mtprune::Token& t : tree.tokens()) {
    if (t.surface == surface) return t.index;
  }
  throw std::runtime_error("no token \"" + surface + "\" in " + tree.sentence_id());
}

// Reachability from `index` by fixpoint over head links; deliberately avoids
// the library's child adjacency so it can serve as an oracle for subtree().
inline std::set<int> reachable_oracle(const mtprune::DependencyTree& tree, int index) {
  std::set<int> out{index};
  bool grew = true;
  while (grew) {
    grew = false;
    for (const mtprune::Token& t : tree.tokens()) {
      if (out.count(t.index) == 0 && out.count(t.head) > 0) {
        out.insert(t.index);
        grew = true;
      }
    }
  }
  return out;
}

// A random valid tree: token 1 is the root, every later token hangs off an
// earlier one, so the result is connected and acyclic by construction.
inline mtprune::DependencyTree random_tree(std::mt19937& rng, int size) {
  static const char* const kRelations[] = {"nsubj", "obj",    "det",  "amod",
                                           "advmod", "obl",   "case", "nmod",
                                           "compound", "aux", "neg",  "iobj"};
  std::vector<mtprune::Token> tokens;
  for (int i = 1; i <= size; ++i) {
    mtprune::Token t;
    t.index = i;
    t.surface = "w" + std::to_string(i);
    if (i == 1) {
      t.head = 0;
      t.relation = "root";
    } else {
      t.head = 1 + static_cast<int>(rng() % static_cast<unsigned>(i - 1));
      t.relation = kRelations[rng() % (sizeof kRelations / sizeof *kRelations)];
    }
    tokens.push_back(std::move(t));
  }
  return mtprune::DependencyTree("rand", std::move(tokens));
}

}  // namespace testutil
