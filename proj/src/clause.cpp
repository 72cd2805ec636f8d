#include "mtprune/clause.hpp"

#include <algorithm>
#include <map>

#include "mtprune/errors.hpp"

namespace mtprune {

namespace {

bool is_clausal(const std::string& relation) {
  return relation == "ccomp" || relation == "advcl" || relation == "acl" ||
         relation == "relcl";
}

// Index of the trailing punctuation token, or 0 when the sentence has none.
int final_punct_index(const DependencyTree& tree) {
  const Token& last = tree.token(tree.size());
  return last.is_punct ? last.index : 0;
}

// Builds a renumbered tree from `members` of `tree`, re-rooted at new_root.
// All punctuation in `members` is dropped; the original final punctuation is
// appended instead (when the original had any). cc/mark children directly
// under new_root are dropped along with their subtrees.
DependencyTree build_piece(const DependencyTree& tree, std::set<int> members,
                           int new_root, const std::string& id) {
  for (int child : tree.children(new_root)) {
    const std::string& rel = tree.token(child).relation;
    if (rel == "cc" || rel == "mark") {
      for (int gone : subtree(tree, child)) members.erase(gone);
    }
  }
  for (auto it = members.begin(); it != members.end();) {
    if (tree.token(*it).is_punct) {
      it = members.erase(it);
    } else {
      ++it;
    }
  }

  std::map<int, int> renumber;
  int next = 0;
  for (int old : members) renumber[old] = ++next;

  std::vector<Token> tokens;
  for (int old : members) {
    const Token& src = tree.token(old);
    Token t = src;
    t.index = renumber[old];
    if (old == new_root) {
      t.head = 0;
      t.relation = "root";
    } else {
      t.head = renumber.at(src.head);
    }
    tokens.push_back(std::move(t));
  }
  if (const int fp = final_punct_index(tree); fp != 0) {
    Token t = tree.token(fp);
    t.index = next + 1;
    t.head = renumber.at(new_root);
    tokens.push_back(std::move(t));
  }
  return DependencyTree(id, std::move(tokens));
}

std::vector<int> conj_children(const DependencyTree& tree, int index) {
  std::vector<int> out;
  for (int c : tree.children(index)) {
    if (tree.token(c).relation == "conj") out.push_back(c);
  }
  return out;
}

// One splitting step; recursion happens in to_simple.
std::vector<DependencyTree> split_compound_step(const DependencyTree& tree) {
  const int root = tree.root_index();
  const std::vector<int> conjuncts = conj_children(tree, root);

  std::set<int> remainder;
  for (const Token& t : tree.tokens()) remainder.insert(t.index);
  for (int c : conjuncts) {
    for (int gone : subtree(tree, c)) remainder.erase(gone);
  }
  for (int c : tree.children(root)) {
    if (tree.token(c).relation == "cc") {
      for (int gone : subtree(tree, c)) remainder.erase(gone);
    }
  }

  std::vector<DependencyTree> out;
  int piece = 0;
  out.push_back(build_piece(tree, remainder, root,
                            tree.sentence_id() + "#" + std::to_string(++piece)));
  for (int c : conjuncts) {
    out.push_back(build_piece(tree, subtree(tree, c), c,
                              tree.sentence_id() + "#" + std::to_string(++piece)));
  }
  return out;
}

// One reduction step; recursion happens in to_simple.
std::vector<DependencyTree> simplify_complex_step(const DependencyTree& tree) {
  const int root = tree.root_index();

  std::vector<int> noun_clauses;
  for (int c : tree.children(root)) {
    if (tree.token(c).relation == "ccomp") noun_clauses.push_back(c);
  }

  std::set<int> host;
  for (const Token& t : tree.tokens()) host.insert(t.index);
  for (int c : noun_clauses) {
    for (int gone : subtree(tree, c)) host.erase(gone);
  }
  // Clause-level modifiers do not survive simplification.
  for (const Token& t : tree.tokens()) {
    if (host.count(t.index) > 0 && is_clausal(t.relation) && t.relation != "ccomp") {
      for (int gone : subtree(tree, t.index)) host.erase(gone);
    }
  }

  std::vector<DependencyTree> out;
  int piece = 0;
  out.push_back(build_piece(tree, host, root,
                            tree.sentence_id() + "#" + std::to_string(++piece)));
  for (int c : noun_clauses) {
    out.push_back(build_piece(tree, subtree(tree, c), c,
                              tree.sentence_id() + "#" + std::to_string(++piece)));
  }
  return out;
}

void to_simple_into(const DependencyTree& tree, std::vector<DependencyTree>* out) {
  const SentenceType type = classify(tree);
  std::vector<DependencyTree> pieces;
  switch (type) {
    case SentenceType::Simple:
      out->push_back(tree);
      return;
    case SentenceType::Compound:
    case SentenceType::CompoundComplex:
      pieces = split_compound_step(tree);
      break;
    case SentenceType::Complex:
      pieces = simplify_complex_step(tree);
      break;
  }
  // A step that changes nothing (e.g. a clausal edge buried where no rule
  // reaches it) must not recurse forever.
  if (pieces.size() == 1 && pieces.front().same_structure(tree)) {
    out->push_back(tree);
    return;
  }
  for (const DependencyTree& p : pieces) to_simple_into(p, out);
}

}  // namespace

const char* to_string(SentenceType t) {
  switch (t) {
    case SentenceType::Simple: return "simple";
    case SentenceType::Compound: return "compound";
    case SentenceType::Complex: return "complex";
    case SentenceType::CompoundComplex: return "compound-complex";
  }
  return "?";
}

const char* to_string(ClausePattern p) {
  switch (p) {
    case ClausePattern::SV: return "SV";
    case ClausePattern::SVO: return "SVO";
    case ClausePattern::SVC: return "SVC";
    case ClausePattern::SVOO: return "SVOO";
    case ClausePattern::SVOC: return "SVOC";
  }
  return "?";
}

SentenceType classify(const DependencyTree& tree) {
  const int root = tree.root_index();
  const std::vector<int> conjuncts = conj_children(tree, root);

  bool coordinated = false;
  if (!conjuncts.empty()) {
    for (int c : tree.children(root)) {
      if (tree.token(c).relation == "cc") coordinated = true;
    }
    for (int c : conjuncts) {
      for (int cc : tree.children(c)) {
        if (tree.token(cc).relation == "cc") coordinated = true;
      }
    }
  }

  bool clausal = false;
  for (const Token& t : tree.tokens()) {
    if (is_clausal(t.relation)) clausal = true;
  }

  if (coordinated && clausal) return SentenceType::CompoundComplex;
  if (coordinated) return SentenceType::Compound;
  if (clausal) return SentenceType::Complex;
  return SentenceType::Simple;
}

std::vector<DependencyTree> split_compound(const DependencyTree& tree) {
  const SentenceType type = classify(tree);
  if (type != SentenceType::Compound && type != SentenceType::CompoundComplex)
    throw ContractError("split_compound needs a compound sentence, got " +
                        std::string(to_string(type)));
  std::vector<DependencyTree> out;
  for (const DependencyTree& piece : split_compound_step(tree)) {
    to_simple_into(piece, &out);
  }
  return out;
}

std::vector<DependencyTree> simplify_complex(const DependencyTree& tree) {
  const SentenceType type = classify(tree);
  if (type != SentenceType::Complex && type != SentenceType::CompoundComplex)
    throw ContractError("simplify_complex needs a complex sentence, got " +
                        std::string(to_string(type)));
  std::vector<DependencyTree> out;
  for (const DependencyTree& piece : simplify_complex_step(tree)) {
    to_simple_into(piece, &out);
  }
  return out;
}

std::vector<DependencyTree> to_simple(const DependencyTree& tree) {
  std::vector<DependencyTree> out;
  to_simple_into(tree, &out);
  return out;
}

CoreSemantics extract_core(const DependencyTree& tree) {
  const int root = tree.root_index();
  if (tree.root().is_punct)
    throw ExtractionError("sentence " + tree.sentence_id() + " has no clause head");

  std::set<int> subjects, objects, iobjects, complements;
  for (int c : tree.children(root)) {
    const std::string& rel = tree.token(c).relation;
    if (rel == "nsubj" || rel == "nsubjpass" || rel == "xsubj" || rel == "csubj") {
      subjects.insert(c);
    } else if (rel == "obj" || rel == "dobj") {
      objects.insert(c);
    } else if (rel == "iobj") {
      iobjects.insert(c);
    } else if (rel == "cop" || rel == "xcomp" || rel == "attr") {
      // A copula makes the root itself the predicate; an open complement or
      // attribute contributes its head token.
      complements.insert(c);
    }
  }
  if (subjects.empty())
    throw ExtractionError("sentence " + tree.sentence_id() + " has no subject");

  CoreSemantics core;
  core.sentence_id = tree.sentence_id();
  core.indices.insert(root);
  core.indices.insert(subjects.begin(), subjects.end());
  core.indices.insert(objects.begin(), objects.end());
  core.indices.insert(iobjects.begin(), iobjects.end());
  core.indices.insert(complements.begin(), complements.end());
  if (const int fp = final_punct_index(tree); fp != 0) core.indices.insert(fp);

  const bool has_obj = !objects.empty();
  const bool has_comp = !complements.empty();
  if (has_obj && !iobjects.empty()) {
    core.pattern = ClausePattern::SVOO;
  } else if (has_obj && has_comp) {
    core.pattern = ClausePattern::SVOC;
  } else if (has_obj) {
    core.pattern = ClausePattern::SVO;
  } else if (has_comp) {
    core.pattern = ClausePattern::SVC;
  } else {
    core.pattern = ClausePattern::SV;
  }
  return core;
}

}  // namespace mtprune
