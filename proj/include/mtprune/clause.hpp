#pragma once

#include <set>
#include <string>
#include <vector>

#include "mtprune/dep_tree.hpp"

namespace mtprune {

enum class SentenceType { Simple, Compound, Complex, CompoundComplex };

// The basic clause shapes a core can take.
enum class ClausePattern { SV, SVO, SVC, SVOO, SVOC };

const char* to_string(SentenceType t);
const char* to_string(ClausePattern p);

// The token indices a pruned sentence must always keep: the clause trunk.
struct CoreSemantics {
  std::string sentence_id;
  ClausePattern pattern = ClausePattern::SV;
  std::set<int> indices;
};

// Structural sentence classification.
//   Compound:        a "conj" dependent of the root plus a coordinating "cc"
//                    (attached to the root or to the conjunct), and no clausal
//                    edges anywhere
//   Complex:         a "ccomp"/"advcl"/"acl" edge somewhere, no root-level
//                    coordination
//   CompoundComplex: both signals
//   Simple:          neither
SentenceType classify(const DependencyTree& tree);

// Splits a coordinated sentence into independent clauses: one tree for the
// root clause and one per root-level conjunct, each re-rooted and renumbered.
// Coordinators ("cc") and clause markers ("mark") hanging off a conjunct are
// dropped, interior punctuation is dropped, and the original sentence-final
// punctuation is carried into every piece. Output ids get a "#k" suffix.
// Pieces that are still not Simple are split further.
// Throws ContractError unless classify(tree) is Compound or CompoundComplex.
std::vector<DependencyTree> split_compound(const DependencyTree& tree);

// Reduces a Complex sentence to Simple ones: every root-level "ccomp" clause
// becomes its own tree (its "mark"/"cc" dropped), and "advcl"/"acl" subtrees
// are pruned from what remains. The host tree comes first in the output.
// Pieces that are still not Simple are reduced further.
// Throws ContractError unless classify(tree) is Complex or CompoundComplex.
std::vector<DependencyTree> simplify_complex(const DependencyTree& tree);

// Fixpoint of the two operations above: whatever the input, the result is a
// list of Simple trees (or the input unchanged when no rule applies).
std::vector<DependencyTree> to_simple(const DependencyTree& tree);

// Finds the clause trunk of a Simple sentence: the root plus its subject,
// object, indirect object and complement dependents, plus sentence-final
// punctuation. The pattern is the largest of SV/SVO/SVC/SVOO/SVOC that the
// found slots support. Throws ExtractionError when no subject exists
// (imperatives and fragments are out of scope).
CoreSemantics extract_core(const DependencyTree& tree);

}  // namespace mtprune
