#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mtprune/dep_tree.hpp"
#include "mtprune/pruning.hpp"

namespace mtprune {

// Translation defect families that can be injected on purpose.
enum class FaultKind {
  UnderTranslation,      // a token silently disappears
  OverTranslation,       // a token is emitted twice
  Mistranslation,        // a token comes out as something else entirely
  IncorrectModification, // wording changes, vocabulary does not
  UnclearLogic,          // relation between parts scrambled, vocabulary kept
};

enum class FaultScope { ParentOnly, DerivedOnly, Both };

const char* to_string(FaultKind k);
const char* to_string(FaultScope s);

struct FaultSpec {
  FaultKind kind = FaultKind::UnderTranslation;
  double rate = 0.0;  // probability per pair, in [0, 1]
  std::uint64_t seed = 0;
  FaultScope scope = FaultScope::ParentOnly;
};

// Parses "kind=over,rate=1.0,seed=7,scope=parent_only". Accepted kinds:
// under, over, mis, incorrect, unclear. Accepted scopes: parent_only,
// derived_only, both. Throws ArgumentError on anything else or rate
// outside [0, 1].
FaultSpec parse_fault_spec(const std::string& spec);

// Word-for-word token table.
using DictMapping = std::map<std::string, std::string>;

// Loads a JSON object {"word": "translation", ...}.
DictMapping load_dict_mapping(const std::string& path);

// Substitutes tokens one for one, keeping order and any punctuation stuck to
// a token ("movie." maps its "movie" part). Unmapped tokens pass through.
std::string dict_translate(const std::string& text, const DictMapping& mapping);

enum class PairRole { Parent, Derived };

struct InjectionContext {
  PairRole role = PairRole::Parent;
  // The other side's translation. When present, token-dropping faults pick a
  // token the other side also has, so the defect is visible to comparison.
  std::optional<std::string> counterpart;
  std::uint64_t pair_seed = 0;  // already derived per pair by the caller
};

// Returns `translation` with one fault of spec.kind applied, deterministic
// in ctx.pair_seed. Rate and scope gating is the caller's job; this always
// mutates. Empty input comes back unchanged.
std::string inject(const std::string& translation, const FaultSpec& spec,
                   const InjectionContext& ctx);

// Per-pair seed derivation: the run seed combined with the pair's position.
std::uint64_t pair_seed(std::uint64_t run_seed, std::size_t pair_ordinal,
                        PairRole role);

// Deterministic per-pair Bernoulli draw against spec.rate.
bool fault_gate(const FaultSpec& spec, std::size_t pair_ordinal);

struct MeasureResult {
  std::size_t pairs_total = 0;
  std::size_t injected = 0;
  std::size_t detected = 0;        // injected pairs that were flagged
  double recall = 0.0;             // over faults a one-sided comparison can see
  std::size_t false_positives = 0; // un-injected pairs that were flagged
};

// End-to-end detection quality against a dictionary-backed translator with
// injected faults: prunes every tree, pairs, translates with `mapping`,
// injects per `spec`, detects at `threshold`.
//
// Recall counts only fault placements the directional comparison can see at
// all: under-translation and mistranslation on the parent side,
// over-translation and mistranslation on the derived side. Position swaps
// (IncorrectModification, UnclearLogic) never change the bag of words, so
// they score 0 by design.
MeasureResult measure(const std::vector<DependencyTree>& corpus,
                      const FaultSpec& spec, int threshold,
                      const DictMapping& mapping,
                      const RelationPolicy& policy = default_policy(),
                      const GenerationLimits& limits = {});

}  // namespace mtprune
