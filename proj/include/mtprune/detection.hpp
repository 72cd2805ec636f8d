#pragma once

#include <map>
#include <optional>
#include <string>

#include "mtprune/pairs.hpp"

namespace mtprune {

// Token -> occurrence count.
using BagOfWords = std::map<std::string, int>;

// Tokenizes for comparison: runs of Han characters become one token per
// character, everything else splits on whitespace with leading/trailing
// punctuation stripped. Tokens that were pure punctuation (or empty) are
// dropped. Case is preserved.
BagOfWords bow(const std::string& translation);

// How much of `derived`'s vocabulary exceeds `parent`'s:
//   sum over tokens of max(0, count_derived - count_parent)
// Zero exactly when every derived token is covered by the parent side.
// A sound translation of a pruned sentence adds nothing, so any excess is
// suspicious.
int distance(const std::string& parent_translation,
             const std::string& derived_translation);

// A metamorphic-pair violation: the pruned sentence's translation contains
// material its parent's translation does not.
struct SuspiciousIssue {
  std::string pair_id;
  std::string original_id;
  std::string parent_id;
  std::string derived_id;
  std::string parent_text;
  std::string derived_text;
  std::string parent_translation;
  std::string derived_translation;
  int distance = 0;
  int threshold = 0;
  std::optional<std::string> label;  // reserved for human triage, never set here
};

// Default and admissible range for the detection threshold.
inline constexpr int kDefaultThreshold = 0;
inline constexpr int kMinThreshold = 0;
inline constexpr int kMaxThreshold = 12;

// Flags the pair when distance(parent_translation, derived_translation)
// exceeds `threshold` strictly. Throws ArgumentError when the threshold is
// outside [0, 12].
std::optional<SuspiciousIssue> detect(const SentencePair& pair,
                                      const std::string& parent_translation,
                                      const std::string& derived_translation,
                                      int threshold = kDefaultThreshold);

}  // namespace mtprune
