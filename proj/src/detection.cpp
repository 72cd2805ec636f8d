#include "mtprune/detection.hpp"

#include "mtprune/errors.hpp"
#include "mtprune/text.hpp"

namespace mtprune {

BagOfWords bow(const std::string& translation) {
  BagOfWords bag;
  std::string word;
  auto flush_word = [&]() {
    if (word.empty()) return;
    std::string token = text::strip_punct(word);
    if (!token.empty() && !text::all_punct(token)) ++bag[token];
    word.clear();
  };

  std::size_t i = 0;
  while (i < translation.size()) {
    char32_t cp = 0;
    const std::size_t n = text::decode_utf8(translation, i, &cp);
    if (text::is_space(cp)) {
      flush_word();
    } else if (text::is_cjk(cp)) {
      flush_word();
      std::string ch;
      text::append_utf8(ch, cp);
      ++bag[ch];
    } else {
      word.append(translation, i, n);
    }
    i += n;
  }
  flush_word();
  return bag;
}

int distance(const std::string& parent_translation,
             const std::string& derived_translation) {
  const BagOfWords parent = bow(parent_translation);
  const BagOfWords derived = bow(derived_translation);
  int excess = 0;
  for (const auto& [token, count] : derived) {
    const auto it = parent.find(token);
    const int covered = it == parent.end() ? 0 : it->second;
    if (count > covered) excess += count - covered;
  }
  return excess;
}

std::optional<SuspiciousIssue> detect(const SentencePair& pair,
                                      const std::string& parent_translation,
                                      const std::string& derived_translation,
                                      int threshold) {
  if (threshold < kMinThreshold || threshold > kMaxThreshold)
    throw ArgumentError("threshold " + std::to_string(threshold) +
                        " outside [" + std::to_string(kMinThreshold) + ", " +
                        std::to_string(kMaxThreshold) + "]");
  const int d = distance(parent_translation, derived_translation);
  if (d <= threshold) return std::nullopt;

  SuspiciousIssue issue;
  issue.pair_id = pair.pair_id;
  issue.original_id = pair.original_id;
  issue.parent_id = pair.parent.id;
  issue.derived_id = pair.derived.id;
  issue.parent_text = pair.parent.text;
  issue.derived_text = pair.derived.text;
  issue.parent_translation = parent_translation;
  issue.derived_translation = derived_translation;
  issue.distance = d;
  issue.threshold = threshold;
  return issue;
}

}  // namespace mtprune
