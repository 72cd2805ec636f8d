#pragma once

#include <set>
#include <string>
#include <vector>

namespace mtprune {

// One word of a parsed sentence.
struct Token {
  int index = 0;         // 1-based position in the sentence
  std::string surface;   // the word form, never empty
  int head = 0;          // index of the governing token, 0 for the root
  std::string relation;  // dependency label, lowercase, subtype-free
  bool is_punct = false;
};

// An immutable single-rooted dependency parse. Construction validates the
// invariants below and throws StructuralError when one fails:
//   - token indices are exactly 1..n in order
//   - every head is in [0, n] and no token is its own head
//   - exactly one token has head 0
//   - every token reaches the root (connected, acyclic)
class DependencyTree {
 public:
  DependencyTree(std::string sentence_id, std::vector<Token> tokens);

  const std::string& sentence_id() const { return sentence_id_; }
  const std::vector<Token>& tokens() const { return tokens_; }
  int size() const { return static_cast<int>(tokens_.size()); }

  const Token& token(int index) const;  // 1-based, ArgumentError if out of range
  int root_index() const { return root_; }
  const Token& root() const { return token(root_); }

  // Children of a token, ascending by index. Index 0 lists the root.
  const std::vector<int>& children(int index) const;

  // Edge count from the root (root itself is depth 0).
  int depth(int index) const;

  // Full sentence text: every token's surface joined under the spacing rules.
  std::string text() const;

  bool same_structure(const DependencyTree& other) const;

 private:
  std::string sentence_id_;
  std::vector<Token> tokens_;
  std::vector<std::vector<int>> children_;  // children_[i] for token i, [0] = root
  std::vector<int> depth_;
  int root_ = 0;
};

// Parses CoNLL-U text into one tree per sentence block.
//
// The subset understood here: blank-line separated blocks, '#' comment lines
// ("# sent_id = x" names the sentence), 10 tab-separated columns per token.
// Multiword-token ranges ("3-4") and empty nodes ("3.1") are skipped.
// DEPREL is lowercased and truncated at ':' ("acl:relcl" becomes "acl").
// A token is punctuation when its DEPREL is "punct".
//
// Throws ParseError (with line number) on malformed lines and StructuralError
// on invariant violations.
std::vector<DependencyTree> parse_conllu(const std::string& text);

// Like parse_conllu but skips broken sentence blocks instead of throwing,
// collecting one message per skipped block. Used by the pipeline, where a bad
// sentence must not kill the run.
std::vector<DependencyTree> parse_conllu_lenient(const std::string& text,
                                                 std::vector<std::string>* errors);

// Builds a tree from a parser service response:
//   {"tokens": [{"index": 1, "word": "...", "head": 0, "deprel": "..."}, ...]}
// An optional top-level "sentence_id" names the sentence. DEPREL is
// normalized exactly as in parse_conllu. Throws ProtocolError when the body
// is not JSON of this shape, StructuralError on invariant violations.
DependencyTree from_parser_response(const std::string& body);

// Requests a parse of `sentence` from an HTTP service: POST {"sentence": s}
// to `url`, response as accepted by from_parser_response.
DependencyTree parse_remote(const std::string& url, const std::string& sentence);

// All indices reachable from `index` through child edges, including `index`.
std::set<int> subtree(const DependencyTree& tree, int index);

// Joins the surfaces of `kept` (sorted ascending) into a sentence:
//   - single space between tokens
//   - no space before . , ; : ! ? ' " ) ] } %
//   - no space after ( [ {
//   - if the sentence-initial token was dropped, the first letter of the
//     result is uppercased
// Throws ArgumentError when kept is empty or holds an out-of-range index.
std::string detokenize(const DependencyTree& tree, const std::set<int>& kept);

}  // namespace mtprune
