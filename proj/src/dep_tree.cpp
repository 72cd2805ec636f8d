#include "mtprune/dep_tree.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "mtprune/errors.hpp"
#include "mtprune/text.hpp"

namespace mtprune {

namespace {

// Surfaces that glue to the preceding token ("movie ." -> "movie.").
bool no_space_before(const std::string& surface) {
  static const std::set<std::string> glue = {".", ",", ";", ":", "!", "?",
                                             "'", "\"", ")", "]", "}", "%"};
  return glue.count(surface) > 0;
}

// Surfaces that glue to the following token ("( x" -> "(x").
bool no_space_after(const std::string& surface) {
  static const std::set<std::string> glue = {"(", "[", "{"};
  return glue.count(surface) > 0;
}

std::string normalize_relation(std::string deprel) {
  const auto colon = deprel.find(':');
  if (colon != std::string::npos) deprel.erase(colon);
  return text::to_lower_ascii(std::move(deprel));
}

}  // namespace

DependencyTree::DependencyTree(std::string sentence_id, std::vector<Token> tokens)
    : sentence_id_(std::move(sentence_id)), tokens_(std::move(tokens)) {
  const int n = static_cast<int>(tokens_.size());
  if (n == 0) throw StructuralError("empty sentence", sentence_id_);
  for (int i = 0; i < n; ++i) {
    const Token& t = tokens_[static_cast<std::size_t>(i)];
    if (t.index != i + 1)
      throw StructuralError("token indices are not contiguous from 1", sentence_id_);
    if (t.surface.empty())
      throw StructuralError("empty surface at index " + std::to_string(t.index),
                            sentence_id_);
    if (t.head < 0 || t.head > n)
      throw StructuralError("head out of range at index " + std::to_string(t.index),
                            sentence_id_);
    if (t.head == t.index)
      throw StructuralError("token is its own head at index " + std::to_string(t.index),
                            sentence_id_);
  }

  children_.assign(static_cast<std::size_t>(n) + 1, {});
  for (const Token& t : tokens_) {
    children_[static_cast<std::size_t>(t.head)].push_back(t.index);
    if (t.head == 0) {
      if (root_ != 0) throw StructuralError("more than one root", sentence_id_);
      root_ = t.index;
    }
  }
  if (root_ == 0) throw StructuralError("no root", sentence_id_);

  // Breadth-first from the root: everything must be reached exactly once.
  depth_.assign(static_cast<std::size_t>(n) + 1, -1);
  std::vector<int> queue = {root_};
  depth_[static_cast<std::size_t>(root_)] = 0;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    for (int c : children_[static_cast<std::size_t>(queue[q])]) {
      depth_[static_cast<std::size_t>(c)] =
          depth_[static_cast<std::size_t>(queue[q])] + 1;
      queue.push_back(c);
    }
  }
  if (queue.size() != static_cast<std::size_t>(n))
    throw StructuralError("tree is not connected", sentence_id_);
}

const Token& DependencyTree::token(int index) const {
  if (index < 1 || index > size())
    throw ArgumentError("token index " + std::to_string(index) + " out of range");
  return tokens_[static_cast<std::size_t>(index - 1)];
}

const std::vector<int>& DependencyTree::children(int index) const {
  if (index < 0 || index > size())
    throw ArgumentError("token index " + std::to_string(index) + " out of range");
  return children_[static_cast<std::size_t>(index)];
}

int DependencyTree::depth(int index) const {
  if (index < 1 || index > size())
    throw ArgumentError("token index " + std::to_string(index) + " out of range");
  return depth_[static_cast<std::size_t>(index)];
}

std::string DependencyTree::text() const {
  std::set<int> all;
  for (const Token& t : tokens_) all.insert(t.index);
  return detokenize(*this, all);
}

bool DependencyTree::same_structure(const DependencyTree& other) const {
  if (size() != other.size()) return false;
  for (int i = 1; i <= size(); ++i) {
    const Token& a = token(i);
    const Token& b = other.token(i);
    if (a.surface != b.surface || a.head != b.head || a.relation != b.relation)
      return false;
  }
  return true;
}

namespace {

struct Block {
  std::string sent_id;
  std::vector<Token> tokens;
  bool empty() const { return tokens.empty() && sent_id.empty(); }
};

// Parses one token line. Returns false for skipped lines (ranges, empty
// nodes); throws ParseError for anything malformed.
bool parse_token_line(const std::string& line, long line_no, Token* out) {
  std::vector<std::string> cols;
  std::string::size_type start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    cols.push_back(line.substr(start, tab == std::string::npos ? tab : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  if (cols.size() != 10)
    throw ParseError("expected 10 tab-separated columns, got " +
                         std::to_string(cols.size()),
                     line_no);

  const std::string& id = cols[0];
  if (id.find('-') != std::string::npos) return false;  // multiword range
  if (id.find('.') != std::string::npos) return false;  // empty node
  try {
    std::size_t used = 0;
    out->index = std::stoi(id, &used);
    if (used != id.size()) throw std::invalid_argument(id);
  } catch (const std::exception&) {
    throw ParseError("token id is not an integer: '" + id + "'", line_no);
  }

  out->surface = cols[1];
  if (out->surface.empty()) throw ParseError("empty FORM column", line_no);

  const std::string& head = cols[6];
  try {
    std::size_t used = 0;
    out->head = std::stoi(head, &used);
    if (used != head.size()) throw std::invalid_argument(head);
  } catch (const std::exception&) {
    throw ParseError("HEAD is not an integer: '" + head + "'", line_no);
  }

  out->relation = normalize_relation(cols[7]);
  if (out->relation.empty()) throw ParseError("empty DEPREL column", line_no);
  out->is_punct = (out->relation == "punct");
  return true;
}

// Shared worker: in strict mode errors propagate with their original type,
// otherwise the offending block is dropped and its message collected.
std::vector<DependencyTree> parse_conllu_impl(const std::string& text, bool strict,
                                              std::vector<std::string>* errors) {
  std::vector<DependencyTree> trees;
  std::istringstream in(text);
  std::string line;
  long line_no = 0;
  int auto_id = 0;
  Block block;
  bool block_bad = false;

  auto flush = [&]() {
    if (block.tokens.empty()) {
      block = Block{};
      block_bad = false;
      return;
    }
    if (!block_bad) {
      std::string id = block.sent_id.empty()
                           ? "s" + std::to_string(auto_id + 1)
                           : block.sent_id;
      try {
        trees.emplace_back(id, std::move(block.tokens));
      } catch (const Error& e) {
        if (strict) throw;
        if (errors) errors->push_back(e.what());
      }
    }
    ++auto_id;
    block = Block{};
    block_bad = false;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush();
      continue;
    }
    if (line[0] == '#') {
      const std::string prefix = "# sent_id";
      if (line.compare(0, prefix.size(), prefix) == 0) {
        const auto eq = line.find('=');
        if (eq != std::string::npos) {
          std::string id = line.substr(eq + 1);
          const auto from = id.find_first_not_of(" \t");
          const auto to = id.find_last_not_of(" \t");
          if (from != std::string::npos) block.sent_id = id.substr(from, to - from + 1);
        }
      }
      continue;
    }
    if (block_bad) continue;
    Token t;
    try {
      if (parse_token_line(line, line_no, &t)) block.tokens.push_back(t);
    } catch (const Error& e) {
      if (strict) throw;
      if (errors) errors->push_back(e.what());
      block_bad = true;
    }
  }
  flush();
  return trees;
}

}  // namespace

std::vector<DependencyTree> parse_conllu(const std::string& text) {
  return parse_conllu_impl(text, true, nullptr);
}

std::vector<DependencyTree> parse_conllu_lenient(const std::string& text,
                                                 std::vector<std::string>* errors) {
  return parse_conllu_impl(text, false, errors);
}

DependencyTree from_parser_response(const std::string& body) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw ProtocolError(std::string("parser response is not JSON: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("tokens") || !doc["tokens"].is_array())
    throw ProtocolError("parser response lacks a 'tokens' array");

  std::string sent_id = doc.value("sentence_id", std::string("parsed"));
  std::vector<Token> tokens;
  for (const auto& item : doc["tokens"]) {
    if (!item.is_object() || !item.contains("index") || !item.contains("word") ||
        !item.contains("head") || !item.contains("deprel"))
      throw ProtocolError("parser token lacks index/word/head/deprel");
    if (!item["index"].is_number_integer() || !item["head"].is_number_integer() ||
        !item["word"].is_string() || !item["deprel"].is_string())
      throw ProtocolError("parser token field has wrong type");
    Token t;
    t.index = item["index"].get<int>();
    t.surface = item["word"].get<std::string>();
    t.head = item["head"].get<int>();
    t.relation = normalize_relation(item["deprel"].get<std::string>());
    t.is_punct = (t.relation == "punct");
    tokens.push_back(std::move(t));
  }
  return DependencyTree(sent_id, std::move(tokens));
}

DependencyTree parse_remote(const std::string& url, const std::string& sentence) {
  // Split "http://host:port/path" into client base and path.
  const auto scheme = url.find("://");
  if (scheme == std::string::npos)
    throw ArgumentError("parser url must start with http:// or https://");
  const auto path_pos = url.find('/', scheme + 3);
  const std::string base = path_pos == std::string::npos ? url : url.substr(0, path_pos);
  const std::string path = path_pos == std::string::npos ? "/" : url.substr(path_pos);

  httplib::Client client(base);
  client.set_connection_timeout(10);
  client.set_read_timeout(30);
  nlohmann::json req = {{"sentence", sentence}};
  auto res = client.Post(path, req.dump(), "application/json");
  if (!res)
    throw ProtocolError("parser service unreachable at " + url);
  if (res->status != 200)
    throw ProtocolError("parser service returned status " + std::to_string(res->status));
  return from_parser_response(res->body);
}

std::set<int> subtree(const DependencyTree& tree, int index) {
  if (index < 1 || index > tree.size())
    throw ArgumentError("subtree index " + std::to_string(index) + " out of range");
  std::set<int> out;
  std::vector<int> stack = {index};
  while (!stack.empty()) {
    const int cur = stack.back();
    stack.pop_back();
    if (!out.insert(cur).second) continue;
    for (int c : tree.children(cur)) stack.push_back(c);
  }
  return out;
}

std::string detokenize(const DependencyTree& tree, const std::set<int>& kept) {
  if (kept.empty()) throw ArgumentError("detokenize needs at least one kept index");
  std::string out;
  std::string prev;
  for (int index : kept) {
    const std::string& surface = tree.token(index).surface;  // range-checks
    if (!out.empty() && !no_space_before(surface) && !no_space_after(prev))
      out.push_back(' ');
    out += surface;
    prev = surface;
  }
  if (kept.count(1) == 0) text::upcase_first_alpha(out);
  return out;
}

}  // namespace mtprune
