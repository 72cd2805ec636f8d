#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mtprune::text {

// Decodes the UTF-8 sequence starting at s[i], writes the code point to *cp
// and returns the number of bytes consumed. Invalid bytes decode as U+FFFD
// one byte at a time so malformed input never throws here.
std::size_t decode_utf8(const std::string& s, std::size_t i, char32_t* cp);

// Appends cp to out as UTF-8.
void append_utf8(std::string& out, char32_t cp);

// Han ideograph blocks (per-character token scripts).
bool is_cjk(char32_t cp);

// ASCII punctuation plus the common fullwidth/CJK punctuation marks.
bool is_punct(char32_t cp);

// ASCII whitespace plus U+3000 (ideographic space).
bool is_space(char32_t cp);

// Splits on runs of whitespace; never returns empty pieces.
std::vector<std::string> split_ws(const std::string& s);

// Strips leading and trailing punctuation code points from a token.
std::string strip_punct(const std::string& token);

// A token split into punctuation shell and word: prefix + core + suffix
// reassembles the input, core carries no edge punctuation.
struct Affixes {
  std::string prefix;
  std::string core;
  std::string suffix;
};
Affixes split_affixes(const std::string& token);

// True when every code point in s is punctuation.
bool all_punct(const std::string& s);

// ASCII-lowercases a copy of s (dependency labels are ASCII).
std::string to_lower_ascii(std::string s);

// Uppercases the first ASCII letter found in s, in place.
void upcase_first_alpha(std::string& s);

}  // namespace mtprune::text
