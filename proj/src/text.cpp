#include "mtprune/text.hpp"

#include <cctype>

namespace mtprune::text {

std::size_t decode_utf8(const std::string& s, std::size_t i, char32_t* cp) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  const std::size_t left = s.size() - i;
  auto cont = [&](std::size_t k) {
    return k < left && (static_cast<unsigned char>(s[i + k]) & 0xC0) == 0x80;
  };
  if (b0 < 0x80) {
    *cp = b0;
    return 1;
  }
  if ((b0 & 0xE0) == 0xC0 && cont(1)) {
    *cp = ((b0 & 0x1Fu) << 6) | (static_cast<unsigned char>(s[i + 1]) & 0x3Fu);
    return 2;
  }
  if ((b0 & 0xF0) == 0xE0 && cont(1) && cont(2)) {
    *cp = ((b0 & 0x0Fu) << 12) | ((static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 6) |
          (static_cast<unsigned char>(s[i + 2]) & 0x3Fu);
    return 3;
  }
  if ((b0 & 0xF8) == 0xF0 && cont(1) && cont(2) && cont(3)) {
    *cp = ((b0 & 0x07u) << 18) | ((static_cast<unsigned char>(s[i + 1]) & 0x3Fu) << 12) |
          ((static_cast<unsigned char>(s[i + 2]) & 0x3Fu) << 6) |
          (static_cast<unsigned char>(s[i + 3]) & 0x3Fu);
    return 4;
  }
  *cp = 0xFFFD;
  return 1;
}

void append_utf8(std::string& out, char32_t cp) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool is_cjk(char32_t cp) {
  return (cp >= 0x2E80 && cp <= 0x2EFF) ||    // radicals supplement
         (cp >= 0x2F00 && cp <= 0x2FDF) ||    // Kangxi radicals
         (cp >= 0x3400 && cp <= 0x4DBF) ||    // extension A
         (cp >= 0x4E00 && cp <= 0x9FFF) ||    // unified ideographs
         (cp >= 0xF900 && cp <= 0xFAFF) ||    // compatibility ideographs
         (cp >= 0x20000 && cp <= 0x2A6DF) ||  // extension B
         (cp >= 0x2A700 && cp <= 0x2EBEF) ||  // extensions C-F
         (cp >= 0x2F800 && cp <= 0x2FA1F);    // compatibility supplement
}

bool is_punct(char32_t cp) {
  if (cp < 0x80) return std::ispunct(static_cast<int>(cp)) != 0;
  if (cp >= 0x3001 && cp <= 0x303F) return true;  // CJK punctuation (。、「 ...)
  if (cp >= 0xFF01 && cp <= 0xFF0F) return true;  // fullwidth ！＂ ... ／
  if (cp >= 0xFF1A && cp <= 0xFF20) return true;  // fullwidth ：－＠
  if (cp >= 0xFF3B && cp <= 0xFF40) return true;
  if (cp >= 0xFF5B && cp <= 0xFF65) return true;  // fullwidth braces, halfwidth 。
  switch (cp) {
    case 0x2018: case 0x2019: case 0x201C: case 0x201D:  // curly quotes
    case 0x2013: case 0x2014: case 0x2026:               // dashes, ellipsis
    case 0x00A1: case 0x00BF: case 0x00AB: case 0x00BB:  // ¡ ¿ « »
      return true;
    default:
      return false;
  }
}

bool is_space(char32_t cp) {
  if (cp < 0x80) return std::isspace(static_cast<int>(cp)) != 0;
  return cp == 0x3000;
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  std::size_t i = 0;
  while (i < s.size()) {
    char32_t cp = 0;
    const std::size_t n = decode_utf8(s, i, &cp);
    if (is_space(cp)) {
      if (!cur.empty()) {
        out.push_back(cur);
        cur.clear();
      }
    } else {
      cur.append(s, i, n);
    }
    i += n;
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::string strip_punct(const std::string& token) {
  return split_affixes(token).core;
}

Affixes split_affixes(const std::string& token) {
  // Decode once, then trim punctuation from both ends.
  std::vector<std::pair<std::size_t, std::size_t>> spans;  // byte offset, length
  std::vector<char32_t> cps;
  std::size_t i = 0;
  while (i < token.size()) {
    char32_t cp = 0;
    const std::size_t n = decode_utf8(token, i, &cp);
    spans.emplace_back(i, n);
    cps.push_back(cp);
    i += n;
  }
  std::size_t lo = 0, hi = cps.size();
  while (lo < hi && is_punct(cps[lo])) ++lo;
  while (hi > lo && is_punct(cps[hi - 1])) --hi;
  Affixes out;
  if (lo >= hi) {
    out.prefix = token;
    return out;
  }
  const std::size_t begin = spans[lo].first;
  const std::size_t end = spans[hi - 1].first + spans[hi - 1].second;
  out.prefix = token.substr(0, begin);
  out.core = token.substr(begin, end - begin);
  out.suffix = token.substr(end);
  return out;
}

bool all_punct(const std::string& s) {
  std::size_t i = 0;
  bool any = false;
  while (i < s.size()) {
    char32_t cp = 0;
    const std::size_t n = decode_utf8(s, i, &cp);
    if (!is_punct(cp)) return false;
    any = true;
    i += n;
  }
  return any;
}

std::string to_lower_ascii(std::string s) {
  for (char& c : s) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return s;
}

void upcase_first_alpha(std::string& s) {
  for (char& c : s) {
    if (std::isalpha(static_cast<unsigned char>(c))) {
      c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      return;
    }
  }
}

}  // namespace mtprune::text
