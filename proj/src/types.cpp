#include "cswmt/types.hpp"

#include <cctype>

namespace cswmt {

bool valid_token(const std::string& s) {
  if (s.empty()) return false;
  for (unsigned char c : s) {
    if (std::isspace(c)) return false;
  }
  return true;
}

TokenSeq split_tokens(const std::string& line) {
  TokenSeq tokens;
  std::size_t i = 0;
  const std::size_t n = line.size();
  while (i < n) {
    while (i < n && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < n && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.emplace_back(line, start, i - start);
  }
  return tokens;
}

std::string join_tokens(const TokenSeq& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out += ' ';
    out += tokens[i];
  }
  return out;
}

namespace {

bool is_detached_punct(char c) {
  switch (c) {
    case '.':
    case ',':
    case ';':
    case ':':
    case '!':
    case '?':
    case '"':
    case '(':
    case ')':
      return true;
    default:
      return false;
  }
}

// Matches ASCII ' or the typographic apostrophe U+2019 (e2 80 99); returns
// the byte length of the match, 0 otherwise.
std::size_t apostrophe_len(const std::string& s, std::size_t i) {
  if (s[i] == '\'') return 1;
  if (i + 2 < s.size() && static_cast<unsigned char>(s[i]) == 0xE2 &&
      static_cast<unsigned char>(s[i + 1]) == 0x80 &&
      static_cast<unsigned char>(s[i + 2]) == 0x99) {
    return 3;
  }
  return 0;
}

}  // namespace

TokenSeq simple_tokenize(const std::string& text) {
  std::string spaced;
  spaced.reserve(text.size() + text.size() / 4);
  for (std::size_t i = 0; i < text.size();) {
    char c = text[i];
    if (is_detached_punct(c)) {
      spaced += ' ';
      spaced += c;
      spaced += ' ';
      ++i;
      continue;
    }
    // Guillemets U+00AB / U+00BB.
    if (i + 1 < text.size() && static_cast<unsigned char>(c) == 0xC2 &&
        (static_cast<unsigned char>(text[i + 1]) == 0xAB ||
         static_cast<unsigned char>(text[i + 1]) == 0xBB)) {
      spaced += ' ';
      spaced += text.substr(i, 2);
      spaced += ' ';
      i += 2;
      continue;
    }
    if (std::size_t len = apostrophe_len(text, i); len > 0) {
      spaced += text.substr(i, len);
      spaced += ' ';
      i += len;
      continue;
    }
    spaced += c;
    ++i;
  }
  return split_tokens(spaced);
}

ParallelPair swap_sides(const ParallelPair& pair) {
  ParallelPair swapped;
  swapped.id = pair.id;
  swapped.src_lang = pair.tgt_lang;
  swapped.tgt_lang = pair.src_lang;
  swapped.src_tokens = pair.tgt_tokens;
  swapped.tgt_tokens = pair.src_tokens;
  return swapped;
}

}  // namespace cswmt
