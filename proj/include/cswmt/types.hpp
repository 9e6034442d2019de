#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace cswmt {

// A token is a non-empty string without internal whitespace. Sentences are
// sequences of tokens; all processing is token-based and never re-tokenizes.
using Token = std::string;
using TokenSeq = std::vector<Token>;

bool valid_token(const std::string& s);

// Splits a line on runs of whitespace. Never produces empty tokens.
TokenSeq split_tokens(const std::string& line);

// Joins tokens with single spaces.
std::string join_tokens(const TokenSeq& tokens);

// Fixture tokenizer: detaches common punctuation marks (. , ; : ! ? " ( )
// and the guillemets) into standalone tokens and splits after apostrophes
// (ASCII ' and U+2019), keeping the apostrophe attached to the left piece,
// e.g. "l'exemple," -> ["l'", "exemple", ","]. Corpus inputs are expected to
// be pre-tokenized; this exists so small test fixtures can be built from
// plain text deterministically.
TokenSeq simple_tokenize(const std::string& text);

struct ParallelPair {
  std::int64_t id = 0;
  std::string src_lang;
  std::string tgt_lang;
  TokenSeq src_tokens;
  TokenSeq tgt_tokens;
};

// Swaps the two sides of a pair (languages and token sequences).
ParallelPair swap_sides(const ParallelPair& pair);

}  // namespace cswmt
