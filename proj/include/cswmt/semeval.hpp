#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cswmt/types.hpp"

namespace cswmt {

// One L2-writing-assistant item: an L2 sentence with exactly one L1 insert,
// plus one or more reference translations of that insert.
struct SemevalItem {
  std::int64_t id = 0;
  TokenSeq prefix;  // L2 context before the fragment (may be empty)
  TokenSeq suffix;  // L2 context after the fragment (may be empty)
  TokenSeq source_fragment;               // the L1 insert, when known
  std::vector<TokenSeq> references;       // reference translations
};

// Recovers the fragment region of a full-sentence hypothesis by aligning it
// against prefix + GAP + suffix: picks the hypothesis span [i, j) minimizing
// edit(prefix, hyp[0:i)) + edit(suffix, hyp[j:)). Ties resolve toward the
// shortest fragment, then the leftmost. When the context matches the
// hypothesis ends exactly this reduces to stripping prefix and suffix.
TokenSeq extract_fragment(const TokenSeq& hyp, const SemevalItem& item);

struct SemevalScore {
  double accuracy = 0.0;       // exact fragment match against any reference
  double word_accuracy = 0.0;  // mean of LCS(extracted, best ref) / max(len)
  double recall = 0.0;         // fraction of items with a non-empty fragment
  std::uint64_t n_items = 0;
  std::uint64_t n_exact = 0;
  std::uint64_t n_nonempty = 0;
};

// One hypothesis sentence per item; throws on count mismatch.
SemevalScore semeval_score(const std::vector<SemevalItem>& items,
                           const std::vector<TokenSeq>& hyps);

std::size_t lcs_length(const TokenSeq& a, const TokenSeq& b);

// Converter from the SemEval task markup: sentences carrying one
// <f ...>fragment</f> element, wrapped either as bare
//   <s id="N"> left <f id="1">frag</f> right </s>
// lines or with <input>/<ref> children. Lines in the reference stream with
// the same sentence id contribute alternative references. Tokenization is
// whitespace splitting after tag removal.
std::vector<SemevalItem> parse_semeval_markup(std::istream& input,
                                              std::istream& reference);

// Line-delimited JSON item files:
//   {"id":0,"prefix":[...],"suffix":[...],"source_fragment":[...],
//    "references":[[...],...]}
std::vector<SemevalItem> read_semeval_items(std::istream& in);
void write_semeval_items(std::ostream& out,
                         const std::vector<SemevalItem>& items);

}  // namespace cswmt
