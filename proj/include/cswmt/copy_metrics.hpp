#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cswmt/generate.hpp"
#include "cswmt/lid.hpp"
#include "cswmt/types.hpp"

namespace cswmt {

// Recopy analysis of pre-translated tokens: the target-language-labeled
// tokens of each CSW source are expected to reappear in the hypothesis.
// Counting uses multiset semantics, so repeated tokens are each accounted.
struct CopyReport {
  std::uint64_t to_copy = 0;
  std::uint64_t copied = 0;
  // CSW rate on the output side: non-neutral hypothesis tokens classified
  // as the non-target language.
  std::uint64_t csw_considered = 0;
  std::uint64_t csw_other = 0;

  double copy_rate() const {  // percent
    return to_copy == 0 ? 0.0 : 100.0 * static_cast<double>(copied) / static_cast<double>(to_copy);
  }
  double csw_rate() const {  // percent
    return csw_considered == 0 ? 0.0 : 100.0 * static_cast<double>(csw_other) / static_cast<double>(csw_considered);
  }
};

// lexicon may be null; the CSW-rate fields then stay zero.
CopyReport copy_analysis(const std::vector<CswExample>& examples,
                         const std::vector<TokenSeq>& hyps,
                         const std::string& target_lang,
                         const LidLexicon* lexicon = nullptr);

// Order analysis of the pre-translated tokens Q (in source order):
//   exact   - Q is a subsequence of the hypothesis
//   swapped - Q's multiset is contained in the hypothesis but order changed
//   incomplete - some pre-translated token is missing
// Sentences with empty Q count as exact (vacuous) and are also reported
// separately. The three categories are mutually exclusive and exhaustive.
struct OrderBucket {
  std::uint64_t exact = 0;
  std::uint64_t swapped = 0;
  std::uint64_t incomplete = 0;
  std::uint64_t vacuous = 0;  // subset of exact

  std::uint64_t total() const { return exact + swapped + incomplete; }
  double exact_pct() const {
    return total() == 0 ? 0.0 : 100.0 * static_cast<double>(exact) / static_cast<double>(total());
  }
  double swapped_pct() const {
    return total() == 0 ? 0.0 : 100.0 * static_cast<double>(swapped) / static_cast<double>(total());
  }
  double incomplete_pct() const {
    return total() == 0 ? 0.0 : 100.0 * static_cast<double>(incomplete) / static_cast<double>(total());
  }
};

struct OrderReport {
  OrderBucket overall;
  OrderBucket matrix_is_target;  // matrix language == target language
  OrderBucket matrix_is_source;
};

OrderReport order_analysis(const std::vector<CswExample>& examples,
                           const std::vector<TokenSeq>& hyps,
                           const std::string& target_lang);

// True when `small` is a subsequence of `big`.
bool is_subsequence(const TokenSeq& small, const TokenSeq& big);

// Size of the multiset intersection.
std::uint64_t multiset_overlap(const TokenSeq& a, const TokenSeq& b);

}  // namespace cswmt
