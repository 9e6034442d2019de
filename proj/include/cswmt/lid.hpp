#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <unordered_map>

#include "cswmt/types.hpp"

namespace cswmt {

// Tokens made only of punctuation and/or digits belong to no language and
// are excluded from CSW-rate denominators.
bool is_neutral_token(const std::string& token);

inline constexpr const char* kLidNeutral = "neutral";
inline constexpr const char* kLidUnknown = "unknown";

// Token-level language identification from two monolingual frequency
// lexicons. A token is labeled with a language when its relative frequency
// there exceeds the other side's by a factor of at least rho; otherwise it
// is unknown. Zero counts are floored so single-sided evidence decides.
struct LidLexicon {
  std::string lang_a;
  std::string lang_b;
  std::unordered_map<std::string, std::uint64_t> counts_a;
  std::unordered_map<std::string, std::uint64_t> counts_b;
  std::uint64_t total_a = 0;
  std::uint64_t total_b = 0;
  double rho = 10.0;          // decision threshold, > 1
  double floor_count = 0.5;   // stand-in count for unseen tokens

  static LidLexicon build(const std::string& lang_a,
                          const std::vector<TokenSeq>& corpus_a,
                          const std::string& lang_b,
                          const std::vector<TokenSeq>& corpus_b);

  void add(const std::string& lang, const TokenSeq& sentence);

  void save(std::ostream& out) const;
  static LidLexicon load(std::istream& in);
};

// Returns lexicon.lang_a, lexicon.lang_b, "neutral" or "unknown".
std::string lid_classify(const std::string& token, const LidLexicon& lexicon);

// Keep/drop predicate for corpus pre-filtering: keeps a pair when at least
// min_fraction of each side's non-neutral tokens classify as that side's
// expected language (unknown tokens do not count against it).
std::function<bool(const ParallelPair&)> make_lid_pair_filter(
    const LidLexicon& lexicon, double min_fraction);

}  // namespace cswmt
