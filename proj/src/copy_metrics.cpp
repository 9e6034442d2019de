#include "cswmt/copy_metrics.hpp"

#include <stdexcept>
#include <unordered_map>

namespace cswmt {

bool is_subsequence(const TokenSeq& small, const TokenSeq& big) {
  std::size_t i = 0;
  for (const Token& tok : big) {
    if (i < small.size() && small[i] == tok) ++i;
  }
  return i == small.size();
}

std::uint64_t multiset_overlap(const TokenSeq& a, const TokenSeq& b) {
  std::unordered_map<std::string, std::uint64_t> counts;
  for (const Token& tok : a) ++counts[tok];
  std::uint64_t overlap = 0;
  for (const Token& tok : b) {
    auto it = counts.find(tok);
    if (it != counts.end() && it->second > 0) {
      --it->second;
      ++overlap;
    }
  }
  return overlap;
}

namespace {

TokenSeq pretranslated_tokens(const CswExample& example,
                              const std::string& target_lang) {
  TokenSeq out;
  for (std::size_t i = 0; i < example.csw_tokens.size(); ++i) {
    if (example.labels[i] == target_lang) out.push_back(example.csw_tokens[i]);
  }
  return out;
}

}  // namespace

CopyReport copy_analysis(const std::vector<CswExample>& examples,
                         const std::vector<TokenSeq>& hyps,
                         const std::string& target_lang,
                         const LidLexicon* lexicon) {
  if (examples.size() != hyps.size()) {
    throw std::runtime_error("copy_analysis: " + std::to_string(examples.size()) +
                             " examples vs " + std::to_string(hyps.size()) +
                             " hypotheses");
  }
  CopyReport report;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const TokenSeq expected = pretranslated_tokens(examples[i], target_lang);
    report.to_copy += expected.size();
    report.copied += multiset_overlap(expected, hyps[i]);
    if (lexicon != nullptr) {
      for (const Token& tok : hyps[i]) {
        const std::string label = lid_classify(tok, *lexicon);
        if (label == kLidNeutral) continue;
        ++report.csw_considered;
        if (label != target_lang && label != kLidUnknown) ++report.csw_other;
      }
    }
  }
  return report;
}

OrderReport order_analysis(const std::vector<CswExample>& examples,
                           const std::vector<TokenSeq>& hyps,
                           const std::string& target_lang) {
  if (examples.size() != hyps.size()) {
    throw std::runtime_error("order_analysis: example/hypothesis count mismatch");
  }
  OrderReport report;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    const TokenSeq expected = pretranslated_tokens(examples[i], target_lang);
    OrderBucket& split = examples[i].matrix_lang == target_lang
                             ? report.matrix_is_target
                             : report.matrix_is_source;
    if (expected.empty()) {
      ++report.overall.exact;
      ++report.overall.vacuous;
      ++split.exact;
      ++split.vacuous;
    } else if (is_subsequence(expected, hyps[i])) {
      ++report.overall.exact;
      ++split.exact;
    } else if (multiset_overlap(expected, hyps[i]) == expected.size()) {
      ++report.overall.swapped;
      ++split.swapped;
    } else {
      ++report.overall.incomplete;
      ++split.incomplete;
    }
  }
  return report;
}

}  // namespace cswmt
