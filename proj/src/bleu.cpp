#include "cswmt/bleu.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace cswmt {

namespace {

// n-gram multiset for one order; n-grams keyed by their tokens joined with
// an unprintable separator.
std::unordered_map<std::string, std::uint32_t> ngram_counts(const TokenSeq& sent,
                                                            unsigned n) {
  std::unordered_map<std::string, std::uint32_t> counts;
  if (sent.size() < n) return counts;
  for (std::size_t i = 0; i + n <= sent.size(); ++i) {
    std::string key;
    for (unsigned k = 0; k < n; ++k) {
      if (k > 0) key += '\x1f';
      key += sent[i + k];
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

BleuScore bleu(const std::vector<TokenSeq>& hyps,
               const std::vector<TokenSeq>& refs, BleuOptions options) {
  if (hyps.size() != refs.size()) {
    throw std::runtime_error("bleu: " + std::to_string(hyps.size()) +
                             " hypotheses vs " + std::to_string(refs.size()) +
                             " references");
  }
  if (hyps.empty()) throw std::runtime_error("bleu: empty corpus");

  BleuScore result;
  for (std::size_t s = 0; s < hyps.size(); ++s) {
    result.hyp_len += hyps[s].size();
    result.ref_len += refs[s].size();
    for (unsigned n = 1; n <= 4; ++n) {
      if (hyps[s].size() < n) break;
      const auto hyp_ngrams = ngram_counts(hyps[s], n);
      const auto ref_ngrams = ngram_counts(refs[s], n);
      for (const auto& [key, count] : hyp_ngrams) {
        result.total[n - 1] += count;
        auto it = ref_ngrams.find(key);
        if (it != ref_ngrams.end()) {
          result.matched[n - 1] += std::min(count, it->second);
        }
      }
    }
  }

  // Orders beyond every hypothesis length carry no information; the
  // geometric mean runs over the orders that have candidate n-grams.
  unsigned effective = 0;
  for (unsigned n = 1; n <= 4; ++n) {
    if (result.total[n - 1] > 0) effective = n;
  }
  result.effective_order = effective == 0 ? 1 : effective;

  if (result.hyp_len == 0) {
    result.brevity_penalty = 0.0;
    result.score = 0.0;
    return result;
  }
  result.brevity_penalty =
      result.hyp_len >= result.ref_len
          ? 1.0
          : std::exp(1.0 - static_cast<double>(result.ref_len) /
                               static_cast<double>(result.hyp_len));

  double log_prec_sum = 0.0;
  bool zero_match = false;
  for (unsigned n = 1; n <= result.effective_order; ++n) {
    double matched = static_cast<double>(result.matched[n - 1]);
    double total = static_cast<double>(result.total[n - 1]);
    if (options.smooth_add_one && n > 1) {
      matched += 1.0;
      total += 1.0;
    }
    const double p = total > 0.0 ? matched / total : 0.0;
    result.precisions[n - 1] = p;
    if (p <= 0.0) {
      zero_match = true;
    } else {
      log_prec_sum += std::log(p);
    }
  }
  if (zero_match) {
    result.score = 0.0;
    return result;
  }
  result.score = 100.0 * result.brevity_penalty *
                 std::exp(log_prec_sum / result.effective_order);
  return result;
}

PartitionedBleu bleu_partitioned(const std::vector<TokenSeq>& hyps,
                                 const std::vector<TokenSeq>& refs,
                                 const std::vector<CswExample>& examples,
                                 const std::string& target_lang,
                                 BleuOptions options) {
  if (hyps.size() != refs.size() || hyps.size() != examples.size()) {
    throw std::runtime_error("bleu_partitioned: hypotheses, references and "
                             "example metadata must have equal lengths");
  }
  std::vector<TokenSeq> hyps_mt, refs_mt, hyps_ms, refs_ms;
  for (std::size_t i = 0; i < hyps.size(); ++i) {
    if (examples[i].matrix_lang == target_lang) {
      hyps_mt.push_back(hyps[i]);
      refs_mt.push_back(refs[i]);
    } else {
      hyps_ms.push_back(hyps[i]);
      refs_ms.push_back(refs[i]);
    }
  }
  PartitionedBleu result;
  result.n_matrix_is_target = hyps_mt.size();
  result.n_matrix_is_source = hyps_ms.size();
  if (!hyps_mt.empty()) result.matrix_is_target = bleu(hyps_mt, refs_mt, options);
  if (!hyps_ms.empty()) result.matrix_is_source = bleu(hyps_ms, refs_ms, options);
  return result;
}

}  // namespace cswmt
