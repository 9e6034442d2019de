#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cswmt/generate.hpp"
#include "cswmt/types.hpp"

namespace cswmt {

// Corpus-level 4-gram BLEU over pre-tokenized text. No internal
// re-tokenization is applied. When every hypothesis is shorter than 4
// tokens, the geometric mean runs over the orders that have any hypothesis
// n-grams at all (the effective order); a zero match count at an effective
// order gives score 0 unless add-one smoothing is enabled.
struct BleuScore {
  double score = 0.0;  // in [0, 100]
  std::array<double, 4> precisions{};
  double brevity_penalty = 1.0;
  std::uint64_t hyp_len = 0;
  std::uint64_t ref_len = 0;
  unsigned effective_order = 4;
  std::array<std::uint64_t, 4> matched{};
  std::array<std::uint64_t, 4> total{};
};

struct BleuOptions {
  // Add-one smoothing of match/total counts for orders 2..4.
  bool smooth_add_one = false;
};

BleuScore bleu(const std::vector<TokenSeq>& hyps,
               const std::vector<TokenSeq>& refs, BleuOptions options = {});

struct PartitionedBleu {
  std::optional<BleuScore> matrix_is_target;  // absent when partition empty
  std::optional<BleuScore> matrix_is_source;
  std::size_t n_matrix_is_target = 0;
  std::size_t n_matrix_is_source = 0;
};

// Splits the test set by whether each example's matrix language equals the
// scoring target language, and scores the two partitions independently.
PartitionedBleu bleu_partitioned(const std::vector<TokenSeq>& hyps,
                                 const std::vector<TokenSeq>& refs,
                                 const std::vector<CswExample>& examples,
                                 const std::string& target_lang,
                                 BleuOptions options = {});

}  // namespace cswmt
