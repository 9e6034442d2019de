#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "cswmt/alignment.hpp"
#include "cswmt/types.hpp"

namespace cswmt {

// Probability assigned to word pairs never seen in training.
inline constexpr double kUnknownWordProb = 1e-9;

// Lexical translation table p(tgt_word | src_word), trained with
// expectation-maximization (classic Model-1 updates). Immutable after
// training and safe to share across threads.
class TranslationTable {
 public:
  // Returns p(tgt | src), or kUnknownWordProb for unseen words/pairs.
  double prob(const std::string& src_word, const std::string& tgt_word) const;

  std::size_t src_vocab_size() const { return src_vocab_.size(); }
  std::size_t tgt_vocab_size() const { return tgt_vocab_.size(); }
  std::optional<double> diagonal_tension() const { return diagonal_tension_; }

  // Text serialization:
  //   line 1: "cswmt-ttable 1"
  //   line 2: "tension <value>" or "tension none"
  //   then one "<src_word> <tgt_word> <prob>" row per entry.
  void save(std::ostream& out) const;
  static TranslationTable load(std::istream& in);

 private:
  friend struct TrainAccess;

  std::vector<std::string> src_vocab_;
  std::vector<std::string> tgt_vocab_;
  std::unordered_map<std::string, std::uint32_t> src_index_;
  std::unordered_map<std::string, std::uint32_t> tgt_index_;
  // probs_[src_id] maps tgt_id -> p(tgt | src); sums to 1 per src_id.
  std::vector<std::unordered_map<std::uint32_t, double>> probs_;
  std::optional<double> diagonal_tension_;
};

struct TrainOptions {
  unsigned iterations = 5;
  // Weight alignment expectations by exp(-tension * |i/S - j/T|), the
  // diagonal-proximity kernel. Tension is kept fixed during training.
  bool diagonal_prior = false;
  double diagonal_tension = 4.0;
  unsigned workers = 1;
};

struct TrainResult {
  TranslationTable table;
  // Corpus log-likelihood after each iteration; non-decreasing.
  std::vector<double> log_likelihood;
};

// EM training of the lexical table over a corpus held in memory. Throws on
// an empty corpus or iterations == 0. Deterministic for any worker count:
// expected counts are accumulated per fixed-size block and merged in block
// order.
TrainResult train_aligner(const std::vector<ParallelPair>& corpus,
                          const TrainOptions& options = {});

enum class AlignDirection {
  // Table is p(tgt|src); each target token links to its argmax source.
  SrcToTgt,
  // Table is p(src|tgt), trained on swapped pairs; each source token links
  // to its argmax target.
  TgtToSrc,
};

// Greedy argmax alignment. Ties break toward the smaller index. Links are
// returned in the pair's source-target convention for both directions.
AlignmentSet viterbi_align(const ParallelPair& pair,
                           const TranslationTable& table,
                           AlignDirection direction);

}  // namespace cswmt
