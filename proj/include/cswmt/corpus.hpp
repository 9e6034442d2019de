#pragma once

#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <string>

#include "cswmt/types.hpp"

namespace cswmt {

struct CorpusStats {
  std::uint64_t pairs_read = 0;
  std::uint64_t pairs_kept = 0;
  std::uint64_t dropped_ratio = 0;
  std::uint64_t dropped_length = 0;
  std::uint64_t dropped_invalid = 0;    // empty line on either side
  std::uint64_t dropped_predicate = 0;  // rejected by the keep hook

  bool consistent() const {
    return pairs_read == pairs_kept + dropped_ratio + dropped_length +
                             dropped_invalid + dropped_predicate;
  }

  std::string to_text() const;
};

enum class FilterDecision { Keep, DropLength, DropRatio };

// Length/ratio filter. Drops a pair when either side exceeds max_len tokens
// or when the longer side exceeds the shorter by a factor strictly greater
// than max_ratio. Symmetric in the two sides.
FilterDecision filter_pair(const ParallelPair& pair, std::size_t max_len = 250,
                           double max_ratio = 1.5);

struct FilterOptions {
  std::size_t max_len = 250;
  double max_ratio = 1.5;
  // Optional keep/drop predicate, e.g. a lexicon-based language check.
  std::function<bool(const ParallelPair&)> keep_hook;
};

// Streams a pre-tokenized parallel corpus: two files, one sentence per line,
// tokens separated by whitespace. Pairs with an empty line on either side
// are dropped and counted. Kept pairs get consecutive ids 0,1,2,...
//
// Memory use is bounded by the longest sentence; the files are never loaded
// whole.
class ParallelReader {
 public:
  ParallelReader(const std::string& src_path, const std::string& tgt_path,
                 std::string src_lang, std::string tgt_lang,
                 std::optional<FilterOptions> filter = std::nullopt);

  // Next surviving pair, or nullopt at end of input. Throws
  // std::runtime_error naming the first divergent line if the files have
  // different line counts.
  std::optional<ParallelPair> next();

  const CorpusStats& stats() const { return stats_; }

 private:
  std::ifstream src_in_;
  std::ifstream tgt_in_;
  std::string src_lang_;
  std::string tgt_lang_;
  std::optional<FilterOptions> filter_;
  CorpusStats stats_;
  std::int64_t next_id_ = 0;
  std::uint64_t line_no_ = 0;
};

}  // namespace cswmt
