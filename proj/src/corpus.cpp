#include "cswmt/corpus.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace cswmt {

std::string CorpusStats::to_text() const {
  std::ostringstream out;
  out << "pairs_read\t" << pairs_read << '\n'
      << "pairs_kept\t" << pairs_kept << '\n'
      << "dropped_ratio\t" << dropped_ratio << '\n'
      << "dropped_length\t" << dropped_length << '\n'
      << "dropped_invalid\t" << dropped_invalid << '\n'
      << "dropped_predicate\t" << dropped_predicate << '\n';
  return out.str();
}

FilterDecision filter_pair(const ParallelPair& pair, std::size_t max_len,
                           double max_ratio) {
  const std::size_t a = pair.src_tokens.size();
  const std::size_t b = pair.tgt_tokens.size();
  const std::size_t longer = std::max(a, b);
  const std::size_t shorter = std::min(a, b);
  if (longer > max_len) return FilterDecision::DropLength;
  if (static_cast<double>(longer) > max_ratio * static_cast<double>(shorter)) {
    return FilterDecision::DropRatio;
  }
  return FilterDecision::Keep;
}

ParallelReader::ParallelReader(const std::string& src_path,
                               const std::string& tgt_path,
                               std::string src_lang, std::string tgt_lang,
                               std::optional<FilterOptions> filter)
    : src_in_(src_path),
      tgt_in_(tgt_path),
      src_lang_(std::move(src_lang)),
      tgt_lang_(std::move(tgt_lang)),
      filter_(std::move(filter)) {
  if (!src_in_) throw std::runtime_error("cannot open " + src_path);
  if (!tgt_in_) throw std::runtime_error("cannot open " + tgt_path);
  if (src_lang_ == tgt_lang_) {
    throw std::runtime_error("source and target language must differ: " + src_lang_);
  }
}

std::optional<ParallelPair> ParallelReader::next() {
  std::string src_line, tgt_line;
  for (;;) {
    const bool got_src = static_cast<bool>(std::getline(src_in_, src_line));
    const bool got_tgt = static_cast<bool>(std::getline(tgt_in_, tgt_line));
    if (!got_src && !got_tgt) return std::nullopt;
    ++line_no_;
    if (got_src != got_tgt) {
      throw std::runtime_error("line count mismatch: files diverge at line " +
                               std::to_string(line_no_));
    }
    ++stats_.pairs_read;

    ParallelPair pair;
    pair.src_lang = src_lang_;
    pair.tgt_lang = tgt_lang_;
    pair.src_tokens = split_tokens(src_line);
    pair.tgt_tokens = split_tokens(tgt_line);
    if (pair.src_tokens.empty() || pair.tgt_tokens.empty()) {
      ++stats_.dropped_invalid;
      continue;
    }
    if (filter_) {
      switch (filter_pair(pair, filter_->max_len, filter_->max_ratio)) {
        case FilterDecision::DropLength:
          ++stats_.dropped_length;
          continue;
        case FilterDecision::DropRatio:
          ++stats_.dropped_ratio;
          continue;
        case FilterDecision::Keep:
          break;
      }
      if (filter_->keep_hook && !filter_->keep_hook(pair)) {
        ++stats_.dropped_predicate;
        continue;
      }
    }
    pair.id = next_id_++;
    ++stats_.pairs_kept;
    return pair;
  }
}

}  // namespace cswmt
