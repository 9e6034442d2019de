#include "cswmt/model1.hpp"

#include <atomic>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace cswmt {

double TranslationTable::prob(const std::string& src_word,
                              const std::string& tgt_word) const {
  auto s = src_index_.find(src_word);
  if (s == src_index_.end()) return kUnknownWordProb;
  auto t = tgt_index_.find(tgt_word);
  if (t == tgt_index_.end()) return kUnknownWordProb;
  const auto& row = probs_[s->second];
  auto it = row.find(t->second);
  return it == row.end() ? kUnknownWordProb : it->second;
}

void TranslationTable::save(std::ostream& out) const {
  out << "cswmt-ttable 1\n";
  if (diagonal_tension_) {
    out << "tension " << std::setprecision(17) << *diagonal_tension_ << '\n';
  } else {
    out << "tension none\n";
  }
  out << std::setprecision(17);
  for (std::size_t s = 0; s < probs_.size(); ++s) {
    for (const auto& [t, p] : probs_[s]) {
      out << src_vocab_[s] << ' ' << tgt_vocab_[t] << ' ' << p << '\n';
    }
  }
}

TranslationTable TranslationTable::load(std::istream& in) {
  TranslationTable table;
  std::string line;
  if (!std::getline(in, line) || line != "cswmt-ttable 1") {
    throw std::runtime_error("not a cswmt-ttable file");
  }
  if (!std::getline(in, line) || line.rfind("tension ", 0) != 0) {
    throw std::runtime_error("ttable: missing tension line");
  }
  if (const std::string value = line.substr(8); value != "none") {
    table.diagonal_tension_ = std::stod(value);
  }
  auto intern = [](std::vector<std::string>& vocab,
                   std::unordered_map<std::string, std::uint32_t>& index,
                   const std::string& word) {
    auto [it, inserted] = index.try_emplace(word, static_cast<std::uint32_t>(vocab.size()));
    if (inserted) vocab.push_back(word);
    return it->second;
  };
  std::string src_word, tgt_word;
  double p = 0;
  while (in >> src_word >> tgt_word >> p) {
    const std::uint32_t s = intern(table.src_vocab_, table.src_index_, src_word);
    const std::uint32_t t = intern(table.tgt_vocab_, table.tgt_index_, tgt_word);
    if (s >= table.probs_.size()) table.probs_.resize(s + 1);
    table.probs_[s][t] = p;
  }
  return table;
}

namespace {

struct EncodedCorpus {
  std::vector<std::string> src_vocab, tgt_vocab;
  std::unordered_map<std::string, std::uint32_t> src_index, tgt_index;
  std::vector<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>> pairs;
};

EncodedCorpus encode(const std::vector<ParallelPair>& corpus) {
  EncodedCorpus enc;
  auto intern = [](std::vector<std::string>& vocab,
                   std::unordered_map<std::string, std::uint32_t>& index,
                   const std::string& word) {
    auto [it, inserted] = index.try_emplace(word, static_cast<std::uint32_t>(vocab.size()));
    if (inserted) vocab.push_back(word);
    return it->second;
  };
  enc.pairs.reserve(corpus.size());
  for (const ParallelPair& pair : corpus) {
    std::vector<std::uint32_t> src, tgt;
    src.reserve(pair.src_tokens.size());
    tgt.reserve(pair.tgt_tokens.size());
    for (const Token& w : pair.src_tokens) src.push_back(intern(enc.src_vocab, enc.src_index, w));
    for (const Token& w : pair.tgt_tokens) tgt.push_back(intern(enc.tgt_vocab, enc.tgt_index, w));
    enc.pairs.emplace_back(std::move(src), std::move(tgt));
  }
  return enc;
}

// Alignment prior for target position j against source position i. Uniform
// without the diagonal prior, else the normalized diagonal-proximity kernel.
std::vector<double> position_weights(std::size_t src_len, std::size_t j,
                                     std::size_t tgt_len, bool diagonal,
                                     double tension) {
  std::vector<double> w(src_len);
  if (!diagonal) {
    const double u = 1.0 / static_cast<double>(src_len);
    for (double& x : w) x = u;
    return w;
  }
  double z = 0.0;
  for (std::size_t i = 0; i < src_len; ++i) {
    const double delta = std::fabs(static_cast<double>(i) / static_cast<double>(src_len) -
                                   static_cast<double>(j) / static_cast<double>(tgt_len));
    w[i] = std::exp(-tension * delta);
    z += w[i];
  }
  for (double& x : w) x /= z;
  return w;
}

}  // namespace

struct TrainAccess {
  static void fill(TranslationTable& table, EncodedCorpus&& enc,
                   std::vector<std::unordered_map<std::uint32_t, double>>&& prob,
                   std::optional<double> tension) {
    table.src_vocab_ = std::move(enc.src_vocab);
    table.tgt_vocab_ = std::move(enc.tgt_vocab);
    table.src_index_ = std::move(enc.src_index);
    table.tgt_index_ = std::move(enc.tgt_index);
    table.probs_ = std::move(prob);
    table.diagonal_tension_ = tension;
  }
};

TrainResult train_aligner(const std::vector<ParallelPair>& corpus,
                          const TrainOptions& options) {
  if (corpus.empty()) throw std::runtime_error("train_aligner: empty corpus");
  if (options.iterations == 0) throw std::runtime_error("train_aligner: iterations must be >= 1");

  EncodedCorpus enc = encode(corpus);
  const std::size_t src_vocab = enc.src_vocab.size();

  // Uniform initialization over co-occurring target words per source word.
  std::vector<std::unordered_map<std::uint32_t, double>> prob(src_vocab);
  for (const auto& [src, tgt] : enc.pairs) {
    for (std::uint32_t s : src) {
      for (std::uint32_t t : tgt) prob[s].emplace(t, 0.0);
    }
  }
  for (auto& row : prob) {
    const double u = 1.0 / static_cast<double>(row.size());
    for (auto& [t, p] : row) p = u;
  }

  const unsigned workers = std::max(1u, options.workers);
  constexpr std::size_t kBlock = 1024;
  const std::size_t n_blocks = (enc.pairs.size() + kBlock - 1) / kBlock;

  std::vector<double> ll_history;
  for (unsigned iter = 0; iter < options.iterations; ++iter) {
    // Per-block expected counts, merged in block order so results do not
    // depend on the worker count.
    std::vector<std::unordered_map<std::uint64_t, double>> block_counts(n_blocks);
    std::vector<double> block_ll(n_blocks, 0.0);

    std::atomic<std::size_t> next_block{0};
    auto run = [&]() {
      for (;;) {
        const std::size_t b = next_block.fetch_add(1);
        if (b >= n_blocks) return;
        auto& counts = block_counts[b];
        double ll = 0.0;
        const std::size_t lo = b * kBlock;
        const std::size_t hi = std::min(lo + kBlock, enc.pairs.size());
        for (std::size_t p = lo; p < hi; ++p) {
          const auto& [src, tgt] = enc.pairs[p];
          for (std::size_t j = 0; j < tgt.size(); ++j) {
            const std::vector<double> w = position_weights(
                src.size(), j, tgt.size(), options.diagonal_prior,
                options.diagonal_tension);
            double denom = 0.0;
            for (std::size_t i = 0; i < src.size(); ++i) {
              denom += w[i] * prob[src[i]].at(tgt[j]);
            }
            ll += std::log(denom);
            for (std::size_t i = 0; i < src.size(); ++i) {
              const double post = w[i] * prob[src[i]].at(tgt[j]) / denom;
              counts[(static_cast<std::uint64_t>(src[i]) << 32) | tgt[j]] += post;
            }
          }
        }
        block_ll[b] = ll;
      }
    };
    if (workers == 1) {
      run();
    } else {
      std::vector<std::thread> pool;
      for (unsigned k = 0; k < workers; ++k) pool.emplace_back(run);
      for (auto& th : pool) th.join();
    }

    std::vector<std::unordered_map<std::uint32_t, double>> counts(src_vocab);
    double ll = 0.0;
    for (std::size_t b = 0; b < n_blocks; ++b) {
      ll += block_ll[b];
      for (const auto& [key, c] : block_counts[b]) {
        counts[key >> 32][static_cast<std::uint32_t>(key)] += c;
      }
    }
    ll_history.push_back(ll);

    for (std::size_t s = 0; s < src_vocab; ++s) {
      double total = 0.0;
      for (const auto& [t, c] : counts[s]) total += c;
      if (total <= 0.0) continue;  // source word unseen this pass
      auto& row = prob[s];
      for (auto& [t, p] : row) p = 0.0;
      for (const auto& [t, c] : counts[s]) row[t] = c / total;
    }
  }

  TrainResult result;
  result.log_likelihood = std::move(ll_history);
  TrainAccess::fill(result.table, std::move(enc), std::move(prob),
                    options.diagonal_prior
                        ? std::optional<double>(options.diagonal_tension)
                        : std::nullopt);
  return result;
}

AlignmentSet viterbi_align(const ParallelPair& pair,
                           const TranslationTable& table,
                           AlignDirection direction) {
  AlignmentSet result;
  result.pair_id = pair.id;
  if (direction == AlignDirection::SrcToTgt) {
    for (std::size_t j = 0; j < pair.tgt_tokens.size(); ++j) {
      std::size_t best = 0;
      double best_p = -1.0;
      for (std::size_t i = 0; i < pair.src_tokens.size(); ++i) {
        const double p = table.prob(pair.src_tokens[i], pair.tgt_tokens[j]);
        if (p > best_p) {
          best_p = p;
          best = i;
        }
      }
      result.links.push_back({static_cast<std::uint32_t>(best), static_cast<std::uint32_t>(j)});
    }
  } else {
    for (std::size_t i = 0; i < pair.src_tokens.size(); ++i) {
      std::size_t best = 0;
      double best_p = -1.0;
      for (std::size_t j = 0; j < pair.tgt_tokens.size(); ++j) {
        const double p = table.prob(pair.tgt_tokens[j], pair.src_tokens[i]);
        if (p > best_p) {
          best_p = p;
          best = j;
        }
      }
      result.links.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(best)});
    }
  }
  result.normalize();
  return result;
}

}  // namespace cswmt
