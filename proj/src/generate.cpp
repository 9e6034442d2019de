#include "cswmt/generate.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace cswmt {

std::string sample_matrix(const ParallelPair& pair, const GenConfig& config,
                          Rng& rng) {
  if (config.matrix_policy == "random") {
    return rng.uniform(2) == 0 ? pair.src_lang : pair.tgt_lang;
  }
  if (config.matrix_policy == pair.src_lang || config.matrix_policy == pair.tgt_lang) {
    return config.matrix_policy;
  }
  throw std::runtime_error("matrix policy '" + config.matrix_policy +
                           "' names neither language of the pair");
}

std::vector<double> replacement_pmf(unsigned rep) {
  if (rep == 0) throw std::runtime_error("replacement_pmf: rep must be >= 1");
  // Halving weights 2^-k renormalized over k = 1..rep.
  const double z = 1.0 - std::ldexp(1.0, -static_cast<int>(rep));
  std::vector<double> pmf(rep);
  for (unsigned k = 1; k <= rep; ++k) {
    pmf[k - 1] = std::ldexp(1.0, -static_cast<int>(k)) / z;
  }
  return pmf;
}

unsigned sample_replacement_count(unsigned rep, Rng& rng) {
  if (rep == 0) throw std::runtime_error("sample_replacement_count: rep must be >= 1");
  const double z = 1.0 - std::ldexp(1.0, -static_cast<int>(rep));
  const double u = rng.uniform_real();
  double cdf = 0.0;
  for (unsigned k = 1; k < rep; ++k) {
    cdf += std::ldexp(1.0, -static_cast<int>(k)) / z;
    if (u < cdf) return k;
  }
  return rep;
}

unsigned cap_replacements(unsigned r, std::size_t source_len,
                          std::size_t target_len) {
  const std::size_t half = std::min(source_len / 2, target_len / 2);
  return static_cast<unsigned>(std::min<std::size_t>(half, r));
}

namespace {

struct MatrixView {
  bool matrix_is_src = true;
  const TokenSeq* matrix_tokens = nullptr;
  const TokenSeq* embedded_tokens = nullptr;
  std::string matrix_lang, embedded_lang;
};

MatrixView matrix_view(const ParallelPair& pair, const std::string& matrix_lang) {
  MatrixView view;
  if (matrix_lang == pair.src_lang) {
    view.matrix_is_src = true;
    view.matrix_tokens = &pair.src_tokens;
    view.embedded_tokens = &pair.tgt_tokens;
    view.matrix_lang = pair.src_lang;
    view.embedded_lang = pair.tgt_lang;
  } else if (matrix_lang == pair.tgt_lang) {
    view.matrix_is_src = false;
    view.matrix_tokens = &pair.tgt_tokens;
    view.embedded_tokens = &pair.src_tokens;
    view.matrix_lang = pair.tgt_lang;
    view.embedded_lang = pair.src_lang;
  } else {
    throw std::runtime_error("matrix language '" + matrix_lang +
                             "' names neither language of pair " +
                             std::to_string(pair.id));
  }
  return view;
}

}  // namespace

CswExample synthesize_forced(const ParallelPair& pair,
                             const std::vector<AlignmentUnit>& units,
                             const std::vector<std::size_t>& unit_indices,
                             const std::string& matrix_lang) {
  const MatrixView view = matrix_view(pair, matrix_lang);
  const TokenSeq& matrix = *view.matrix_tokens;

  std::vector<ChosenUnit> chosen;
  chosen.reserve(unit_indices.size());
  for (std::size_t idx : unit_indices) {
    if (idx >= units.size()) {
      throw std::runtime_error("unit index " + std::to_string(idx) +
                               " out of range for pair " + std::to_string(pair.id));
    }
    const AlignmentUnit& unit = units[idx];
    ChosenUnit cu;
    cu.matrix_span = view.matrix_is_src ? unit.src_span : unit.tgt_span;
    cu.embedded_text = view.matrix_is_src ? unit.tgt_text : unit.src_text;
    if (cu.matrix_span.hi >= matrix.size()) {
      throw std::runtime_error("unit span out of bounds for pair " +
                               std::to_string(pair.id));
    }
    chosen.push_back(std::move(cu));
  }
  std::sort(chosen.begin(), chosen.end(),
            [](const ChosenUnit& a, const ChosenUnit& b) {
              return a.matrix_span.lo < b.matrix_span.lo;
            });
  for (std::size_t i = 1; i < chosen.size(); ++i) {
    if (chosen[i].matrix_span.lo <= chosen[i - 1].matrix_span.hi) {
      throw std::runtime_error("overlapping replacement spans for pair " +
                               std::to_string(pair.id));
    }
  }

  CswExample example;
  example.id = pair.id;
  example.matrix_lang = view.matrix_lang;
  example.embedded_lang = view.embedded_lang;
  example.matrix_ref = matrix;
  example.embedded_ref = *view.embedded_tokens;
  example.n_replacements = static_cast<unsigned>(chosen.size());

  std::size_t next = 0;
  for (std::uint32_t pos = 0; pos < matrix.size();) {
    if (next < chosen.size() && pos == chosen[next].matrix_span.lo) {
      for (const Token& tok : chosen[next].embedded_text) {
        example.csw_tokens.push_back(tok);
        example.labels.push_back(view.embedded_lang);
      }
      pos = chosen[next].matrix_span.hi + 1;
      ++next;
    } else {
      example.csw_tokens.push_back(matrix[pos]);
      example.labels.push_back(view.matrix_lang);
      ++pos;
    }
  }
  example.chosen_units = std::move(chosen);
  return example;
}

std::optional<CswExample> synthesize(const ParallelPair& pair,
                                     const std::vector<AlignmentUnit>& units,
                                     const std::string& matrix_lang, Rng& rng,
                                     const GenConfig& config,
                                     std::string* skip_reason) {
  if (!config.forced_units.empty()) {
    return synthesize_forced(pair, units, config.forced_units, matrix_lang);
  }
  if (units.empty()) {
    if (skip_reason) *skip_reason = "no-units";
    return std::nullopt;
  }
  const MatrixView view = matrix_view(pair, matrix_lang);
  const unsigned r = sample_replacement_count(config.rep, rng);
  const unsigned n = cap_replacements(r, view.matrix_tokens->size(),
                                      view.embedded_tokens->size());
  if (n == 0) {
    if (skip_reason) *skip_reason = "cap-zero";
    return std::nullopt;
  }
  const std::size_t k = std::min<std::size_t>(n, units.size());

  // Uniform k-subset via partial Fisher-Yates.
  std::vector<std::size_t> order(units.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.uniform(order.size() - i));
    std::swap(order[i], order[j]);
  }
  order.resize(k);
  return synthesize_forced(pair, units, order, matrix_lang);
}

namespace {

CswExample monolingual_passthrough(const ParallelPair& pair,
                                   const std::string& matrix_lang) {
  const MatrixView view = matrix_view(pair, matrix_lang);
  CswExample example;
  example.id = pair.id;
  example.matrix_lang = view.matrix_lang;
  example.embedded_lang = view.embedded_lang;
  example.csw_tokens = *view.matrix_tokens;
  example.labels.assign(view.matrix_tokens->size(), view.matrix_lang);
  example.matrix_ref = *view.matrix_tokens;
  example.embedded_ref = *view.embedded_tokens;
  example.n_replacements = 0;
  example.monolingual = true;
  return example;
}

}  // namespace

GenerateResult generate_corpus(const std::vector<ParallelPair>& pairs,
                               const std::vector<AlignmentSet>& alignments,
                               const GenConfig& config, unsigned workers) {
  if (pairs.size() != alignments.size()) {
    throw std::runtime_error("generate_corpus: " + std::to_string(pairs.size()) +
                             " pairs vs " + std::to_string(alignments.size()) +
                             " alignments");
  }
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (alignments[i].pair_id != pairs[i].id) {
      throw std::runtime_error("generate_corpus: pair/alignment id mismatch at record " +
                               std::to_string(i));
    }
  }

  struct RecordOut {
    std::optional<CswExample> example;
    std::optional<CswExample> monolingual;
    std::optional<SkipRecord> skip;
  };
  std::vector<RecordOut> out(pairs.size());

  constexpr std::size_t kBlock = 512;
  const std::size_t n_blocks = (pairs.size() + kBlock - 1) / kBlock;
  std::atomic<std::size_t> next_block{0};
  auto run = [&]() {
    for (;;) {
      const std::size_t b = next_block.fetch_add(1);
      if (b >= n_blocks) return;
      const std::size_t lo = b * kBlock;
      const std::size_t hi = std::min(lo + kBlock, pairs.size());
      for (std::size_t i = lo; i < hi; ++i) {
        const ParallelPair& pair = pairs[i];
        Rng rng = record_rng(config.seed, static_cast<std::uint64_t>(pair.id));
        const std::string matrix = sample_matrix(pair, config, rng);
        const std::vector<AlignmentUnit> units = extract_units(pair, alignments[i]);
        std::string reason;
        std::optional<CswExample> example =
            synthesize(pair, units, matrix, rng, config, &reason);
        if (example) {
          out[i].example = std::move(example);
        } else {
          out[i].skip = SkipRecord{pair.id, reason};
        }
        if (config.include_monolingual) {
          out[i].monolingual = monolingual_passthrough(pair, matrix);
        }
      }
    }
  };
  const unsigned n_workers = std::max(1u, workers);
  if (n_workers == 1) {
    run();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < n_workers; ++k) pool.emplace_back(run);
    for (auto& th : pool) th.join();
  }

  GenerateResult result;
  for (RecordOut& rec : out) {
    if (rec.example) result.examples.push_back(std::move(*rec.example));
    if (rec.monolingual) result.examples.push_back(std::move(*rec.monolingual));
    if (rec.skip) result.skipped.push_back(std::move(*rec.skip));
  }
  return result;
}

IncrementalSets generate_incremental(const std::vector<ParallelPair>& pairs,
                                     const std::vector<AlignmentSet>& alignments,
                                     const std::string& matrix_lang,
                                     unsigned r_max, std::uint64_t seed) {
  if (pairs.size() != alignments.size()) {
    throw std::runtime_error("generate_incremental: pairs and alignments differ in length");
  }
  if (r_max == 0) throw std::runtime_error("generate_incremental: r_max must be >= 1");

  IncrementalSets sets;
  sets.sets.assign(r_max, {});
  for (auto& s : sets.sets) s.reserve(pairs.size());

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const ParallelPair& pair = pairs[i];
    const MatrixView view = matrix_view(pair, matrix_lang);
    const std::vector<AlignmentUnit> units = extract_units(pair, alignments[i]);

    // One uniformly random permutation per sentence; set r uses its prefix,
    // so the selections are nested across r.
    Rng rng = record_rng(seed, static_cast<std::uint64_t>(pair.id));
    std::vector<std::size_t> order(units.size());
    std::iota(order.begin(), order.end(), 0);
    for (std::size_t a = 0; a + 1 < order.size(); ++a) {
      const std::size_t b = a + static_cast<std::size_t>(rng.uniform(order.size() - a));
      std::swap(order[a], order[b]);
    }

    const unsigned cap = cap_replacements(r_max, view.matrix_tokens->size(),
                                          view.embedded_tokens->size());
    const std::size_t max_feasible = std::min<std::size_t>(cap, units.size());

    for (unsigned r = 1; r <= r_max; ++r) {
      const std::size_t k = std::min<std::size_t>(r, max_feasible);
      const std::vector<std::size_t> prefix(order.begin(), order.begin() + k);
      CswExample example = synthesize_forced(pair, units, prefix, matrix_lang);
      sets.sets[r - 1].push_back(std::move(example.csw_tokens));
    }
    sets.matrix_refs.push_back(*view.matrix_tokens);
    sets.embedded_refs.push_back(*view.embedded_tokens);
    order.resize(max_feasible);
    sets.selections.push_back(std::move(order));
  }
  return sets;
}

Layout parse_layout(const std::string& name) {
  if (name == "base-csw") return Layout::BaseCsw;
  if (name == "multi-csw") return Layout::MultiCsw;
  if (name == "joint-csw") return Layout::JointCsw;
  throw std::runtime_error("unknown training layout: " + name);
}

std::string to_string(Layout layout) {
  switch (layout) {
    case Layout::BaseCsw: return "base-csw";
    case Layout::MultiCsw: return "multi-csw";
    case Layout::JointCsw: return "joint-csw";
  }
  return "?";
}

std::string lang_tag(const std::string& lang) {
  std::string tag = "<";
  for (char c : lang) tag += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  tag += '>';
  return tag;
}

std::vector<TrainingRecord> emit_training(const std::vector<CswExample>& examples,
                                          Layout layout) {
  std::vector<TrainingRecord> records;
  for (const CswExample& ex : examples) {
    switch (layout) {
      case Layout::BaseCsw: {
        for (const bool matrix_side : {true, false}) {
          TrainingRecord rec;
          rec.layout = layout;
          rec.target_lang = matrix_side ? ex.matrix_lang : ex.embedded_lang;
          rec.source_tokens = ex.csw_tokens;
          rec.target_tokens = matrix_side ? ex.matrix_ref : ex.embedded_ref;
          records.push_back(std::move(rec));
        }
        break;
      }
      case Layout::MultiCsw: {
        // The same CSW source appears twice, once per output language.
        for (const bool matrix_side : {true, false}) {
          TrainingRecord rec;
          rec.layout = layout;
          rec.target_lang = matrix_side ? ex.matrix_lang : ex.embedded_lang;
          rec.source_tokens.reserve(ex.csw_tokens.size() + 1);
          rec.source_tokens.push_back(lang_tag(rec.target_lang));
          rec.source_tokens.insert(rec.source_tokens.end(), ex.csw_tokens.begin(),
                                   ex.csw_tokens.end());
          rec.target_tokens = matrix_side ? ex.matrix_ref : ex.embedded_ref;
          records.push_back(std::move(rec));
        }
        break;
      }
      case Layout::JointCsw: {
        TrainingRecord rec;
        rec.layout = layout;
        rec.target_lang = ex.matrix_lang;
        rec.source_tokens = ex.csw_tokens;
        rec.target_tokens = ex.matrix_ref;
        rec.second_target_tokens = ex.embedded_ref;
        records.push_back(std::move(rec));
        break;
      }
    }
  }
  return records;
}

}  // namespace cswmt
