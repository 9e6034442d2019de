#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cswmt/rng.hpp"
#include "cswmt/types.hpp"
#include "cswmt/units.hpp"

namespace cswmt {

struct GenConfig {
  unsigned rep = 5;          // maximum number of replacements drawn
  std::uint64_t seed = 1;
  // "random" (each side with probability 1/2, from the per-record rng) or a
  // language code to fix the matrix side.
  std::string matrix_policy = "random";
  bool include_monolingual = false;
  unsigned incremental_max = 20;
  // Test/debug hook: when non-empty, every record replaces exactly these
  // unit indices (into the pair's span-sorted unit list) instead of sampling.
  std::vector<std::size_t> forced_units;
};

struct ChosenUnit {
  Span matrix_span;         // replaced span in the matrix sentence
  TokenSeq embedded_text;   // tokens inserted in its place
};

struct CswExample {
  std::int64_t id = 0;
  std::string matrix_lang;
  std::string embedded_lang;
  TokenSeq csw_tokens;
  std::vector<std::string> labels;  // per-token provenance language
  TokenSeq matrix_ref;
  TokenSeq embedded_ref;
  unsigned n_replacements = 0;
  std::vector<ChosenUnit> chosen_units;  // in matrix-span order
  bool monolingual = false;  // untouched passthrough record
};

struct SkipRecord {
  std::int64_t id = 0;
  std::string reason;  // "no-units" or "cap-zero"
};

// Matrix-language choice for one pair. With the "random" policy each side is
// picked with probability 1/2 from the per-record generator.
std::string sample_matrix(const ParallelPair& pair, const GenConfig& config,
                          Rng& rng);

// P(r = k) = 2^-k / (1 - 2^-rep) for k in 1..rep: the halving-weight law
// renormalized over its support. Throws when rep == 0.
unsigned sample_replacement_count(unsigned rep, Rng& rng);
std::vector<double> replacement_pmf(unsigned rep);

// n = min(floor(S/2), floor(T/2), r). May be 0.
unsigned cap_replacements(unsigned r, std::size_t source_len,
                          std::size_t target_len);

// Replaces the given units (indices into the span-sorted unit list) in the
// matrix sentence by their embedded-side text. Used by tests, by the
// incremental builder and by the forced_units hook.
CswExample synthesize_forced(const ParallelPair& pair,
                             const std::vector<AlignmentUnit>& units,
                             const std::vector<std::size_t>& unit_indices,
                             const std::string& matrix_lang);

// Full sampling path: draws r, caps it to n, picks min(n, |units|) units
// uniformly without replacement and substitutes them. Returns nullopt and a
// reason when the pair yields nothing (no units, or a cap of zero).
std::optional<CswExample> synthesize(const ParallelPair& pair,
                                     const std::vector<AlignmentUnit>& units,
                                     const std::string& matrix_lang, Rng& rng,
                                     const GenConfig& config,
                                     std::string* skip_reason = nullptr);

struct GenerateResult {
  std::vector<CswExample> examples;
  std::vector<SkipRecord> skipped;
};

// Generates one example per pair (plus monolingual passthroughs when
// configured). Deterministic for a given seed regardless of worker count:
// each record's generator is derived from (seed, pair id). Throws when pairs
// and alignments are not co-indexed.
GenerateResult generate_corpus(const std::vector<ParallelPair>& pairs,
                               const std::vector<AlignmentSet>& alignments,
                               const GenConfig& config, unsigned workers = 1);

struct IncrementalSets {
  // sets[r-1][sent] is the CSW source sentence of test set r.
  std::vector<std::vector<TokenSeq>> sets;
  std::vector<TokenSeq> matrix_refs;
  std::vector<TokenSeq> embedded_refs;
  // Per sentence: unit indices in replacement order (the nested selection).
  std::vector<std::vector<std::size_t>> selections;
};

// Builds r_max nested test sets with a fixed matrix language: the selection
// for r+1 extends the selection for r by one more uniformly-chosen unit.
// Sentences that cannot accommodate k replacements (the half-length cap, or
// too few units) carry their maximum feasible count.
IncrementalSets generate_incremental(const std::vector<ParallelPair>& pairs,
                                     const std::vector<AlignmentSet>& alignments,
                                     const std::string& matrix_lang,
                                     unsigned r_max, std::uint64_t seed);

enum class Layout { BaseCsw, MultiCsw, JointCsw };

Layout parse_layout(const std::string& name);
std::string to_string(Layout layout);

struct TrainingRecord {
  Layout layout = Layout::BaseCsw;
  std::string target_lang;
  TokenSeq source_tokens;   // with a leading <XX> tag for multi-csw
  TokenSeq target_tokens;
  TokenSeq second_target_tokens;  // joint-csw only (embedded-side reference)
};

// base-csw: one record per example and direction, split by target_lang.
// multi-csw: two tagged records per example (<XX> prepended to the source).
// joint-csw: one record per example carrying matrix and embedded targets.
std::vector<TrainingRecord> emit_training(const std::vector<CswExample>& examples,
                                          Layout layout);

// Tag token for multi-csw sources, e.g. "en" -> "<EN>".
std::string lang_tag(const std::string& lang);

}  // namespace cswmt
