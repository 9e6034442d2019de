#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "cswmt/alignment.hpp"
#include "cswmt/types.hpp"

namespace cswmt {

// Closed token index interval [lo, hi].
struct Span {
  std::uint32_t lo = 0;
  std::uint32_t hi = 0;

  std::uint32_t size() const { return hi - lo + 1; }
  bool contains(std::uint32_t i) const { return i >= lo && i <= hi; }
  auto operator<=>(const Span&) const = default;
};

// Minimal bilingual fragment pair: the smallest contiguous span pair such
// that no alignment link crosses its boundary. These are the substitution
// atoms of the generator.
struct AlignmentUnit {
  Span src_span;
  Span tgt_span;
  TokenSeq src_text;
  TokenSeq tgt_text;
};

// Extracts all minimal alignment units of a pair: connected components of
// the bipartite token graph induced by the links, kept only when both index
// sets are contiguous. Unaligned tokens belong to no unit. Units are sorted
// by source span start.
std::vector<AlignmentUnit> extract_units(const ParallelPair& pair,
                                         const AlignmentSet& alignment);

// One TSV row per unit: pair_id, s_lo, s_hi, t_lo, t_hi, src_text, tgt_text.
void write_units_tsv(std::ostream& out, std::int64_t pair_id,
                     const std::vector<AlignmentUnit>& units);

}  // namespace cswmt
