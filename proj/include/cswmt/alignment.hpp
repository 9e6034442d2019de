#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "cswmt/types.hpp"

namespace cswmt {

struct AlignmentLink {
  std::uint32_t s = 0;  // source token index
  std::uint32_t t = 0;  // target token index
  auto operator<=>(const AlignmentLink&) const = default;
};

// Duplicate-free link set for one sentence pair, kept sorted by (s, t).
struct AlignmentSet {
  std::int64_t pair_id = -1;
  std::vector<AlignmentLink> links;

  bool contains(std::uint32_t s, std::uint32_t t) const;
  // Sorts and removes duplicates.
  void normalize();
};

// Parses one Pharaoh line ("i-j" items, source-target convention) and checks
// every index against the pair's bounds. Throws std::runtime_error with the
// column position for malformed items and with the pair id for out-of-bounds
// indices.
AlignmentSet parse_pharaoh(const std::string& line, const ParallelPair& pair);

std::string format_pharaoh(const AlignmentSet& alignment);

// Swaps source and target indices of every link.
AlignmentSet transpose(const AlignmentSet& alignment);

enum class Symmetrization { Intersection, Union, GrowDiagFinalAnd };

Symmetrization parse_symmetrization(const std::string& name);
std::string to_string(Symmetrization heuristic);

// Combines two directional alignments of the same pair, both given in the
// pair's source-target index convention (transpose() a reverse-direction
// file before calling). Throws on pair-id mismatch. For every heuristic the
// result satisfies intersection <= result <= union.
AlignmentSet symmetrize(const AlignmentSet& fwd, const AlignmentSet& rev,
                        Symmetrization heuristic, std::size_t src_len,
                        std::size_t tgt_len);

}  // namespace cswmt
