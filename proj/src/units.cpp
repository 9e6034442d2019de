#include "cswmt/units.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>

namespace cswmt {

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;

  explicit UnionFind(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<AlignmentUnit> extract_units(const ParallelPair& pair,
                                         const AlignmentSet& alignment) {
  const std::uint32_t src_len = static_cast<std::uint32_t>(pair.src_tokens.size());
  const std::uint32_t tgt_len = static_cast<std::uint32_t>(pair.tgt_tokens.size());

  // Token nodes: source 0..src_len-1, target src_len..src_len+tgt_len-1.
  UnionFind uf(src_len + tgt_len);
  for (const AlignmentLink& link : alignment.links) {
    uf.unite(link.s, src_len + link.t);
  }

  struct Component {
    std::uint32_t s_lo = UINT32_MAX, s_hi = 0, s_count = 0;
    std::uint32_t t_lo = UINT32_MAX, t_hi = 0, t_count = 0;
  };
  std::vector<Component> comps(src_len + tgt_len);
  std::vector<char> aligned_src(src_len, 0), aligned_tgt(tgt_len, 0);
  for (const AlignmentLink& link : alignment.links) {
    aligned_src[link.s] = 1;
    aligned_tgt[link.t] = 1;
  }
  for (std::uint32_t s = 0; s < src_len; ++s) {
    if (!aligned_src[s]) continue;
    Component& c = comps[uf.find(s)];
    c.s_lo = std::min(c.s_lo, s);
    c.s_hi = std::max(c.s_hi, s);
    ++c.s_count;
  }
  for (std::uint32_t t = 0; t < tgt_len; ++t) {
    if (!aligned_tgt[t]) continue;
    Component& c = comps[uf.find(src_len + t)];
    c.t_lo = std::min(c.t_lo, t);
    c.t_hi = std::max(c.t_hi, t);
    ++c.t_count;
  }

  std::vector<AlignmentUnit> units;
  for (const Component& c : comps) {
    if (c.s_count == 0 || c.t_count == 0) continue;
    // Both index sets must be contiguous ranges.
    if (c.s_hi - c.s_lo + 1 != c.s_count) continue;
    if (c.t_hi - c.t_lo + 1 != c.t_count) continue;
    AlignmentUnit unit;
    unit.src_span = {c.s_lo, c.s_hi};
    unit.tgt_span = {c.t_lo, c.t_hi};
    unit.src_text.assign(pair.src_tokens.begin() + c.s_lo,
                         pair.src_tokens.begin() + c.s_hi + 1);
    unit.tgt_text.assign(pair.tgt_tokens.begin() + c.t_lo,
                         pair.tgt_tokens.begin() + c.t_hi + 1);
    units.push_back(std::move(unit));
  }
  std::sort(units.begin(), units.end(),
            [](const AlignmentUnit& a, const AlignmentUnit& b) {
              return a.src_span.lo < b.src_span.lo;
            });
  return units;
}

void write_units_tsv(std::ostream& out, std::int64_t pair_id,
                     const std::vector<AlignmentUnit>& units) {
  for (const AlignmentUnit& unit : units) {
    out << pair_id << '\t' << unit.src_span.lo << '\t' << unit.src_span.hi
        << '\t' << unit.tgt_span.lo << '\t' << unit.tgt_span.hi << '\t'
        << join_tokens(unit.src_text) << '\t' << join_tokens(unit.tgt_text)
        << '\n';
  }
}

}  // namespace cswmt
