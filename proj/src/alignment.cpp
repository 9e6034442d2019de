#include "cswmt/alignment.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace cswmt {

bool AlignmentSet::contains(std::uint32_t s, std::uint32_t t) const {
  return std::binary_search(links.begin(), links.end(), AlignmentLink{s, t});
}

void AlignmentSet::normalize() {
  std::sort(links.begin(), links.end());
  links.erase(std::unique(links.begin(), links.end()), links.end());
}

AlignmentSet parse_pharaoh(const std::string& line, const ParallelPair& pair) {
  AlignmentSet result;
  result.pair_id = pair.id;
  const std::size_t src_len = pair.src_tokens.size();
  const std::size_t tgt_len = pair.tgt_tokens.size();

  const auto is_sep = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n';
  };
  std::size_t i = 0;
  const std::size_t n = line.size();
  while (i < n) {
    while (i < n && is_sep(line[i])) ++i;
    if (i >= n) break;
    const std::size_t column = i + 1;  // 1-based, for error messages

    std::uint64_t s = 0, t = 0;
    bool any = false;
    while (i < n && line[i] >= '0' && line[i] <= '9') {
      s = s * 10 + static_cast<std::uint64_t>(line[i] - '0');
      any = true;
      ++i;
    }
    if (!any || i >= n || line[i] != '-') {
      throw std::runtime_error("malformed alignment item at column " +
                               std::to_string(column));
    }
    ++i;  // '-'
    any = false;
    while (i < n && line[i] >= '0' && line[i] <= '9') {
      t = t * 10 + static_cast<std::uint64_t>(line[i] - '0');
      any = true;
      ++i;
    }
    if (!any || (i < n && !is_sep(line[i]))) {
      throw std::runtime_error("malformed alignment item at column " +
                               std::to_string(column));
    }
    if (s >= src_len || t >= tgt_len) {
      throw std::runtime_error(
          "alignment index out of bounds for pair " + std::to_string(pair.id) +
          ": " + std::to_string(s) + "-" + std::to_string(t) + " (lengths " +
          std::to_string(src_len) + "/" + std::to_string(tgt_len) + ")");
    }
    result.links.push_back({static_cast<std::uint32_t>(s), static_cast<std::uint32_t>(t)});
  }
  result.normalize();
  return result;
}

std::string format_pharaoh(const AlignmentSet& alignment) {
  std::string out;
  for (std::size_t i = 0; i < alignment.links.size(); ++i) {
    if (i > 0) out += ' ';
    out += std::to_string(alignment.links[i].s);
    out += '-';
    out += std::to_string(alignment.links[i].t);
  }
  return out;
}

AlignmentSet transpose(const AlignmentSet& alignment) {
  AlignmentSet result;
  result.pair_id = alignment.pair_id;
  result.links.reserve(alignment.links.size());
  for (const AlignmentLink& link : alignment.links) {
    result.links.push_back({link.t, link.s});
  }
  result.normalize();
  return result;
}

Symmetrization parse_symmetrization(const std::string& name) {
  if (name == "intersection") return Symmetrization::Intersection;
  if (name == "union") return Symmetrization::Union;
  if (name == "grow-diag-final-and") return Symmetrization::GrowDiagFinalAnd;
  throw std::runtime_error("unknown symmetrization heuristic: " + name);
}

std::string to_string(Symmetrization heuristic) {
  switch (heuristic) {
    case Symmetrization::Intersection: return "intersection";
    case Symmetrization::Union: return "union";
    case Symmetrization::GrowDiagFinalAnd: return "grow-diag-final-and";
  }
  return "?";
}

namespace {

// grow-diag-final-and, following the standard published procedure (see the
// symmetrization section of the README for the step-by-step description).
std::vector<AlignmentLink> grow_diag_final_and(
    const std::set<AlignmentLink>& inter, const std::set<AlignmentLink>& uni,
    const std::set<AlignmentLink>& fwd, const std::set<AlignmentLink>& rev,
    std::size_t src_len, std::size_t tgt_len) {
  std::set<AlignmentLink> alignment = inter;
  std::vector<char> src_aligned(src_len, 0), tgt_aligned(tgt_len, 0);
  for (const AlignmentLink& link : alignment) {
    src_aligned[link.s] = 1;
    tgt_aligned[link.t] = 1;
  }

  static constexpr int kNeighbors[8][2] = {{-1, 0}, {0, -1}, {1, 0}, {0, 1},
                                           {-1, -1}, {-1, 1}, {1, -1}, {1, 1}};

  // grow-diag: repeatedly extend aligned points into neighboring union
  // points that touch an unaligned token, until a fixpoint.
  bool added = true;
  while (added) {
    added = false;
    // Iterate over a snapshot in (s, t) order so the result is deterministic.
    std::vector<AlignmentLink> current(alignment.begin(), alignment.end());
    for (const AlignmentLink& link : current) {
      for (const auto& d : kNeighbors) {
        const std::int64_t ns = static_cast<std::int64_t>(link.s) + d[0];
        const std::int64_t nt = static_cast<std::int64_t>(link.t) + d[1];
        if (ns < 0 || nt < 0 || ns >= static_cast<std::int64_t>(src_len) ||
            nt >= static_cast<std::int64_t>(tgt_len)) {
          continue;
        }
        const AlignmentLink cand{static_cast<std::uint32_t>(ns),
                                 static_cast<std::uint32_t>(nt)};
        if (alignment.count(cand)) continue;
        if (!uni.count(cand)) continue;
        if (src_aligned[cand.s] && tgt_aligned[cand.t]) continue;
        alignment.insert(cand);
        src_aligned[cand.s] = 1;
        tgt_aligned[cand.t] = 1;
        added = true;
      }
    }
  }

  // final-and over each directional alignment: add links where both tokens
  // are still unaligned.
  for (const std::set<AlignmentLink>* dir : {&fwd, &rev}) {
    for (const AlignmentLink& link : *dir) {
      if (src_aligned[link.s] || tgt_aligned[link.t]) continue;
      if (alignment.count(link)) continue;
      alignment.insert(link);
      src_aligned[link.s] = 1;
      tgt_aligned[link.t] = 1;
    }
  }

  return {alignment.begin(), alignment.end()};
}

}  // namespace

AlignmentSet symmetrize(const AlignmentSet& fwd, const AlignmentSet& rev,
                        Symmetrization heuristic, std::size_t src_len,
                        std::size_t tgt_len) {
  if (fwd.pair_id != rev.pair_id) {
    throw std::runtime_error("symmetrize: pair id mismatch (" +
                             std::to_string(fwd.pair_id) + " vs " +
                             std::to_string(rev.pair_id) + ")");
  }
  const std::set<AlignmentLink> a(fwd.links.begin(), fwd.links.end());
  const std::set<AlignmentLink> b(rev.links.begin(), rev.links.end());

  std::set<AlignmentLink> inter;
  std::set<AlignmentLink> uni = a;
  for (const AlignmentLink& link : b) {
    uni.insert(link);
    if (a.count(link)) inter.insert(link);
  }

  AlignmentSet result;
  result.pair_id = fwd.pair_id;
  switch (heuristic) {
    case Symmetrization::Intersection:
      result.links.assign(inter.begin(), inter.end());
      break;
    case Symmetrization::Union:
      result.links.assign(uni.begin(), uni.end());
      break;
    case Symmetrization::GrowDiagFinalAnd:
      result.links = grow_diag_final_and(inter, uni, a, b, src_len, tgt_len);
      break;
  }
  result.normalize();
  return result;
}

}  // namespace cswmt
