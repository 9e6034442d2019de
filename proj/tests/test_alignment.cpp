#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <set>

#include "cswmt/alignment.hpp"
#include "cswmt/rng.hpp"
#include "test_util.hpp"

using namespace cswmt;

namespace {

ParallelPair dummy_pair(std::size_t src_len, std::size_t tgt_len,
                        std::int64_t id = 0) {
  ParallelPair pair;
  pair.id = id;
  pair.src_lang = "en";
  pair.tgt_lang = "fr";
  pair.src_tokens.assign(src_len, "a");
  pair.tgt_tokens.assign(tgt_len, "b");
  return pair;
}

AlignmentSet make_set(std::int64_t id, std::vector<AlignmentLink> links) {
  AlignmentSet set;
  set.pair_id = id;
  set.links = std::move(links);
  set.normalize();
  return set;
}

AlignmentSet random_set(Rng& rng, std::int64_t id, std::size_t src_len,
                        std::size_t tgt_len, double density) {
  AlignmentSet set;
  set.pair_id = id;
  for (std::uint32_t s = 0; s < src_len; ++s) {
    for (std::uint32_t t = 0; t < tgt_len; ++t) {
      if (rng.uniform_real() < density) set.links.push_back({s, t});
    }
  }
  set.normalize();
  return set;
}

}  // namespace

TEST_CASE("pharaoh parsing") {
  const ParallelPair pair = dummy_pair(3, 3, 7);
  const AlignmentSet set = parse_pharaoh("0-0 1-2 2-1", pair);
  CHECK(set.pair_id == 7);
  CHECK(set.links == std::vector<AlignmentLink>{{0, 0}, {1, 2}, {2, 1}});

  CHECK(parse_pharaoh("", pair).links.empty());
  CHECK(parse_pharaoh("   ", pair).links.empty());
  CHECK(parse_pharaoh("0-0 0-0 0-0", pair).links.size() == 1);

  CHECK_THROWS_WITH_AS(parse_pharaoh("0-5", pair), doctest::Contains("pair 7"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(parse_pharaoh("0-0 1x2", pair),
                       doctest::Contains("column 5"), std::runtime_error);
  CHECK_THROWS_AS(parse_pharaoh("-1", pair), std::runtime_error);
  CHECK_THROWS_AS(parse_pharaoh("1-", pair), std::runtime_error);
}

TEST_CASE("pharaoh formatting round-trips") {
  const ParallelPair pair = dummy_pair(4, 4);
  Rng rng(5);
  for (int i = 0; i < 100; ++i) {
    const AlignmentSet set = random_set(rng, 0, 4, 4, 0.4);
    CHECK(parse_pharaoh(format_pharaoh(set), pair).links == set.links);
  }
}

TEST_CASE("transpose swaps link coordinates") {
  const AlignmentSet set = make_set(0, {{0, 2}, {1, 0}});
  CHECK(transpose(set).links == std::vector<AlignmentLink>{{0, 1}, {2, 0}});
}

TEST_CASE("symmetrize agreement and disagreement cases") {
  const AlignmentSet fwd = make_set(0, {{0, 0}});
  const AlignmentSet rev = make_set(0, {{0, 0}});
  for (const auto h : {Symmetrization::Intersection, Symmetrization::Union,
                       Symmetrization::GrowDiagFinalAnd}) {
    CHECK(symmetrize(fwd, rev, h, 2, 2).links ==
          std::vector<AlignmentLink>{{0, 0}});
  }

  const AlignmentSet rev2 = make_set(0, {{1, 0}});
  CHECK(symmetrize(fwd, rev2, Symmetrization::Intersection, 2, 2).links.empty());
  CHECK(symmetrize(fwd, rev2, Symmetrization::Union, 2, 2).links ==
        std::vector<AlignmentLink>{{0, 0}, {1, 0}});
}

TEST_CASE("symmetrize rejects mismatched pair ids") {
  const AlignmentSet fwd = make_set(0, {{0, 0}});
  const AlignmentSet rev = make_set(1, {{0, 0}});
  CHECK_THROWS_AS(symmetrize(fwd, rev, Symmetrization::Union, 2, 2),
                  std::runtime_error);
}

TEST_CASE("grow-diag-final-and hand-checked case") {
  // intersection {(0,0)}; (1,1) and then (2,1) join through diagonal growth.
  const AlignmentSet fwd = make_set(0, {{0, 0}, {1, 1}});
  const AlignmentSet rev = make_set(0, {{0, 0}, {2, 1}});
  const AlignmentSet gdfa =
      symmetrize(fwd, rev, Symmetrization::GrowDiagFinalAnd, 3, 2);
  CHECK(gdfa.links == std::vector<AlignmentLink>{{0, 0}, {1, 1}, {2, 1}});

  // final-and skips (2,0) because target 0 is already aligned, then adds
  // the fully unaligned (2,2).
  const AlignmentSet fwd2 = make_set(0, {{0, 0}, {2, 0}});
  const AlignmentSet rev2 = make_set(0, {{0, 0}, {2, 2}});
  const AlignmentSet gdfa2 =
      symmetrize(fwd2, rev2, Symmetrization::GrowDiagFinalAnd, 3, 3);
  CHECK(gdfa2.links == std::vector<AlignmentLink>{{0, 0}, {2, 2}});
}

TEST_CASE("intersection <= gdfa <= union on random link sets") {
  Rng rng(42);
  for (int round = 0; round < 1000; ++round) {
    const std::size_t src_len = 1 + rng.uniform(7);
    const std::size_t tgt_len = 1 + rng.uniform(7);
    const AlignmentSet fwd = random_set(rng, 0, src_len, tgt_len, 0.3);
    const AlignmentSet rev = random_set(rng, 0, src_len, tgt_len, 0.3);

    // Brute-force set algebra, independent of symmetrize().
    std::set<AlignmentLink> a(fwd.links.begin(), fwd.links.end());
    std::set<AlignmentLink> b(rev.links.begin(), rev.links.end());
    std::set<AlignmentLink> inter, uni;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::inserter(inter, inter.end()));
    std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                   std::inserter(uni, uni.end()));

    const AlignmentSet got_inter =
        symmetrize(fwd, rev, Symmetrization::Intersection, src_len, tgt_len);
    const AlignmentSet got_union =
        symmetrize(fwd, rev, Symmetrization::Union, src_len, tgt_len);
    CHECK(std::set<AlignmentLink>(got_inter.links.begin(), got_inter.links.end()) == inter);
    CHECK(std::set<AlignmentLink>(got_union.links.begin(), got_union.links.end()) == uni);

    const AlignmentSet gdfa =
        symmetrize(fwd, rev, Symmetrization::GrowDiagFinalAnd, src_len, tgt_len);
    const std::set<AlignmentLink> g(gdfa.links.begin(), gdfa.links.end());
    CHECK(std::includes(g.begin(), g.end(), inter.begin(), inter.end()));
    CHECK(std::includes(uni.begin(), uni.end(), g.begin(), g.end()));
  }
}

TEST_CASE("heuristic names parse") {
  CHECK(parse_symmetrization("grow-diag-final-and") == Symmetrization::GrowDiagFinalAnd);
  CHECK(to_string(Symmetrization::Intersection) == "intersection");
  CHECK_THROWS_AS(parse_symmetrization("nope"), std::runtime_error);
}
