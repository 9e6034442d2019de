#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>

#include "cswmt/corpus.hpp"
#include "cswmt/rng.hpp"
#include "cswmt/types.hpp"
#include "test_util.hpp"

using namespace cswmt;
using testutil::TempDir;
using testutil::write_file;

namespace {

std::vector<ParallelPair> drain(ParallelReader& reader) {
  std::vector<ParallelPair> pairs;
  while (auto pair = reader.next()) pairs.push_back(std::move(*pair));
  return pairs;
}

ParallelPair pair_of_lengths(std::size_t s, std::size_t t) {
  ParallelPair pair;
  pair.src_lang = "en";
  pair.tgt_lang = "fr";
  pair.src_tokens.assign(s, "a");
  pair.tgt_tokens.assign(t, "b");
  return pair;
}

}  // namespace

TEST_CASE("reader parses whitespace-separated pairs in file order") {
  TempDir dir("corpus-basic");
  write_file(dir.path() / "s.txt", "a b\nc\n");
  write_file(dir.path() / "t.txt", "x y z\nw\n");
  ParallelReader reader((dir.path() / "s.txt").string(),
                        (dir.path() / "t.txt").string(), "en", "fr");
  const auto pairs = drain(reader);
  REQUIRE(pairs.size() == 2);
  CHECK(pairs[0].id == 0);
  CHECK(pairs[0].src_tokens == TokenSeq{"a", "b"});
  CHECK(pairs[0].tgt_tokens == TokenSeq{"x", "y", "z"});
  CHECK(pairs[1].id == 1);
  CHECK(reader.stats().pairs_read == 2);
  CHECK(reader.stats().pairs_kept == 2);
}

TEST_CASE("line count mismatch names the first divergent line") {
  TempDir dir("corpus-mismatch");
  write_file(dir.path() / "s.txt", "a\nb\nc\n");
  write_file(dir.path() / "t.txt", "x\ny\n");
  ParallelReader reader((dir.path() / "s.txt").string(),
                        (dir.path() / "t.txt").string(), "en", "fr");
  CHECK_THROWS_WITH_AS(drain(reader), doctest::Contains("line 3"),
                       std::runtime_error);
}

TEST_CASE("empty lines are dropped, counted, and consume no id") {
  TempDir dir("corpus-empty");
  write_file(dir.path() / "s.txt", "a\n\nb\n");
  write_file(dir.path() / "t.txt", "x\ny\n   \n");
  ParallelReader reader((dir.path() / "s.txt").string(),
                        (dir.path() / "t.txt").string(), "en", "fr");
  const auto pairs = drain(reader);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0].id == 0);
  CHECK(pairs[0].src_tokens == TokenSeq{"a"});
  CHECK(reader.stats().pairs_read == 3);
  CHECK(reader.stats().dropped_invalid == 2);
  CHECK(reader.stats().consistent());
}

TEST_CASE("reader rejects identical languages") {
  TempDir dir("corpus-langs");
  write_file(dir.path() / "s.txt", "a\n");
  write_file(dir.path() / "t.txt", "x\n");
  CHECK_THROWS_AS(ParallelReader((dir.path() / "s.txt").string(),
                                 (dir.path() / "t.txt").string(), "en", "en"),
                  std::runtime_error);
}

TEST_CASE("oregon fixture tokenizes to the committed token files") {
  const auto raw_en = testutil::read_file(testutil::data_path("oregon.raw.en"));
  const auto raw_fr = testutil::read_file(testutil::data_path("oregon.raw.fr"));
  const TokenSeq en = simple_tokenize(raw_en);
  const TokenSeq fr = simple_tokenize(raw_fr);
  CHECK(en.size() == 12);
  CHECK(fr.size() == 16);
  CHECK(en == split_tokens(testutil::read_file(testutil::data_path("oregon.en"))));
  CHECK(fr == split_tokens(testutil::read_file(testutil::data_path("oregon.fr"))));
  CHECK(fr[1] == "l'");
  CHECK(fr[15] == ".");
}

TEST_CASE("filter drops on ratio and length with strict inequalities") {
  CHECK(filter_pair(pair_of_lengths(10, 16)) == FilterDecision::DropRatio);
  CHECK(filter_pair(pair_of_lengths(251, 251)) == FilterDecision::DropLength);
  CHECK(filter_pair(pair_of_lengths(10, 15)) == FilterDecision::Keep);
  CHECK(filter_pair(pair_of_lengths(250, 250)) == FilterDecision::Keep);
  CHECK(filter_pair(pair_of_lengths(1, 1)) == FilterDecision::Keep);
}

TEST_CASE("filter decision is symmetric in the two sides") {
  Rng rng(7);
  for (int i = 0; i < 2000; ++i) {
    const auto s = 1 + rng.uniform(300);
    const auto t = 1 + rng.uniform(300);
    const ParallelPair pair = pair_of_lengths(s, t);
    CHECK(filter_pair(pair) == filter_pair(swap_sides(pair)));
  }
}

TEST_CASE("stats reconcile with the input line count") {
  TempDir dir("corpus-stats");
  Rng rng(11);
  std::string src, tgt;
  std::size_t lines = 0;
  for (int i = 0; i < 500; ++i) {
    ++lines;
    if (rng.uniform(10) == 0) {
      src += "\n";
      tgt += "x\n";
      continue;
    }
    const auto s = 1 + rng.uniform(12);
    const auto t = 1 + rng.uniform(12);
    for (std::uint64_t k = 0; k < s; ++k) src += "a ";
    for (std::uint64_t k = 0; k < t; ++k) tgt += "b ";
    src += "\n";
    tgt += "\n";
  }
  write_file(dir.path() / "s.txt", src);
  write_file(dir.path() / "t.txt", tgt);

  FilterOptions opts;
  opts.max_len = 8;
  opts.max_ratio = 1.5;
  opts.keep_hook = [](const ParallelPair& pair) {
    return pair.src_tokens.size() % 7 != 0;
  };
  ParallelReader reader((dir.path() / "s.txt").string(),
                        (dir.path() / "t.txt").string(), "en", "fr", opts);
  const auto pairs = drain(reader);
  const CorpusStats& stats = reader.stats();
  CHECK(stats.pairs_read == lines);
  CHECK(stats.pairs_kept == pairs.size());
  CHECK(stats.dropped_predicate > 0);
  CHECK(stats.consistent());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    CHECK(pairs[i].id == static_cast<std::int64_t>(i));
  }
}

TEST_CASE("join and split round-trip") {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    TokenSeq tokens;
    const auto n = 1 + rng.uniform(20);
    for (std::uint64_t k = 0; k < n; ++k) {
      tokens.push_back("t" + std::to_string(rng.uniform(50)));
    }
    CHECK(split_tokens(join_tokens(tokens)) == tokens);
  }
}

TEST_CASE("token validity") {
  CHECK(valid_token("abc"));
  CHECK_FALSE(valid_token(""));
  CHECK_FALSE(valid_token("a b"));
  CHECK_FALSE(valid_token("a\tb"));
}
