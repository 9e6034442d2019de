#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "cswmt/alignment.hpp"
#include "cswmt/pipeline.hpp"
#include "json.hpp"
#include "test_util.hpp"

using namespace cswmt;
using testutil::CliResult;
using testutil::TempDir;
using testutil::read_file;
using testutil::run_cli;
using testutil::write_file;

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::size_t line_count(const fs::path& path) {
  std::ifstream in(path);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) ++n;
  return n;
}

bool has_temp_leftovers(const fs::path& dir) {
  if (!fs::exists(dir)) return false;
  for (const auto& entry : fs::recursive_directory_iterator(dir)) {
    if (entry.path().string().ends_with(".tmp")) return true;
  }
  return false;
}

// Writes a block corpus as corpus files plus a Pharaoh alignment file.
void write_block_corpus(const fs::path& dir, std::size_t n, std::uint64_t seed) {
  const auto corpus = testutil::make_block_corpus(n, seed);
  std::ofstream src(dir / "corpus.en"), tgt(dir / "corpus.fr"),
      align(dir / "corpus.align");
  for (std::size_t i = 0; i < corpus.pairs.size(); ++i) {
    src << join_tokens(corpus.pairs[i].src_tokens) << '\n';
    tgt << join_tokens(corpus.pairs[i].tgt_tokens) << '\n';
    align << format_pharaoh(corpus.alignments[i]) << '\n';
  }
}

std::string write_config(const fs::path& dir, json patch) {
  json cfg{{"src_path", (dir / "corpus.en").string()},
           {"tgt_path", (dir / "corpus.fr").string()},
           {"src_lang", "en"},
           {"tgt_lang", "fr"},
           {"output_dir", (dir / "out").string()}};
  if (!patch.is_null()) cfg.update(patch, true);
  const fs::path path = dir / "config.json";
  write_file(path, cfg.dump(2));
  return path.string();
}

}  // namespace

TEST_CASE("stats subcommand writes reconciling reports") {
  TempDir dir("cli-stats");
  write_block_corpus(dir.path(), 30, 1);
  const std::string cfg = write_config(dir.path(), {});
  const CliResult result = run_cli("stats --config " + cfg, dir.path());
  CHECK(result.exit_code == 0);
  const json stats = json::parse(read_file(dir.path() / "out" / "corpus.stats.json"));
  CHECK(stats.at("pairs_read") == 30);
  CHECK(stats.at("pairs_kept") == 30);
  CHECK(fs::exists(dir.path() / "out" / "manifest.stats.json"));
}

TEST_CASE("align subcommand is reproducible and writes one line per kept pair") {
  TempDir dir("cli-align");
  write_block_corpus(dir.path(), 25, 2);
  const std::string cfg =
      write_config(dir.path(), {{"aligner", {{"iterations", 3}}}});

  const CliResult first = run_cli("align --config " + cfg, dir.path());
  REQUIRE(first.exit_code == 0);
  CHECK(line_count(dir.path() / "out" / "alignments.pharaoh") == 25);
  CHECK(fs::exists(dir.path() / "out" / "units.tsv"));
  CHECK(fs::exists(dir.path() / "out" / "ttable.fwd.txt"));
  const std::string pharaoh = read_file(dir.path() / "out" / "alignments.pharaoh");
  const std::string ttable = read_file(dir.path() / "out" / "ttable.fwd.txt");

  const CliResult second = run_cli("align --config " + cfg, dir.path());
  REQUIRE(second.exit_code == 0);
  CHECK(read_file(dir.path() / "out" / "alignments.pharaoh") == pharaoh);
  CHECK(read_file(dir.path() / "out" / "ttable.fwd.txt") == ttable);
}

TEST_CASE("generate reproduces a forced substitution row through the config hook") {
  TempDir dir("cli-forced");
  fs::copy_file(testutil::data_path("oregon.en"), dir.path() / "corpus.en");
  fs::copy_file(testutil::data_path("oregon.fr"), dir.path() / "corpus.fr");
  fs::copy_file(testutil::data_path("oregon.align"), dir.path() / "corpus.align");
  const std::string cfg = write_config(
      dir.path(),
      {{"alignments", (dir.path() / "corpus.align").string()},
       {"gen",
        {{"matrix_policy", "en"}, {"forced_units", {0, 3, 6}}, {"seed", 1}}},
       {"layouts", {"multi-csw"}}});

  const CliResult result = run_cli("generate --config " + cfg, dir.path());
  REQUIRE(result.exit_code == 0);

  std::ifstream in(dir.path() / "out" / "examples.jsonl");
  const auto examples = read_examples_jsonl(in);
  REQUIRE(examples.size() == 1);
  CHECK(join_tokens(examples[0].csw_tokens) ==
        "Dans Oregon , les planificateurs are experimenting en offrant aux "
        "drivers different choices .");
  CHECK(examples[0].n_replacements == 3);

  CHECK(line_count(dir.path() / "out" / "multi-csw.src") == 2);
  CHECK(line_count(dir.path() / "out" / "multi-csw.tgt") == 2);
  const json manifest =
      json::parse(read_file(dir.path() / "out" / "manifest.generate.json"));
  CHECK(manifest.at("counts").at("examples") == 1);
  CHECK(manifest.at("version").is_string());
}

TEST_CASE("generate without alignments fails actionably and atomically") {
  TempDir dir("cli-noalign");
  write_block_corpus(dir.path(), 10, 3);
  const std::string cfg = write_config(dir.path(), {});
  const CliResult result = run_cli("generate --config " + cfg, dir.path());
  CHECK(result.exit_code != 0);
  CHECK(result.output.find("alignments") != std::string::npos);
  CHECK_FALSE(fs::exists(dir.path() / "out" / "examples.jsonl"));
}

TEST_CASE("a truncated alignment file aborts without partial outputs") {
  TempDir dir("cli-corrupt");
  write_block_corpus(dir.path(), 10, 4);
  // Keep only the first 3 alignment lines.
  std::string truncated;
  std::istringstream all(read_file(dir.path() / "corpus.align"));
  std::string line;
  for (int i = 0; i < 3 && std::getline(all, line); ++i) truncated += line + "\n";
  write_file(dir.path() / "corpus.align", truncated);

  const std::string cfg = write_config(
      dir.path(), {{"alignments", (dir.path() / "corpus.align").string()}});
  const CliResult result = run_cli("generate --config " + cfg, dir.path());
  CHECK(result.exit_code != 0);
  CHECK_FALSE(fs::exists(dir.path() / "out" / "examples.jsonl"));
  CHECK_FALSE(has_temp_leftovers(dir.path() / "out"));
}

TEST_CASE("generate, emit-training and score work end to end") {
  TempDir dir("cli-endtoend");
  write_block_corpus(dir.path(), 40, 5);
  const std::string cfg = write_config(
      dir.path(), {{"alignments", (dir.path() / "corpus.align").string()},
                   {"gen", {{"rep", 4}, {"seed", 7}}}});

  REQUIRE(run_cli("generate --config " + cfg, dir.path()).exit_code == 0);
  std::ifstream in(dir.path() / "out" / "examples.jsonl");
  const auto examples = read_examples_jsonl(in);
  REQUIRE(examples.size() == 40);

  // emit-training over the generated file.
  const std::string emit_cfg = write_config(
      dir.path(), {{"examples_path", (dir.path() / "out" / "examples.jsonl").string()},
                   {"layouts", {"multi-csw", "joint-csw", "base-csw"}}});
  REQUIRE(run_cli("emit-training --config " + emit_cfg, dir.path()).exit_code == 0);
  CHECK(line_count(dir.path() / "out" / "multi-csw.src") == 80);
  CHECK(line_count(dir.path() / "out" / "joint-csw.tsv") == 40);
  CHECK(line_count(dir.path() / "out" / "base-csw.to-en.src") +
            line_count(dir.path() / "out" / "base-csw.to-fr.src") ==
        80);

  // Perfect hypotheses: the target-side references themselves.
  std::ofstream hyps_out(dir.path() / "hyps.txt");
  for (const CswExample& ex : examples) {
    hyps_out << join_tokens(ex.matrix_lang == "fr" ? ex.matrix_ref : ex.embedded_ref)
             << '\n';
  }
  hyps_out.close();

  const CliResult scored = run_cli(
      "score --config " + emit_cfg + " --hyps " + (dir.path() / "hyps.txt").string() +
          " --target-lang fr",
      dir.path());
  REQUIRE(scored.exit_code == 0);
  bool saw_bleu = false, saw_copy = false;
  std::istringstream records(read_file(dir.path() / "out" / "score.report.jsonl"));
  std::string line;
  while (std::getline(records, line)) {
    const json rec = json::parse(line);
    if (rec.at("metric") == "bleu") {
      saw_bleu = true;
      CHECK(rec.at("value").at("score").get<double>() == doctest::Approx(100.0));
    }
    if (rec.at("metric") == "copy") {
      saw_copy = true;
      CHECK(rec.at("copy_rate").get<double>() == doctest::Approx(100.0));
    }
  }
  CHECK(saw_bleu);
  CHECK(saw_copy);
}

TEST_CASE("monolingual passthroughs are interleaved and counted in the manifest") {
  TempDir dir("cli-mono");
  write_block_corpus(dir.path(), 15, 9);
  const std::string cfg = write_config(
      dir.path(), {{"alignments", (dir.path() / "corpus.align").string()},
                   {"gen", {{"include_monolingual", true}, {"seed", 2}}}});
  REQUIRE(run_cli("generate --config " + cfg, dir.path()).exit_code == 0);
  std::ifstream in(dir.path() / "out" / "examples.jsonl");
  const auto examples = read_examples_jsonl(in);
  CHECK(examples.size() == 30);
  const json manifest =
      json::parse(read_file(dir.path() / "out" / "manifest.generate.json"));
  CHECK(manifest.at("counts").at("monolingual") == 15);
}

TEST_CASE("incremental subcommand writes sets, references and curve") {
  TempDir dir("cli-incremental");
  write_block_corpus(dir.path(), 25, 6);
  const std::string cfg = write_config(
      dir.path(), {{"alignments", (dir.path() / "corpus.align").string()},
                   {"gen", {{"matrix_policy", "en"}, {"incremental_max", 5}, {"seed", 3}}}});

  const CliResult result = run_cli("incremental --config " + cfg, dir.path());
  REQUIRE(result.exit_code == 0);
  for (int r = 1; r <= 5; ++r) {
    CHECK(line_count(dir.path() / "out" / ("csw.r" + std::to_string(r) + ".txt")) == 25);
  }
  CHECK(line_count(dir.path() / "out" / "curve.csv") == 6);  // header + 5 rows
  const std::string curve = read_file(dir.path() / "out" / "curve.csv");
  CHECK(curve.find("r,source_bleu_vs_matrix_ref,source_bleu_vs_embedded_ref") == 0);

  const std::string bytes = read_file(dir.path() / "out" / "csw.r5.txt");
  REQUIRE(run_cli("incremental --config " + cfg, dir.path()).exit_code == 0);
  CHECK(read_file(dir.path() / "out" / "csw.r5.txt") == bytes);

  // A random matrix policy cannot build a coherent suite.
  const std::string bad_cfg = write_config(
      dir.path(), {{"alignments", (dir.path() / "corpus.align").string()}});
  CHECK(run_cli("incremental --config " + bad_cfg, dir.path()).exit_code != 0);
}

TEST_CASE("semeval-score converts markup and scores hypotheses") {
  TempDir dir("cli-semeval");
  const std::string hyps =
      "Todo ello , de conformidad con los principios .\n"
      "I return home because I am tired .\n"
      "however the plan failed .\n";
  write_file(dir.path() / "hyps.txt", hyps);
  const std::string cfg = write_config(dir.path(), {});
  const CliResult result = run_cli(
      "semeval-score --config " + cfg +
          " --markup-input " + testutil::data_path("semeval_sample.input") +
          " --markup-reference " + testutil::data_path("semeval_sample.ref") +
          " --hyps " + (dir.path() / "hyps.txt").string(),
      dir.path());
  REQUIRE(result.exit_code == 0);
  const json rec = json::parse(read_file(dir.path() / "out" / "semeval.report.jsonl"));
  CHECK(rec.at("accuracy").get<double>() == doctest::Approx(1.0));
  CHECK(rec.at("recall").get<double>() == doctest::Approx(1.0));
  CHECK(fs::exists(dir.path() / "out" / "semeval.items.jsonl"));

  // Items-file path gives the same result.
  const CliResult again = run_cli(
      "semeval-score --config " + cfg + " --items " +
          (dir.path() / "out" / "semeval.items.jsonl").string() + " --hyps " +
          (dir.path() / "hyps.txt").string(),
      dir.path());
  CHECK(again.exit_code == 0);
}
