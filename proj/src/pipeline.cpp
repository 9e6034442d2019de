#include "cswmt/pipeline.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include "cswmt/alignment.hpp"
#include "cswmt/bleu.hpp"
#include "cswmt/copy_metrics.hpp"
#include "cswmt/corpus.hpp"
#include "cswmt/io_util.hpp"
#include "cswmt/lid.hpp"
#include "cswmt/model1.hpp"
#include "cswmt/semeval.hpp"
#include "cswmt/units.hpp"
#include "cswmt/version.hpp"
#include "json.hpp"

namespace cswmt {

namespace fs = std::filesystem;
using nlohmann::json;

PipelineConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config " + path);
  json j;
  in >> j;

  PipelineConfig cfg;
  cfg.src_path = j.value("src_path", cfg.src_path);
  cfg.tgt_path = j.value("tgt_path", cfg.tgt_path);
  cfg.src_lang = j.value("src_lang", cfg.src_lang);
  cfg.tgt_lang = j.value("tgt_lang", cfg.tgt_lang);
  cfg.alignments_path = j.value("alignments", cfg.alignments_path);
  if (j.contains("aligner")) {
    const json& a = j.at("aligner");
    cfg.aligner_iterations = a.value("iterations", cfg.aligner_iterations);
    cfg.diagonal_prior = a.value("diagonal_prior", cfg.diagonal_prior);
    cfg.diagonal_tension = a.value("tension", cfg.diagonal_tension);
    cfg.heuristic = a.value("heuristic", cfg.heuristic);
  }
  if (j.contains("filter")) {
    const json& f = j.at("filter");
    cfg.max_len = f.value("max_len", cfg.max_len);
    cfg.max_ratio = f.value("max_ratio", cfg.max_ratio);
  }
  if (j.contains("lid_filter")) {
    const json& f = j.at("lid_filter");
    cfg.lid_lexicon_path = f.value("lexicon", cfg.lid_lexicon_path);
    cfg.lid_min_fraction = f.value("min_fraction", cfg.lid_min_fraction);
  }
  if (j.contains("gen")) {
    const json& g = j.at("gen");
    cfg.gen.rep = g.value("rep", cfg.gen.rep);
    cfg.gen.seed = g.value("seed", cfg.gen.seed);
    cfg.gen.matrix_policy = g.value("matrix_policy", cfg.gen.matrix_policy);
    cfg.gen.include_monolingual = g.value("include_monolingual", cfg.gen.include_monolingual);
    cfg.gen.incremental_max = g.value("incremental_max", cfg.gen.incremental_max);
    if (g.contains("forced_units")) {
      cfg.gen.forced_units = g.at("forced_units").get<std::vector<std::size_t>>();
    }
  }
  if (j.contains("layouts")) cfg.layouts = j.at("layouts").get<std::vector<std::string>>();
  cfg.examples_path = j.value("examples_path", cfg.examples_path);
  cfg.output_dir = j.value("output_dir", cfg.output_dir);
  if (j.contains("report_formats")) {
    cfg.report_formats = j.at("report_formats").get<std::vector<std::string>>();
  }
  cfg.workers = j.value("workers", cfg.workers);
  return cfg;
}

void apply_overrides(PipelineConfig& config, const GlobalOverrides& overrides) {
  if (overrides.seed) config.gen.seed = *overrides.seed;
  if (overrides.workers) config.workers = *overrides.workers;
  if (overrides.output_dir) config.output_dir = *overrides.output_dir;
}

namespace {

json config_to_json(const PipelineConfig& cfg) {
  return json{
      {"src_path", cfg.src_path},
      {"tgt_path", cfg.tgt_path},
      {"src_lang", cfg.src_lang},
      {"tgt_lang", cfg.tgt_lang},
      {"alignments", cfg.alignments_path},
      {"aligner",
       {{"iterations", cfg.aligner_iterations},
        {"diagonal_prior", cfg.diagonal_prior},
        {"tension", cfg.diagonal_tension},
        {"heuristic", cfg.heuristic}}},
      {"filter", {{"max_len", cfg.max_len}, {"max_ratio", cfg.max_ratio}}},
      {"lid_filter",
       {{"lexicon", cfg.lid_lexicon_path}, {"min_fraction", cfg.lid_min_fraction}}},
      {"gen",
       {{"rep", cfg.gen.rep},
        {"seed", cfg.gen.seed},
        {"matrix_policy", cfg.gen.matrix_policy},
        {"include_monolingual", cfg.gen.include_monolingual},
        {"incremental_max", cfg.gen.incremental_max},
        {"forced_units", cfg.gen.forced_units}}},
      {"layouts", cfg.layouts},
      {"examples_path", cfg.examples_path},
      {"output_dir", cfg.output_dir},
      {"report_formats", cfg.report_formats}};
  // The worker count is deliberately absent: outputs are independent of it,
  // so runs that differ only in scheduling share a manifest.
}

void write_manifest(const PipelineConfig& cfg, const std::string& command,
                    const std::map<std::string, std::int64_t>& counts,
                    const std::vector<std::string>& outputs) {
  json j{{"tool", "cswmt"},
         {"version", kVersion},
         {"command", command},
         {"seed", cfg.gen.seed},
         {"config", config_to_json(cfg)},
         {"counts", counts},
         {"outputs", outputs}};
  AtomicFile file(fs::path(cfg.output_dir) / ("manifest." + command + ".json"));
  file.stream() << j.dump(2) << '\n';
  file.commit();
}

void require_file(const std::string& path, const std::string& what) {
  if (path.empty()) {
    throw std::runtime_error(what + " not configured");
  }
  if (!fs::exists(path)) {
    throw std::runtime_error(what + " not found: " + path);
  }
}

std::optional<FilterOptions> make_filter(const PipelineConfig& cfg,
                                         const LidLexicon* lexicon) {
  FilterOptions opts;
  opts.max_len = cfg.max_len;
  opts.max_ratio = cfg.max_ratio;
  if (lexicon != nullptr) {
    opts.keep_hook = make_lid_pair_filter(*lexicon, cfg.lid_min_fraction);
  }
  return opts;
}

std::optional<LidLexicon> load_lexicon_if_configured(const PipelineConfig& cfg) {
  if (cfg.lid_lexicon_path.empty()) return std::nullopt;
  require_file(cfg.lid_lexicon_path, "LID lexicon");
  std::ifstream in(cfg.lid_lexicon_path);
  return LidLexicon::load(in);
}

std::string examples_path_of(const PipelineConfig& cfg) {
  if (!cfg.examples_path.empty()) return cfg.examples_path;
  return (fs::path(cfg.output_dir) / "examples.jsonl").string();
}

std::vector<TokenSeq> read_token_lines(const std::string& path) {
  std::vector<TokenSeq> out;
  for (const std::string& line : read_lines(path)) {
    out.push_back(split_tokens(line));
  }
  return out;
}

}  // namespace

void write_examples_jsonl(std::ostream& out,
                          const std::vector<CswExample>& examples) {
  for (const CswExample& ex : examples) {
    json units = json::array();
    for (const ChosenUnit& cu : ex.chosen_units) {
      units.push_back(json{{"lo", cu.matrix_span.lo},
                           {"hi", cu.matrix_span.hi},
                           {"text", cu.embedded_text}});
    }
    json j{{"id", ex.id},
           {"matrix_lang", ex.matrix_lang},
           {"embedded_lang", ex.embedded_lang},
           {"csw", ex.csw_tokens},
           {"labels", ex.labels},
           {"ref_matrix", ex.matrix_ref},
           {"ref_embedded", ex.embedded_ref},
           {"n", ex.n_replacements},
           {"units", units},
           {"monolingual", ex.monolingual}};
    out << j.dump() << '\n';
  }
}

namespace {

CswExample parse_example_line(const std::string& line) {
  const json j = json::parse(line);
  CswExample ex;
  ex.id = j.at("id").get<std::int64_t>();
  ex.matrix_lang = j.at("matrix_lang").get<std::string>();
  ex.embedded_lang = j.at("embedded_lang").get<std::string>();
  ex.csw_tokens = j.at("csw").get<TokenSeq>();
  ex.labels = j.at("labels").get<std::vector<std::string>>();
  ex.matrix_ref = j.at("ref_matrix").get<TokenSeq>();
  ex.embedded_ref = j.at("ref_embedded").get<TokenSeq>();
  ex.n_replacements = j.at("n").get<unsigned>();
  for (const json& u : j.at("units")) {
    ChosenUnit cu;
    cu.matrix_span.lo = u.at("lo").get<std::uint32_t>();
    cu.matrix_span.hi = u.at("hi").get<std::uint32_t>();
    cu.embedded_text = u.at("text").get<TokenSeq>();
    ex.chosen_units.push_back(std::move(cu));
  }
  ex.monolingual = j.value("monolingual", false);
  return ex;
}

}  // namespace

std::vector<CswExample> read_examples_jsonl(std::istream& in) {
  std::vector<CswExample> examples;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    examples.push_back(parse_example_line(line));
  }
  return examples;
}

int cmd_stats(const PipelineConfig& cfg) {
  require_file(cfg.src_path, "source corpus");
  require_file(cfg.tgt_path, "target corpus");
  const std::optional<LidLexicon> lexicon = load_lexicon_if_configured(cfg);

  ParallelReader reader(cfg.src_path, cfg.tgt_path, cfg.src_lang, cfg.tgt_lang,
                        make_filter(cfg, lexicon ? &*lexicon : nullptr));
  while (reader.next()) {
  }
  const CorpusStats& stats = reader.stats();

  AtomicFile text(fs::path(cfg.output_dir) / "corpus.stats.txt");
  text.stream() << stats.to_text();
  text.commit();
  AtomicFile rec(fs::path(cfg.output_dir) / "corpus.stats.json");
  rec.stream() << json{{"pairs_read", stats.pairs_read},
                       {"pairs_kept", stats.pairs_kept},
                       {"dropped_ratio", stats.dropped_ratio},
                       {"dropped_length", stats.dropped_length},
                       {"dropped_invalid", stats.dropped_invalid},
                       {"dropped_predicate", stats.dropped_predicate}}
                    .dump()
             << '\n';
  rec.commit();
  write_manifest(cfg, "stats",
                 {{"pairs_read", static_cast<std::int64_t>(stats.pairs_read)},
                  {"pairs_kept", static_cast<std::int64_t>(stats.pairs_kept)}},
                 {"corpus.stats.txt", "corpus.stats.json"});
  std::cout << stats.to_text();
  return 0;
}

int cmd_align(const PipelineConfig& cfg) {
  require_file(cfg.src_path, "source corpus");
  require_file(cfg.tgt_path, "target corpus");
  if (cfg.aligner_iterations == 0) {
    throw std::runtime_error("aligner iterations must be >= 1");
  }
  const Symmetrization heuristic = parse_symmetrization(cfg.heuristic);
  const std::optional<LidLexicon> lexicon = load_lexicon_if_configured(cfg);

  std::vector<ParallelPair> pairs;
  ParallelReader reader(cfg.src_path, cfg.tgt_path, cfg.src_lang, cfg.tgt_lang,
                        make_filter(cfg, lexicon ? &*lexicon : nullptr));
  while (auto pair = reader.next()) pairs.push_back(std::move(*pair));
  if (pairs.empty()) throw std::runtime_error("no pairs survive filtering");

  TrainOptions train_opts;
  train_opts.iterations = cfg.aligner_iterations;
  train_opts.diagonal_prior = cfg.diagonal_prior;
  train_opts.diagonal_tension = cfg.diagonal_tension;
  train_opts.workers = cfg.workers;

  const TrainResult fwd = train_aligner(pairs, train_opts);
  std::vector<ParallelPair> swapped;
  swapped.reserve(pairs.size());
  for (const ParallelPair& pair : pairs) swapped.push_back(swap_sides(pair));
  const TrainResult rev = train_aligner(swapped, train_opts);

  for (std::size_t i = 0; i < fwd.log_likelihood.size(); ++i) {
    std::cout << "iteration " << i + 1 << " log-likelihood fwd "
              << fwd.log_likelihood[i] << " rev " << rev.log_likelihood[i] << '\n';
  }

  AtomicFile pharaoh(fs::path(cfg.output_dir) / "alignments.pharaoh");
  AtomicFile units_tsv(fs::path(cfg.output_dir) / "units.tsv");
  std::uint64_t n_units = 0;
  for (const ParallelPair& pair : pairs) {
    const AlignmentSet f = viterbi_align(pair, fwd.table, AlignDirection::SrcToTgt);
    const AlignmentSet r = viterbi_align(pair, rev.table, AlignDirection::TgtToSrc);
    const AlignmentSet sym = symmetrize(f, r, heuristic, pair.src_tokens.size(),
                                        pair.tgt_tokens.size());
    pharaoh.stream() << format_pharaoh(sym) << '\n';
    const std::vector<AlignmentUnit> units = extract_units(pair, sym);
    n_units += units.size();
    write_units_tsv(units_tsv.stream(), pair.id, units);
  }
  pharaoh.commit();
  units_tsv.commit();

  AtomicFile fwd_table(fs::path(cfg.output_dir) / "ttable.fwd.txt");
  fwd.table.save(fwd_table.stream());
  fwd_table.commit();
  AtomicFile rev_table(fs::path(cfg.output_dir) / "ttable.rev.txt");
  rev.table.save(rev_table.stream());
  rev_table.commit();

  const CorpusStats& stats = reader.stats();
  AtomicFile stats_file(fs::path(cfg.output_dir) / "corpus.stats.txt");
  stats_file.stream() << stats.to_text();
  stats_file.commit();

  write_manifest(cfg, "align",
                 {{"pairs_kept", static_cast<std::int64_t>(stats.pairs_kept)},
                  {"pairs_read", static_cast<std::int64_t>(stats.pairs_read)},
                  {"units", static_cast<std::int64_t>(n_units)}},
                 {"alignments.pharaoh", "units.tsv", "ttable.fwd.txt",
                  "ttable.rev.txt", "corpus.stats.txt"});
  std::cout << "aligned " << pairs.size() << " pairs, " << n_units << " units\n";
  return 0;
}

namespace {

// Training-layout writers that can be fed example batches incrementally.
class LayoutWriters {
 public:
  LayoutWriters(const PipelineConfig& cfg, const std::vector<std::string>& names) {
    for (const std::string& name : names) {
      const Layout layout = parse_layout(name);
      switch (layout) {
        case Layout::BaseCsw:
          add(cfg, "base-csw.to-" + cfg.src_lang + ".src");
          add(cfg, "base-csw.to-" + cfg.src_lang + ".tgt");
          add(cfg, "base-csw.to-" + cfg.tgt_lang + ".src");
          add(cfg, "base-csw.to-" + cfg.tgt_lang + ".tgt");
          break;
        case Layout::MultiCsw:
          add(cfg, "multi-csw.src");
          add(cfg, "multi-csw.tgt");
          break;
        case Layout::JointCsw:
          add(cfg, "joint-csw.tsv");
          break;
      }
      layouts_.push_back(layout);
    }
  }

  void write(const std::vector<CswExample>& examples) {
    for (const Layout layout : layouts_) {
      for (const TrainingRecord& rec : emit_training(examples, layout)) {
        ++n_records_;
        switch (layout) {
          case Layout::BaseCsw: {
            const std::string stem = "base-csw.to-" + rec.target_lang;
            stream(stem + ".src") << join_tokens(rec.source_tokens) << '\n';
            stream(stem + ".tgt") << join_tokens(rec.target_tokens) << '\n';
            break;
          }
          case Layout::MultiCsw:
            stream("multi-csw.src") << join_tokens(rec.source_tokens) << '\n';
            stream("multi-csw.tgt") << join_tokens(rec.target_tokens) << '\n';
            break;
          case Layout::JointCsw:
            stream("joint-csw.tsv")
                << join_tokens(rec.source_tokens) << '\t'
                << join_tokens(rec.target_tokens) << '\t'
                << join_tokens(rec.second_target_tokens) << '\n';
            break;
        }
      }
    }
  }

  void commit() {
    for (auto& [name, file] : files_) file->commit();
  }

  std::vector<std::string> file_names() const {
    std::vector<std::string> names;
    for (const auto& [name, file] : files_) names.push_back(name);
    return names;
  }
  std::uint64_t records() const { return n_records_; }

 private:
  void add(const PipelineConfig& cfg, const std::string& name) {
    files_.emplace(name, std::make_unique<AtomicFile>(fs::path(cfg.output_dir) / name));
  }
  std::ofstream& stream(const std::string& name) { return files_.at(name)->stream(); }

  std::map<std::string, std::unique_ptr<AtomicFile>> files_;
  std::vector<Layout> layouts_;
  std::uint64_t n_records_ = 0;
};

}  // namespace

int cmd_generate(const PipelineConfig& cfg) {
  require_file(cfg.src_path, "source corpus");
  require_file(cfg.tgt_path, "target corpus");
  if (cfg.alignments_path.empty()) {
    throw std::runtime_error(
        "no alignments configured; run the align subcommand first or point "
        "\"alignments\" at a Pharaoh file");
  }
  require_file(cfg.alignments_path, "alignment file");
  if (cfg.gen.rep == 0) throw std::runtime_error("gen.rep must be >= 1");
  const std::optional<LidLexicon> lexicon = load_lexicon_if_configured(cfg);

  ParallelReader reader(cfg.src_path, cfg.tgt_path, cfg.src_lang, cfg.tgt_lang,
                        make_filter(cfg, lexicon ? &*lexicon : nullptr));
  std::ifstream align_in(cfg.alignments_path);

  AtomicFile examples_file(examples_path_of(cfg));
  AtomicFile skipped_file(fs::path(cfg.output_dir) / "skipped.jsonl");
  LayoutWriters layouts(cfg, cfg.layouts);

  std::uint64_t n_examples = 0, n_skipped = 0, n_monolingual = 0;
  constexpr std::size_t kChunk = 8192;
  bool done = false;
  while (!done) {
    std::vector<ParallelPair> pairs;
    std::vector<AlignmentSet> alignments;
    while (pairs.size() < kChunk) {
      auto pair = reader.next();
      if (!pair) {
        done = true;
        break;
      }
      std::string line;
      if (!std::getline(align_in, line)) {
        throw std::runtime_error("alignment file ends before the corpus (pair " +
                                 std::to_string(pair->id) + ")");
      }
      alignments.push_back(parse_pharaoh(line, *pair));
      pairs.push_back(std::move(*pair));
    }
    if (pairs.empty()) break;

    GenerateResult result = generate_corpus(pairs, alignments, cfg.gen, cfg.workers);
    write_examples_jsonl(examples_file.stream(), result.examples);
    for (const SkipRecord& skip : result.skipped) {
      skipped_file.stream() << json{{"id", skip.id}, {"reason", skip.reason}}.dump()
                            << '\n';
    }
    for (const CswExample& ex : result.examples) {
      if (ex.monolingual) ++n_monolingual;
    }
    n_examples += result.examples.size();
    n_skipped += result.skipped.size();
    layouts.write(result.examples);
  }
  std::string extra;
  if (std::getline(align_in, extra)) {
    throw std::runtime_error("alignment file has more lines than the kept corpus");
  }

  examples_file.commit();
  skipped_file.commit();
  layouts.commit();

  std::vector<std::string> outputs{examples_path_of(cfg), "skipped.jsonl"};
  for (const std::string& name : layouts.file_names()) outputs.push_back(name);
  write_manifest(cfg, "generate",
                 {{"examples", static_cast<std::int64_t>(n_examples)},
                  {"skipped", static_cast<std::int64_t>(n_skipped)},
                  {"monolingual", static_cast<std::int64_t>(n_monolingual)},
                  {"training_records", static_cast<std::int64_t>(layouts.records())}},
                 outputs);
  std::cout << "generated " << n_examples << " examples (" << n_monolingual
            << " monolingual), skipped " << n_skipped << '\n';
  return 0;
}

int cmd_emit_training(const PipelineConfig& cfg) {
  const std::string examples_path = examples_path_of(cfg);
  require_file(examples_path, "examples file");
  if (cfg.layouts.empty()) {
    throw std::runtime_error("no training layouts configured");
  }

  std::ifstream in(examples_path);
  LayoutWriters layouts(cfg, cfg.layouts);
  std::uint64_t n_examples = 0;
  // Stream in batches; records are emitted in example order.
  std::string line;
  std::vector<CswExample> batch;
  auto flush = [&]() {
    layouts.write(batch);
    n_examples += batch.size();
    batch.clear();
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    batch.push_back(parse_example_line(line));
    if (batch.size() >= 4096) flush();
  }
  flush();
  layouts.commit();

  write_manifest(cfg, "emit-training",
                 {{"examples", static_cast<std::int64_t>(n_examples)},
                  {"training_records", static_cast<std::int64_t>(layouts.records())}},
                 layouts.file_names());
  std::cout << "emitted " << layouts.records() << " training records from "
            << n_examples << " examples\n";
  return 0;
}

int cmd_incremental(const PipelineConfig& cfg) {
  require_file(cfg.src_path, "source corpus");
  require_file(cfg.tgt_path, "target corpus");
  if (cfg.alignments_path.empty()) {
    throw std::runtime_error(
        "no alignments configured; run the align subcommand first or point "
        "\"alignments\" at a Pharaoh file");
  }
  require_file(cfg.alignments_path, "alignment file");
  if (cfg.gen.matrix_policy == "random") {
    throw std::runtime_error(
        "incremental test sets need a fixed matrix language; set "
        "gen.matrix_policy to a language code");
  }
  if (cfg.gen.incremental_max == 0) {
    throw std::runtime_error("gen.incremental_max must be >= 1");
  }
  const std::optional<LidLexicon> lexicon = load_lexicon_if_configured(cfg);

  std::vector<ParallelPair> pairs;
  std::vector<AlignmentSet> alignments;
  ParallelReader reader(cfg.src_path, cfg.tgt_path, cfg.src_lang, cfg.tgt_lang,
                        make_filter(cfg, lexicon ? &*lexicon : nullptr));
  std::ifstream align_in(cfg.alignments_path);
  while (auto pair = reader.next()) {
    std::string line;
    if (!std::getline(align_in, line)) {
      throw std::runtime_error("alignment file ends before the corpus (pair " +
                               std::to_string(pair->id) + ")");
    }
    alignments.push_back(parse_pharaoh(line, *pair));
    pairs.push_back(std::move(*pair));
  }
  if (pairs.empty()) throw std::runtime_error("no pairs survive filtering");

  const unsigned r_max = cfg.gen.incremental_max;
  const IncrementalSets sets = generate_incremental(
      pairs, alignments, cfg.gen.matrix_policy, r_max, cfg.gen.seed);

  std::vector<std::string> outputs;
  for (unsigned r = 1; r <= r_max; ++r) {
    const std::string name = "csw.r" + std::to_string(r) + ".txt";
    AtomicFile file(fs::path(cfg.output_dir) / name);
    for (const TokenSeq& sent : sets.sets[r - 1]) {
      file.stream() << join_tokens(sent) << '\n';
    }
    file.commit();
    outputs.push_back(name);
  }
  {
    AtomicFile file(fs::path(cfg.output_dir) / "refs.matrix.txt");
    for (const TokenSeq& sent : sets.matrix_refs) file.stream() << join_tokens(sent) << '\n';
    file.commit();
    outputs.push_back("refs.matrix.txt");
  }
  {
    AtomicFile file(fs::path(cfg.output_dir) / "refs.embedded.txt");
    for (const TokenSeq& sent : sets.embedded_refs) file.stream() << join_tokens(sent) << '\n';
    file.commit();
    outputs.push_back("refs.embedded.txt");
  }

  // Copy-baseline curves: the CSW source scored against both references.
  {
    AtomicFile curve(fs::path(cfg.output_dir) / "curve.csv");
    curve.stream() << "r,source_bleu_vs_matrix_ref,source_bleu_vs_embedded_ref\n";
    char row[128];
    for (unsigned r = 1; r <= r_max; ++r) {
      const BleuScore vs_matrix = bleu(sets.sets[r - 1], sets.matrix_refs);
      const BleuScore vs_embedded = bleu(sets.sets[r - 1], sets.embedded_refs);
      std::snprintf(row, sizeof(row), "%u,%.6f,%.6f\n", r, vs_matrix.score,
                    vs_embedded.score);
      curve.stream() << row;
    }
    curve.commit();
    outputs.push_back("curve.csv");
  }

  write_manifest(cfg, "incremental",
                 {{"sentences", static_cast<std::int64_t>(pairs.size())},
                  {"sets", static_cast<std::int64_t>(r_max)}},
                 outputs);
  std::cout << "wrote " << r_max << " incremental sets over " << pairs.size()
            << " sentences\n";
  return 0;
}

namespace {

json bleu_to_json(const BleuScore& score) {
  return json{{"score", score.score},
              {"precisions", score.precisions},
              {"brevity_penalty", score.brevity_penalty},
              {"hyp_len", score.hyp_len},
              {"ref_len", score.ref_len},
              {"effective_order", score.effective_order}};
}

std::string format_pct(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", value);
  return buf;
}

}  // namespace

int cmd_score(const PipelineConfig& cfg, const std::string& hyps_path,
              const std::string& target_lang) {
  const std::string examples_path = examples_path_of(cfg);
  require_file(examples_path, "examples file");
  require_file(hyps_path, "hypothesis file");
  if (target_lang.empty()) throw std::runtime_error("target language required");
  const std::optional<LidLexicon> lexicon = load_lexicon_if_configured(cfg);

  std::ifstream ex_in(examples_path);
  const std::vector<CswExample> examples = read_examples_jsonl(ex_in);
  const std::vector<TokenSeq> hyps = read_token_lines(hyps_path);
  if (examples.size() != hyps.size()) {
    throw std::runtime_error("example/hypothesis count mismatch: " +
                             std::to_string(examples.size()) + " vs " +
                             std::to_string(hyps.size()));
  }

  std::vector<TokenSeq> refs;
  refs.reserve(examples.size());
  for (const CswExample& ex : examples) {
    if (target_lang == ex.matrix_lang) {
      refs.push_back(ex.matrix_ref);
    } else if (target_lang == ex.embedded_lang) {
      refs.push_back(ex.embedded_ref);
    } else {
      throw std::runtime_error("target language '" + target_lang +
                               "' matches neither side of example " +
                               std::to_string(ex.id));
    }
  }

  const BleuScore overall = bleu(hyps, refs);
  const PartitionedBleu parts = bleu_partitioned(hyps, refs, examples, target_lang);
  const CopyReport copy = copy_analysis(examples, hyps, target_lang,
                                        lexicon ? &*lexicon : nullptr);
  const OrderReport order = order_analysis(examples, hyps, target_lang);

  std::ostringstream text;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "BLEU %.3f (BP %.3f, hyp %llu, ref %llu)\n",
                overall.score, overall.brevity_penalty,
                static_cast<unsigned long long>(overall.hyp_len),
                static_cast<unsigned long long>(overall.ref_len));
  text << buf;
  if (parts.matrix_is_target) {
    std::snprintf(buf, sizeof(buf), "BLEU[matrix=target] %.3f over %zu sentences\n",
                  parts.matrix_is_target->score, parts.n_matrix_is_target);
    text << buf;
  } else {
    text << "BLEU[matrix=target] absent (empty partition)\n";
  }
  if (parts.matrix_is_source) {
    std::snprintf(buf, sizeof(buf), "BLEU[matrix=source] %.3f over %zu sentences\n",
                  parts.matrix_is_source->score, parts.n_matrix_is_source);
    text << buf;
  } else {
    text << "BLEU[matrix=source] absent (empty partition)\n";
  }
  text << "to copy " << copy.to_copy << "\ncopied " << copy.copied
       << "\ncopy rate (%) " << format_pct(copy.copy_rate()) << '\n';
  if (lexicon) {
    std::snprintf(buf, sizeof(buf), "CSW rate (%%) %.2f\n", copy.csw_rate());
    text << buf;
  }
  auto bucket_line = [&](const char* name, const OrderBucket& b) {
    std::snprintf(buf, sizeof(buf),
                  "%s copy %.1f copy+swap %.1f incomplete %.1f (n=%llu, vacuous %llu)\n",
                  name, b.exact_pct(), b.swapped_pct(), b.incomplete_pct(),
                  static_cast<unsigned long long>(b.total()),
                  static_cast<unsigned long long>(b.vacuous));
    text << buf;
  };
  bucket_line("order[all]", order.overall);
  bucket_line("order[matrix=target]", order.matrix_is_target);
  bucket_line("order[matrix=source]", order.matrix_is_source);

  AtomicFile report(fs::path(cfg.output_dir) / "score.report.txt");
  report.stream() << text.str();
  report.commit();

  AtomicFile records(fs::path(cfg.output_dir) / "score.report.jsonl");
  records.stream() << json{{"metric", "bleu"}, {"value", bleu_to_json(overall)}}.dump() << '\n';
  json part_rec{{"metric", "bleu_partitioned"},
                {"n_matrix_is_target", parts.n_matrix_is_target},
                {"n_matrix_is_source", parts.n_matrix_is_source}};
  if (parts.matrix_is_target) part_rec["matrix_is_target"] = bleu_to_json(*parts.matrix_is_target);
  if (parts.matrix_is_source) part_rec["matrix_is_source"] = bleu_to_json(*parts.matrix_is_source);
  records.stream() << part_rec.dump() << '\n';
  records.stream() << json{{"metric", "copy"},
                           {"to_copy", copy.to_copy},
                           {"copied", copy.copied},
                           {"copy_rate", copy.copy_rate()},
                           {"csw_rate", copy.csw_rate()}}
                          .dump()
                   << '\n';
  auto bucket_json = [](const OrderBucket& b) {
    return json{{"exact", b.exact},         {"swapped", b.swapped},
                {"incomplete", b.incomplete}, {"vacuous", b.vacuous},
                {"exact_pct", b.exact_pct()}, {"swapped_pct", b.swapped_pct()}};
  };
  records.stream() << json{{"metric", "order"},
                           {"overall", bucket_json(order.overall)},
                           {"matrix_is_target", bucket_json(order.matrix_is_target)},
                           {"matrix_is_source", bucket_json(order.matrix_is_source)}}
                          .dump()
                   << '\n';
  records.commit();

  write_manifest(cfg, "score",
                 {{"sentences", static_cast<std::int64_t>(hyps.size())}},
                 {"score.report.txt", "score.report.jsonl"});
  std::cout << text.str();
  return 0;
}

int cmd_semeval_score(const PipelineConfig& cfg, const SemevalScoreArgs& args) {
  require_file(args.hyps_path, "hypothesis file");
  std::vector<SemevalItem> items;
  if (!args.items_path.empty()) {
    require_file(args.items_path, "items file");
    std::ifstream in(args.items_path);
    items = read_semeval_items(in);
  } else {
    require_file(args.markup_input_path, "markup input");
    require_file(args.markup_reference_path, "markup reference");
    std::ifstream input(args.markup_input_path);
    std::ifstream reference(args.markup_reference_path);
    items = parse_semeval_markup(input, reference);
    AtomicFile converted(fs::path(cfg.output_dir) / "semeval.items.jsonl");
    write_semeval_items(converted.stream(), items);
    converted.commit();
  }
  const std::vector<TokenSeq> hyps = read_token_lines(args.hyps_path);
  const SemevalScore score = semeval_score(items, hyps);

  char buf[160];
  std::snprintf(buf, sizeof(buf),
                "accuracy %.3f\nword accuracy %.3f\nrecall %.3f\n",
                score.accuracy, score.word_accuracy, score.recall);
  AtomicFile report(fs::path(cfg.output_dir) / "semeval.report.txt");
  report.stream() << buf;
  report.commit();
  AtomicFile records(fs::path(cfg.output_dir) / "semeval.report.jsonl");
  records.stream() << json{{"metric", "semeval"},
                           {"accuracy", score.accuracy},
                           {"word_accuracy", score.word_accuracy},
                           {"recall", score.recall},
                           {"n_items", score.n_items},
                           {"n_exact", score.n_exact},
                           {"n_nonempty", score.n_nonempty}}
                          .dump()
                   << '\n';
  records.commit();

  write_manifest(cfg, "semeval-score",
                 {{"items", static_cast<std::int64_t>(score.n_items)}},
                 {"semeval.report.txt", "semeval.report.jsonl"});
  std::cout << buf;
  return 0;
}

}  // namespace cswmt
