#include <exception>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "cswmt/pipeline.hpp"
#include "cswmt/version.hpp"

namespace {

struct GlobalArgs {
  std::string config_path;
  cswmt::GlobalOverrides overrides;
};

void add_global_flags(CLI::App* cmd, GlobalArgs& args) {
  cmd->add_option("--config", args.config_path, "Pipeline config file (JSON)");
  cmd->add_option("--seed", [&args](const CLI::results_t& res) {
    args.overrides.seed = std::stoull(res[0]);
    return true;
  }, "Override the generation seed");
  cmd->add_option("--workers", [&args](const CLI::results_t& res) {
    args.overrides.workers = static_cast<unsigned>(std::stoul(res[0]));
    return true;
  }, "Worker threads");
  cmd->add_option("--output-dir", [&args](const CLI::results_t& res) {
    args.overrides.output_dir = res[0];
    return true;
  }, "Output directory");
}

cswmt::PipelineConfig resolve(const GlobalArgs& args) {
  cswmt::PipelineConfig cfg;
  if (!args.config_path.empty()) cfg = cswmt::load_config(args.config_path);
  cswmt::apply_overrides(cfg, args.overrides);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"CSW corpus synthesis and evaluation toolkit"};
  app.set_version_flag("--version", cswmt::kVersion);
  app.require_subcommand(1);

  GlobalArgs align_args, generate_args, incremental_args, emit_args, score_args,
      semeval_args, stats_args;

  CLI::App* align = app.add_subcommand("align", "Train the built-in aligner and write Pharaoh alignments");
  add_global_flags(align, align_args);

  CLI::App* generate = app.add_subcommand("generate", "Synthesize a CSW corpus from pairs and alignments");
  add_global_flags(generate, generate_args);

  CLI::App* incremental = app.add_subcommand("incremental", "Build nested test sets with growing replacement counts");
  add_global_flags(incremental, incremental_args);

  CLI::App* emit = app.add_subcommand("emit-training", "Write training-data layouts from an example file");
  add_global_flags(emit, emit_args);

  CLI::App* score = app.add_subcommand("score", "Score translations of a CSW corpus");
  add_global_flags(score, score_args);
  std::string hyps_path, target_lang;
  score->add_option("--hyps", hyps_path, "Hypothesis file, one sentence per line")->required();
  score->add_option("--target-lang", target_lang, "Scoring target language")->required();

  CLI::App* semeval = app.add_subcommand("semeval-score", "Score L2-assistant outputs (fragment accuracy)");
  add_global_flags(semeval, semeval_args);
  cswmt::SemevalScoreArgs sa;
  semeval->add_option("--items", sa.items_path, "Items file (JSONL)");
  semeval->add_option("--markup-input", sa.markup_input_path, "Task markup input file");
  semeval->add_option("--markup-reference", sa.markup_reference_path, "Task markup reference file");
  semeval->add_option("--hyps", sa.hyps_path, "Hypothesis file")->required();

  CLI::App* stats = app.add_subcommand("stats", "Corpus filtering statistics");
  add_global_flags(stats, stats_args);

  CLI11_PARSE(app, argc, argv);

  try {
    if (align->parsed()) return cswmt::cmd_align(resolve(align_args));
    if (generate->parsed()) return cswmt::cmd_generate(resolve(generate_args));
    if (incremental->parsed()) return cswmt::cmd_incremental(resolve(incremental_args));
    if (emit->parsed()) return cswmt::cmd_emit_training(resolve(emit_args));
    if (score->parsed()) return cswmt::cmd_score(resolve(score_args), hyps_path, target_lang);
    if (semeval->parsed()) return cswmt::cmd_semeval_score(resolve(semeval_args), sa);
    if (stats->parsed()) return cswmt::cmd_stats(resolve(stats_args));
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
