#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cswmt/generate.hpp"
#include "cswmt/types.hpp"

namespace cswmt {

// Resolved run configuration. Every subcommand writes a manifest capturing
// the full configuration, the seed and the toolkit version, so a run can be
// reproduced byte-for-byte from its manifest.
struct PipelineConfig {
  std::string src_path;
  std::string tgt_path;
  std::string src_lang = "src";
  std::string tgt_lang = "tgt";

  // Alignment source: an external Pharaoh file, or the built-in aligner.
  std::string alignments_path;
  unsigned aligner_iterations = 5;
  bool diagonal_prior = false;
  double diagonal_tension = 4.0;
  std::string heuristic = "grow-diag-final-and";

  std::size_t max_len = 250;
  double max_ratio = 1.5;
  std::string lid_lexicon_path;   // optional corpus pre-filter hook
  double lid_min_fraction = 0.8;

  GenConfig gen;
  std::vector<std::string> layouts;  // base-csw / multi-csw / joint-csw

  std::string examples_path;  // defaults to <output_dir>/examples.jsonl
  std::string output_dir = "out";
  std::vector<std::string> report_formats = {"text", "jsonl"};
  unsigned workers = 1;
};

PipelineConfig load_config(const std::string& path);

struct GlobalOverrides {
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<std::string> output_dir;
};

void apply_overrides(PipelineConfig& config, const GlobalOverrides& overrides);

// Line-delimited JSON example records:
//   {"id":0,"matrix_lang":"en","embedded_lang":"fr","csw":[...],
//    "labels":[...],"ref_matrix":[...],"ref_embedded":[...],"n":1,
//    "units":[{"lo":0,"hi":0,"text":[...]}],"monolingual":false}
void write_examples_jsonl(std::ostream& out,
                          const std::vector<CswExample>& examples);
std::vector<CswExample> read_examples_jsonl(std::istream& in);

// Subcommand drivers. Each validates its inputs fully before writing any
// output, writes outputs atomically and returns a process exit code.
int cmd_align(const PipelineConfig& config);
int cmd_generate(const PipelineConfig& config);
int cmd_incremental(const PipelineConfig& config);
int cmd_emit_training(const PipelineConfig& config);
int cmd_score(const PipelineConfig& config, const std::string& hyps_path,
              const std::string& target_lang);

struct SemevalScoreArgs {
  std::string items_path;             // JSONL items, or
  std::string markup_input_path;      // task markup input +
  std::string markup_reference_path;  // task markup reference
  std::string hyps_path;
};
int cmd_semeval_score(const PipelineConfig& config,
                      const SemevalScoreArgs& args);

int cmd_stats(const PipelineConfig& config);

}  // namespace cswmt
