#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "deplabel/conllu.hpp"
#include "deplabel/encodings.hpp"

namespace deplabel::pipeline {

// Where PoS information comes from: gold tags, a tagger trained on the same
// subset, or nowhere (PoS features disabled; the tagger still runs so the
// relative-PoS encoding can be decoded).
enum class PosSetup { Gold, Predicted, None };

std::string_view setup_id(PosSetup setup);  // "gold", "predicted", "none"
std::optional<PosSetup> setup_from_id(std::string_view id);

struct ExperimentConfig {
  std::string train_path;
  std::string dev_path;  // optional; enables best-dev-UAS epoch selection
  std::string test_path;
  std::vector<Encoding> encodings{kAllEncodings, kAllEncodings + 5};
  std::vector<PosSetup> setups{PosSetup::Gold};
  std::vector<std::string> subset_sizes{"all"};  // decimal counts or "all"
  std::uint64_t seed = 1;
  int epochs = 8;
  std::string reference = "rph";   // column the difference tables compare against
  bool include_timing = false;     // timings in JSON (off: byte-stable reports)
};

ExperimentConfig config_from_json(const std::string& text);

struct Cell {
  std::string size;
  std::string encoding;
  std::string setup;
  bool failed = false;
  std::string reason;
  long long train_sentences_used = 0;
  double uas = 0;
  double las = 0;
  double coverage = 0;                    // joint-label coverage of test vs train
  std::optional<double> tag_accuracy;     // PoS tagger accuracy on test; gold setup: absent
  long long train_dropped_arcs = 0;       // arcs the encoder lost on the training subset
  int best_epoch = 0;
  double wall_ms = 0;
  std::vector<double> sentence_uas;       // per-sentence scores, feeds the t-tests
};

struct Significance {
  std::string size;
  std::string setup;
  std::string encoding;  // compared against the reference
  double mean_diff = 0;  // mean(encoding) - mean(reference), per-sentence UAS
  double p = 1;
  bool degenerate = false;
};

struct OracleCeiling {
  double uas = 0;
  long long dropped_arcs = 0;
};

struct RunReport {
  std::vector<std::string> sizes;
  std::vector<std::string> encodings;
  std::vector<std::string> setups;
  std::uint64_t seed = 0;
  int epochs = 0;
  std::string reference;
  long long train_sentences = 0;
  long long dev_sentences = 0;
  long long test_sentences = 0;
  double train_nonprojective_rate = 0;
  double test_nonprojective_rate = 0;
  std::vector<Cell> cells;
  std::map<std::string, OracleCeiling> oracle;  // encoding id -> ceiling on test
  std::vector<Significance> significance;

  std::string to_json(bool include_timing) const;
  std::string to_tsv() const;  // cells, difference tables, tagger table, ceiling
};

// One seeded Fisher-Yates shuffle of the full set, then the size-k subset is
// its k-prefix, so subsets are nested. "all" (or an oversize count, with a
// warning on stderr) selects the whole shuffled set.
std::vector<std::vector<conllu::Sentence>> make_subsets(
    const std::vector<conllu::Sentence>& train, const std::vector<std::string>& sizes,
    std::uint64_t seed);

// decode(encode(gold)) against gold, with gold tags; the data-independent
// ceiling of each encoding.
OracleCeiling oracle_ceiling(const std::vector<conllu::Sentence>& treebank,
                             Encoding encoding);

// The full run matrix: size x setup x encoding. Cell failures are isolated
// and reported; remaining cells still run.
RunReport run_experiment(const ExperimentConfig& config,
                         const std::vector<conllu::Sentence>& train,
                         const std::vector<conllu::Sentence>& dev,
                         const std::vector<conllu::Sentence>& test);

// Convenience overload that loads the config's CoNLL-U paths.
RunReport run_experiment(const ExperimentConfig& config);

// Small file helpers shared with the CLI.
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace deplabel::pipeline
