#include <doctest.h>

#include "deplabel/evalstats.hpp"
#include "deplabel/pipeline.hpp"
#include "testutil.hpp"

using namespace deplabel;
using pipeline::ExperimentConfig;
using pipeline::PosSetup;

TEST_CASE("make_subsets: determinism, nesting, clamping") {
  auto train = testutil::synthetic_treebank(30, 3);

  auto first = pipeline::make_subsets(train, {"5", "12", "all"}, 17);
  auto second = pipeline::make_subsets(train, {"5", "12", "all"}, 17);
  REQUIRE(first.size() == 3);
  CHECK(first[0].size() == 5);
  CHECK(first[1].size() == 12);
  CHECK(first[2].size() == 30);
  for (std::size_t k = 0; k < first.size(); ++k) CHECK(first[k] == second[k]);

  // Nested: smaller subsets are prefixes of larger ones.
  for (std::size_t i = 0; i < 5; ++i) CHECK(first[0][i] == first[1][i]);
  for (std::size_t i = 0; i < 12; ++i) CHECK(first[1][i] == first[2][i]);

  // A different seed reorders.
  auto reseeded = pipeline::make_subsets(train, {"5"}, 18);
  CHECK(reseeded[0] != first[0]);

  // Oversize clamps to the full set.
  auto clamped = pipeline::make_subsets(train, {"999"}, 17);
  CHECK(clamped[0].size() == 30);
  CHECK(clamped[0] == first[2]);

  CHECK_THROWS_AS(pipeline::make_subsets({}, {"1"}, 1), std::invalid_argument);
  CHECK_THROWS_AS(pipeline::make_subsets(train, {"0"}, 1), std::invalid_argument);
  CHECK_THROWS_AS(pipeline::make_subsets(train, {"nope"}, 1), std::invalid_argument);
}

TEST_CASE("label files round-trip") {
  auto bank = testutil::synthetic_treebank(8, 11);
  for (Encoding encoding : kAllEncodings) {
    std::vector<LabeledSentence> rows;
    for (const auto& sentence : bank) {
      LabeledSentence row;
      for (const auto& tok : sentence.tokens) {
        row.forms.push_back(tok.form);
        row.upos.push_back(tok.upos);
      }
      row.components =
          encode_labels(conllu::tree_of(sentence), row.upos, encoding).components;
      rows.push_back(std::move(row));
    }
    std::string text = write_label_file(rows, encoding);
    auto parsed = parse_label_file(text, encoding);
    REQUIRE(parsed.size() == rows.size());
    for (std::size_t s = 0; s < rows.size(); ++s) {
      CHECK(parsed[s].forms == rows[s].forms);
      CHECK(parsed[s].upos == rows[s].upos);
      CHECK(parsed[s].components == rows[s].components);
    }
    CHECK(write_label_file(parsed, encoding) == text);
  }
}

TEST_CASE("encode-decode through label files reproduces the treebank") {
  auto bank = testutil::synthetic_treebank(10, 19);
  for (Encoding encoding : {Encoding::RelPos, Encoding::Covington}) {
    for (const auto& sentence : bank) {
      DepTree tree = conllu::tree_of(sentence);
      auto tags = conllu::tags_of(sentence);
      auto enc = encode_labels(tree, tags, encoding);
      // Serialize + parse like the CLI does, then decode.
      LabeledSentence row;
      for (const auto& tok : sentence.tokens) {
        row.forms.push_back(tok.form);
        row.upos.push_back(tok.upos);
      }
      row.components = enc.components;
      auto parsed = parse_label_file(write_label_file({row}, encoding), encoding);
      DepTree back = decode_labels(parsed[0].components, parsed[0].upos, encoding);
      CHECK(back.heads == tree.heads);
    }
  }
}

TEST_CASE("oracle ceiling: lossless codecs at 100, arc-hybrid below iff non-projective") {
  auto mixed = testutil::synthetic_treebank(20, 23);  // contains non-projective sentences
  std::vector<DepTree> trees;
  for (const auto& s : mixed) trees.push_back(conllu::tree_of(s));
  REQUIRE(evalstats::nonprojective_rate(trees) > 0.0);

  CHECK(pipeline::oracle_ceiling(mixed, Encoding::RelPos).uas == 100.0);
  CHECK(pipeline::oracle_ceiling(mixed, Encoding::Covington).uas == 100.0);
  auto ah = pipeline::oracle_ceiling(mixed, Encoding::ArcHybrid);
  CHECK(ah.uas < 100.0);
  CHECK(ah.dropped_arcs > 0);

  auto projective = testutil::synthetic_projective_treebank(15, 29);
  for (Encoding encoding : kAllEncodings) {
    auto ceiling = pipeline::oracle_ceiling(projective, encoding);
    CHECK(ceiling.uas == 100.0);
    CHECK(ceiling.dropped_arcs == 0);
  }
}

TEST_CASE("experiment smoke run: one cell, finite metrics") {
  auto train = testutil::synthetic_treebank(12, 41);
  auto test = testutil::synthetic_treebank(6, 43);

  ExperimentConfig config;
  config.encodings = {Encoding::RelPos};
  config.setups = {PosSetup::Gold};
  config.subset_sizes = {"all"};
  config.epochs = 3;
  config.seed = 7;

  auto report = pipeline::run_experiment(config, train, {}, test);
  REQUIRE(report.cells.size() == 1);
  const auto& cell = report.cells[0];
  CHECK_FALSE(cell.failed);
  CHECK(cell.uas >= 0.0);
  CHECK(cell.uas <= 100.0);
  CHECK(cell.las <= cell.uas);
  CHECK(cell.coverage <= 100.0);
  CHECK_FALSE(cell.tag_accuracy.has_value());  // gold setup: no tagger ran
  CHECK(report.oracle.at("rph").uas == 100.0);
}

TEST_CASE("experiment determinism across reruns") {
  auto train = testutil::synthetic_treebank(15, 51);
  auto dev = testutil::synthetic_treebank(5, 53);
  auto test = testutil::synthetic_treebank(6, 55);

  ExperimentConfig config;
  config.encodings = {Encoding::RelPos, Encoding::Bracket};
  config.setups = {PosSetup::Gold, PosSetup::None};
  config.subset_sizes = {"8", "all"};
  config.epochs = 2;
  config.seed = 99;

  auto a = pipeline::run_experiment(config, train, dev, test);
  auto b = pipeline::run_experiment(config, train, dev, test);
  CHECK(a.to_json(false) == b.to_json(false));
  CHECK(a.to_tsv().substr(0, 100) == b.to_tsv().substr(0, 100));
}

TEST_CASE("cells are independent of the rest of the run matrix") {
  auto train = testutil::synthetic_treebank(12, 61);
  auto test = testutil::synthetic_treebank(5, 63);

  ExperimentConfig wide, narrow;
  wide.encodings = {Encoding::RelPos, Encoding::Covington};
  narrow.encodings = {Encoding::Covington};
  for (auto* config : {&wide, &narrow}) {
    config->setups = {PosSetup::Predicted};
    config->subset_sizes = {"all"};
    config->epochs = 2;
    config->seed = 5;
  }
  auto a = pipeline::run_experiment(wide, train, {}, test);
  auto b = pipeline::run_experiment(narrow, train, {}, test);

  const pipeline::Cell* wide_ctb = nullptr;
  for (const auto& cell : a.cells)
    if (cell.encoding == "ctb") wide_ctb = &cell;
  REQUIRE(wide_ctb != nullptr);
  CHECK(wide_ctb->uas == b.cells[0].uas);
  CHECK(wide_ctb->las == b.cells[0].las);
  CHECK(wide_ctb->coverage == b.cells[0].coverage);
}

TEST_CASE("setups shape the feature and decode inputs") {
  auto train = testutil::synthetic_treebank(15, 71);
  auto test = testutil::synthetic_treebank(6, 73);

  ExperimentConfig config;
  config.encodings = {Encoding::RelPos};
  config.setups = {PosSetup::Gold, PosSetup::Predicted, PosSetup::None};
  config.subset_sizes = {"all"};
  config.epochs = 2;
  config.seed = 13;

  auto report = pipeline::run_experiment(config, train, {}, test);
  REQUIRE(report.cells.size() == 3);
  CHECK_FALSE(report.cells[0].tag_accuracy.has_value());   // gold
  CHECK(report.cells[1].tag_accuracy.has_value());         // predicted
  CHECK(report.cells[2].tag_accuracy.has_value());         // none still runs the tagger
}

TEST_CASE("config JSON parsing") {
  std::string text = R"({
    "train": "a.conllu", "dev": "b.conllu", "test": "c.conllu",
    "encodings": ["rph", "ctb"],
    "pos_setups": ["gold", "none"],
    "subset_sizes": [100, "all"],
    "seed": 7, "epochs": 3, "reference": "rph"
  })";
  auto config = pipeline::config_from_json(text);
  CHECK(config.train_path == "a.conllu");
  CHECK(config.encodings == std::vector<Encoding>{Encoding::RelPos, Encoding::Covington});
  CHECK(config.setups == std::vector<PosSetup>{PosSetup::Gold, PosSetup::None});
  CHECK(config.subset_sizes == std::vector<std::string>{"100", "all"});
  CHECK(config.seed == 7);
  CHECK(config.epochs == 3);
  CHECK_THROWS(pipeline::config_from_json(R"({"encodings": ["bogus"]})"));
}

TEST_CASE("single-sentence test sets skip significance instead of failing") {
  auto train = testutil::synthetic_treebank(6, 85);
  auto test = testutil::synthetic_treebank(1, 87);
  ExperimentConfig config;
  config.encodings = {Encoding::RelPos, Encoding::Covington};
  config.subset_sizes = {"all"};
  config.epochs = 2;
  auto report = pipeline::run_experiment(config, train, {}, test);
  CHECK(report.cells.size() == 2);
  CHECK(report.significance.empty());
}

TEST_CASE("empty inputs are rejected up front") {
  auto train = testutil::synthetic_treebank(5, 81);
  CHECK_THROWS_AS(pipeline::run_experiment(ExperimentConfig{}, train, {}, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(pipeline::run_experiment(ExperimentConfig{}, {}, {}, train),
                  std::invalid_argument);
}
