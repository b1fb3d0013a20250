#include "deplabel/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "deplabel/evalstats.hpp"
#include "deplabel/prng.hpp"
#include "deplabel/tagger.hpp"

namespace deplabel::pipeline {

namespace {

using nlohmann::ordered_json;

double round2(double x) { return std::round(x * 100.0) / 100.0; }
double round4(double x) { return std::round(x * 10000.0) / 10000.0; }

std::string join_tuple(const std::vector<std::vector<std::string>>& components,
                       std::size_t token) {
  std::string out;
  for (std::size_t c = 0; c < components.size(); ++c) {
    if (c) out += '\t';
    out += components[c][token];
  }
  return out;
}

double sentence_uas(const DepTree& gold, const DepTree& pred) {
  int ok = 0;
  for (int i = 1; i <= gold.n; ++i)
    if (gold.heads[i] == pred.heads[i]) ++ok;
  return gold.n == 0 ? 100.0 : 100.0 * ok / gold.n;
}

// Everything one (size, setup) pair shares across encodings: the training
// subset, the PoS tagger and its predictions.
struct SetupData {
  const std::vector<conllu::Sentence>* subset = nullptr;
  PosSetup setup = PosSetup::Gold;
  std::vector<std::vector<std::string>> train_tags;  // feature tags per train sentence
  std::vector<std::vector<std::string>> dev_tags;    // decode/feature tags for dev
  std::vector<std::vector<std::string>> test_tags;   // decode/feature tags for test
  std::optional<double> tag_accuracy;                // tagger accuracy on test
};

std::vector<std::vector<std::string>> gold_tags(const std::vector<conllu::Sentence>& data) {
  std::vector<std::vector<std::string>> tags;
  tags.reserve(data.size());
  for (const auto& s : data) tags.push_back(conllu::tags_of(s));
  return tags;
}

SetupData prepare_setup(const std::vector<conllu::Sentence>& subset,
                        const std::vector<conllu::Sentence>& dev,
                        const std::vector<conllu::Sentence>& test, PosSetup setup,
                        const ExperimentConfig& config) {
  SetupData data;
  data.subset = &subset;
  data.setup = setup;
  if (setup == PosSetup::Gold) {
    data.train_tags = gold_tags(subset);
    data.dev_tags = gold_tags(dev);
    data.test_tags = gold_tags(test);
    return data;
  }

  // Train the PoS tagger on the same subset the parsers see. Its features
  // never include PoS (it is the thing producing them).
  std::vector<tagger::Instance> instances;
  instances.reserve(subset.size());
  for (const auto& s : subset) {
    tagger::Instance inst;
    for (const auto& tok : s.tokens) inst.forms.push_back(tok.form);
    inst.components.push_back(conllu::tags_of(s));
    instances.push_back(std::move(inst));
  }
  tagger::TrainConfig tconfig;
  tconfig.epochs = config.epochs;
  tconfig.seed = config.seed;
  tconfig.features.use_pos = false;
  tagger::Model pos_model =
      tagger::train(instances, {"upos"}, tconfig).model;

  auto predict_tags = [&](const std::vector<conllu::Sentence>& sentences) {
    std::vector<std::vector<std::string>> out;
    out.reserve(sentences.size());
    for (const auto& s : sentences) {
      std::vector<std::string> forms;
      for (const auto& tok : s.tokens) forms.push_back(tok.form);
      out.push_back(pos_model.predict(forms, {})[0]);
    }
    return out;
  };
  data.train_tags = predict_tags(subset);
  data.dev_tags = predict_tags(dev);
  data.test_tags = predict_tags(test);
  if (!test.empty())
    data.tag_accuracy = tagger::accuracy(gold_tags(test), data.test_tags);
  return data;
}

}  // namespace

std::string_view setup_id(PosSetup setup) {
  switch (setup) {
    case PosSetup::Gold: return "gold";
    case PosSetup::Predicted: return "predicted";
    case PosSetup::None: return "none";
  }
  return "gold";
}

std::optional<PosSetup> setup_from_id(std::string_view id) {
  if (id == "gold") return PosSetup::Gold;
  if (id == "predicted") return PosSetup::Predicted;
  if (id == "none") return PosSetup::None;
  return std::nullopt;
}

ExperimentConfig config_from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  ExperimentConfig config;
  config.train_path = j.value("train", "");
  config.dev_path = j.value("dev", "");
  config.test_path = j.value("test", "");
  if (j.contains("encodings")) {
    config.encodings.clear();
    for (const auto& id : j.at("encodings")) {
      auto enc = encoding_from_id(id.get<std::string>());
      if (!enc) throw std::runtime_error("unknown encoding: " + id.get<std::string>());
      config.encodings.push_back(*enc);
    }
  }
  if (j.contains("pos_setups")) {
    config.setups.clear();
    for (const auto& id : j.at("pos_setups")) {
      auto setup = setup_from_id(id.get<std::string>());
      if (!setup) throw std::runtime_error("unknown pos setup: " + id.get<std::string>());
      config.setups.push_back(*setup);
    }
  }
  if (j.contains("subset_sizes")) {
    config.subset_sizes.clear();
    for (const auto& size : j.at("subset_sizes"))
      config.subset_sizes.push_back(size.is_string() ? size.get<std::string>()
                                                     : std::to_string(size.get<long long>()));
  }
  config.seed = j.value("seed", std::uint64_t{1});
  config.epochs = j.value("epochs", 8);
  config.reference = j.value("reference", "rph");
  config.include_timing = j.value("include_timing", false);
  return config;
}

std::vector<std::vector<conllu::Sentence>> make_subsets(
    const std::vector<conllu::Sentence>& train, const std::vector<std::string>& sizes,
    std::uint64_t seed) {
  if (train.empty()) throw std::invalid_argument("empty training set");
  std::vector<conllu::Sentence> shuffled = train;
  SplitMix64 rng(seed);
  shuffle(shuffled, rng);

  std::vector<std::vector<conllu::Sentence>> out;
  for (const std::string& size : sizes) {
    std::size_t k;
    if (size == "all") {
      k = shuffled.size();
    } else {
      long long parsed;
      try {
        parsed = std::stoll(size);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad subset size: " + size);
      }
      if (parsed <= 0) throw std::invalid_argument("subset sizes must be positive");
      k = static_cast<std::size_t>(parsed);
      if (k > shuffled.size()) {
        std::cerr << "warning: subset size " << size << " exceeds training set ("
                  << shuffled.size() << " sentences); clamped\n";
        k = shuffled.size();
      }
    }
    out.emplace_back(shuffled.begin(), shuffled.begin() + static_cast<long>(k));
  }
  return out;
}

OracleCeiling oracle_ceiling(const std::vector<conllu::Sentence>& treebank,
                             Encoding encoding) {
  OracleCeiling out;
  std::vector<DepTree> gold, decoded;
  for (const auto& sentence : treebank) {
    DepTree tree = conllu::tree_of(sentence);
    std::vector<std::string> tags = conllu::tags_of(sentence);
    EncodeResult enc = encode_labels(tree, tags, encoding);
    out.dropped_arcs += static_cast<long long>(enc.dropped.size());
    decoded.push_back(decode_labels(enc.components, tags, encoding));
    gold.push_back(std::move(tree));
  }
  out.uas = evalstats::uas_las(gold, decoded).uas;
  return out;
}

namespace {

Cell run_cell(const std::string& size_name, Encoding encoding, const SetupData& setup,
              const std::vector<conllu::Sentence>& dev,
              const std::vector<conllu::Sentence>& test, const ExperimentConfig& config) {
  Cell cell;
  cell.size = size_name;
  cell.encoding = std::string(encoding_id(encoding));
  cell.setup = std::string(setup_id(setup.setup));
  cell.tag_accuracy = setup.tag_accuracy;
  const auto started = std::chrono::steady_clock::now();

  const std::vector<conllu::Sentence>& subset = *setup.subset;
  cell.train_sentences_used = static_cast<long long>(subset.size());

  // Gold linearizations of the training subset (labels always come from
  // gold trees and gold tags); setup only affects features and decode tags.
  std::vector<tagger::Instance> instances;
  std::vector<std::string> train_joint;
  instances.reserve(subset.size());
  for (std::size_t s = 0; s < subset.size(); ++s) {
    const conllu::Sentence& sentence = subset[s];
    DepTree tree = conllu::tree_of(sentence);
    EncodeResult enc = encode_labels(tree, conllu::tags_of(sentence), encoding);
    cell.train_dropped_arcs += static_cast<long long>(enc.dropped.size());
    tagger::Instance inst;
    for (const auto& tok : sentence.tokens) inst.forms.push_back(tok.form);
    if (setup.setup != PosSetup::None) inst.pos = setup.train_tags[s];
    inst.components = enc.components;
    for (std::size_t i = 0; i < inst.forms.size(); ++i)
      train_joint.push_back(join_tuple(enc.components, i));
    instances.push_back(std::move(inst));
  }

  tagger::TrainConfig tconfig;
  tconfig.epochs = config.epochs;
  tconfig.seed = config.seed;
  tconfig.features.use_pos = setup.setup != PosSetup::None;

  std::function<double(int, const tagger::Model&)> epoch_score;
  std::vector<DepTree> dev_gold;
  if (!dev.empty()) {
    dev_gold.reserve(dev.size());
    for (const auto& s : dev) dev_gold.push_back(conllu::tree_of(s));
    epoch_score = [&](int, const tagger::Model& model) {
      std::vector<DepTree> pred;
      pred.reserve(dev.size());
      for (std::size_t s = 0; s < dev.size(); ++s) {
        std::vector<std::string> forms;
        for (const auto& tok : dev[s].tokens) forms.push_back(tok.form);
        auto components = model.predict(
            forms, setup.setup != PosSetup::None ? setup.dev_tags[s]
                                                 : std::vector<std::string>{});
        pred.push_back(decode_labels(components, setup.dev_tags[s], encoding));
      }
      return evalstats::uas_las(dev_gold, pred).uas;
    };
  }

  tagger::TrainResult trained =
      tagger::train(instances, component_names(encoding), tconfig, epoch_score);
  cell.best_epoch = trained.best_epoch;

  // Predict, decode with the setup's tags, evaluate.
  std::vector<DepTree> gold_trees, pred_trees;
  std::vector<std::string> test_joint;
  gold_trees.reserve(test.size());
  pred_trees.reserve(test.size());
  for (std::size_t s = 0; s < test.size(); ++s) {
    const conllu::Sentence& sentence = test[s];
    DepTree gold = conllu::tree_of(sentence);
    std::vector<std::string> forms;
    for (const auto& tok : sentence.tokens) forms.push_back(tok.form);
    auto components = trained.model.predict(
        forms, setup.setup != PosSetup::None ? setup.test_tags[s]
                                             : std::vector<std::string>{});
    DepTree pred = decode_labels(components, setup.test_tags[s], encoding);

    EncodeResult gold_enc = encode_labels(gold, conllu::tags_of(sentence), encoding);
    for (std::size_t i = 0; i < forms.size(); ++i)
      test_joint.push_back(join_tuple(gold_enc.components, i));

    cell.sentence_uas.push_back(sentence_uas(gold, pred));
    gold_trees.push_back(std::move(gold));
    pred_trees.push_back(std::move(pred));
  }
  evalstats::Metrics metrics = evalstats::uas_las(gold_trees, pred_trees);
  cell.uas = metrics.uas;
  cell.las = metrics.las;
  cell.coverage = evalstats::label_coverage(train_joint, test_joint);

  cell.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                           started)
                     .count();
  return cell;
}

}  // namespace

RunReport run_experiment(const ExperimentConfig& config,
                         const std::vector<conllu::Sentence>& train,
                         const std::vector<conllu::Sentence>& dev,
                         const std::vector<conllu::Sentence>& test) {
  if (train.empty()) throw std::invalid_argument("empty training set");
  if (test.empty()) throw std::invalid_argument("empty test set");

  RunReport report;
  report.sizes = config.subset_sizes;
  for (Encoding e : config.encodings) report.encodings.emplace_back(encoding_id(e));
  for (PosSetup s : config.setups) report.setups.emplace_back(setup_id(s));
  report.seed = config.seed;
  report.epochs = config.epochs;
  report.reference = config.reference;
  report.train_sentences = static_cast<long long>(train.size());
  report.dev_sentences = static_cast<long long>(dev.size());
  report.test_sentences = static_cast<long long>(test.size());

  std::vector<DepTree> train_trees, test_trees;
  for (const auto& s : train) train_trees.push_back(conllu::tree_of(s));
  for (const auto& s : test) test_trees.push_back(conllu::tree_of(s));
  report.train_nonprojective_rate = evalstats::nonprojective_rate(train_trees);
  report.test_nonprojective_rate = evalstats::nonprojective_rate(test_trees);

  for (Encoding encoding : config.encodings)
    report.oracle[std::string(encoding_id(encoding))] = oracle_ceiling(test, encoding);

  auto subsets = make_subsets(train, config.subset_sizes, config.seed);

  for (std::size_t k = 0; k < subsets.size(); ++k) {
    for (PosSetup setup : config.setups) {
      SetupData data = prepare_setup(subsets[k], dev, test, setup, config);
      for (Encoding encoding : config.encodings) {
        Cell cell;
        try {
          cell = run_cell(config.subset_sizes[k], encoding, data, dev, test, config);
        } catch (const std::exception& error) {
          cell = Cell{};
          cell.size = config.subset_sizes[k];
          cell.encoding = std::string(encoding_id(encoding));
          cell.setup = std::string(setup_id(setup));
          cell.failed = true;
          cell.reason = error.what();
        }
        report.cells.push_back(std::move(cell));
      }
    }
  }

  // Paired t-tests of per-sentence UAS against the reference encoding.
  for (const std::string& size : report.sizes) {
    for (const std::string& setup : report.setups) {
      const Cell* ref = nullptr;
      for (const Cell& cell : report.cells)
        if (cell.size == size && cell.setup == setup && cell.encoding == config.reference &&
            !cell.failed)
          ref = &cell;
      if (!ref) continue;
      for (const Cell& cell : report.cells) {
        if (cell.size != size || cell.setup != setup || cell.failed ||
            cell.encoding == config.reference)
          continue;
        if (cell.sentence_uas.size() != ref->sentence_uas.size()) continue;
        if (cell.sentence_uas.size() < 2) continue;  // t-test needs pairs
        Significance sig;
        sig.size = size;
        sig.setup = setup;
        sig.encoding = cell.encoding;
        double diff = 0;
        for (std::size_t i = 0; i < cell.sentence_uas.size(); ++i)
          diff += cell.sentence_uas[i] - ref->sentence_uas[i];
        sig.mean_diff = diff / static_cast<double>(cell.sentence_uas.size());
        evalstats::TTest tt = evalstats::paired_ttest(cell.sentence_uas, ref->sentence_uas);
        sig.degenerate = tt.degenerate;
        sig.p = tt.degenerate ? 1.0 : tt.p;
        report.significance.push_back(std::move(sig));
      }
    }
  }

  return report;
}

RunReport run_experiment(const ExperimentConfig& config) {
  auto load = [&](const std::string& path) -> std::vector<conllu::Sentence> {
    if (path.empty()) return {};
    return conllu::parse(read_file(path), /*strict=*/true);
  };
  return run_experiment(config, load(config.train_path), load(config.dev_path),
                        load(config.test_path));
}

std::string RunReport::to_json(bool include_timing) const {
  ordered_json j;
  j["tool"] = "deplabel";
  j["report_version"] = 1;
  j["config"] = {{"seed", seed},
                 {"epochs", epochs},
                 {"reference", reference},
                 {"sizes", sizes},
                 {"encodings", encodings},
                 {"pos_setups", setups}};
  j["data"] = {{"train_sentences", train_sentences},
               {"dev_sentences", dev_sentences},
               {"test_sentences", test_sentences},
               {"train_nonprojective_rate", round2(train_nonprojective_rate)},
               {"test_nonprojective_rate", round2(test_nonprojective_rate)}};
  ordered_json ceiling = ordered_json::object();
  for (const auto& [encoding, value] : oracle)
    ceiling[encoding] = {{"uas", round2(value.uas)}, {"dropped_arcs", value.dropped_arcs}};
  j["oracle_ceiling"] = ceiling;

  ordered_json cells_json = ordered_json::array();
  for (const Cell& cell : cells) {
    ordered_json c;
    c["size"] = cell.size;
    c["encoding"] = cell.encoding;
    c["setup"] = cell.setup;
    if (cell.failed) {
      c["failed"] = true;
      c["reason"] = cell.reason;
    } else {
      c["failed"] = false;
      c["train_sentences_used"] = cell.train_sentences_used;
      c["uas"] = round2(cell.uas);
      c["las"] = round2(cell.las);
      c["coverage"] = round2(cell.coverage);
      if (cell.tag_accuracy)
        c["tag_accuracy"] = round2(*cell.tag_accuracy);
      else
        c["tag_accuracy"] = nullptr;
      c["train_dropped_arcs"] = cell.train_dropped_arcs;
      c["best_epoch"] = cell.best_epoch;
      if (include_timing) c["wall_ms"] = round2(cell.wall_ms);
    }
    cells_json.push_back(std::move(c));
  }
  j["cells"] = cells_json;

  ordered_json sig_json = ordered_json::array();
  for (const Significance& sig : significance) {
    ordered_json s;
    s["size"] = sig.size;
    s["setup"] = sig.setup;
    s["encoding"] = sig.encoding;
    s["mean_uas_diff"] = round2(sig.mean_diff);
    if (sig.degenerate)
      s["p"] = nullptr;
    else
      s["p"] = round4(sig.p);
    s["significant_0.05"] = !sig.degenerate && sig.p < 0.05;
    sig_json.push_back(std::move(s));
  }
  j["significance"] = sig_json;

  // Difference tables per setup, plus the tagger accuracy table.
  ordered_json tables = ordered_json::object();
  for (const std::string& setup : setups) {
    std::map<std::pair<std::string, std::string>, double> means;
    for (const Cell& cell : cells)
      if (!cell.failed && cell.setup == setup) means[{cell.size, cell.encoding}] = cell.uas;
    bool have_reference = true;
    for (const std::string& size : sizes)
      if (!means.count({size, reference})) have_reference = false;
    if (!have_reference) continue;
    evalstats::DiffTable table = evalstats::diff_table(means, reference, sizes, encodings);
    ordered_json t;
    t["reference"] = table.reference;
    t["sizes"] = table.sizes;
    t["columns"] = table.encodings;
    t["rows"] = table.cells;
    tables[setup] = std::move(t);
  }
  j["uas_diff_tables"] = tables;

  ordered_json tagger_table = ordered_json::array();
  for (const Cell& cell : cells) {
    if (cell.failed || !cell.tag_accuracy || cell.encoding != encodings.front()) continue;
    tagger_table.push_back({{"size", cell.size},
                            {"setup", cell.setup},
                            {"accuracy", round2(*cell.tag_accuracy)}});
  }
  j["tagger_accuracy"] = tagger_table;

  return j.dump(2) + "\n";
}

std::string RunReport::to_tsv() const {
  std::ostringstream out;
  out << "# cells\n";
  out << "size\tencoding\tsetup\tuas\tlas\tcoverage\ttag_accuracy\ttrain_dropped_arcs\t"
         "best_epoch\twall_ms\tstatus\n";
  for (const Cell& cell : cells) {
    out << cell.size << '\t' << cell.encoding << '\t' << cell.setup << '\t';
    if (cell.failed) {
      out << "\t\t\t\t\t\t\tFAILED: " << cell.reason << '\n';
      continue;
    }
    out << evalstats::format2(cell.uas) << '\t' << evalstats::format2(cell.las) << '\t'
        << evalstats::format2(cell.coverage) << '\t'
        << (cell.tag_accuracy ? evalstats::format2(*cell.tag_accuracy) : std::string()) << '\t'
        << cell.train_dropped_arcs << '\t' << cell.best_epoch << '\t'
        << evalstats::format2(cell.wall_ms) << "\tok\n";
  }

  for (const std::string& setup : setups) {
    std::map<std::pair<std::string, std::string>, double> means;
    for (const Cell& cell : cells)
      if (!cell.failed && cell.setup == setup) means[{cell.size, cell.encoding}] = cell.uas;
    bool have_reference = true;
    for (const std::string& size : sizes)
      if (!means.count({size, reference})) have_reference = false;
    if (!have_reference) continue;
    out << "\n# uas_diff setup=" << setup << " (vs " << reference << ")\n";
    out << evalstats::diff_table(means, reference, sizes, encodings).to_tsv();
  }

  out << "\n# oracle_ceiling\nencoding\tuas\tdropped_arcs\n";
  for (const auto& [encoding, value] : oracle)
    out << encoding << '\t' << evalstats::format2(value.uas) << '\t' << value.dropped_arcs
        << '\n';

  out << "\n# nonprojectivity\nsplit\trate\n";
  out << "train\t" << evalstats::format2(train_nonprojective_rate) << '\n';
  out << "test\t" << evalstats::format2(test_nonprojective_rate) << '\n';
  return out.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace deplabel::pipeline
