// deplabel: dependency trees <-> per-token labels, plus the experiment
// harness around the five supported linearizations.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "deplabel/conllu.hpp"
#include "deplabel/encodings.hpp"
#include "deplabel/evalstats.hpp"
#include "deplabel/pipeline.hpp"
#include "deplabel/tagger.hpp"

namespace {

using namespace deplabel;

Encoding parse_encoding(const std::string& id) {
  auto enc = encoding_from_id(id);
  if (!enc) throw CLI::ValidationError("--encoding", "unknown encoding: " + id);
  return *enc;
}

std::vector<std::string> forms_of(const conllu::Sentence& sentence) {
  std::vector<std::string> forms;
  for (const auto& tok : sentence.tokens) forms.push_back(tok.form);
  return forms;
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    pipeline::write_file(path, content);
}

int cmd_encode(const std::string& input, const std::string& output,
               const std::string& encoding_id) {
  Encoding encoding = parse_encoding(encoding_id);
  auto sentences = conllu::parse(pipeline::read_file(input), /*strict=*/true);
  std::vector<LabeledSentence> labeled;
  long long dropped = 0;
  for (const auto& sentence : sentences) {
    LabeledSentence row;
    row.forms = forms_of(sentence);
    row.upos = conllu::tags_of(sentence);
    EncodeResult enc =
        encode_labels(conllu::tree_of(sentence), row.upos, encoding);
    dropped += static_cast<long long>(enc.dropped.size());
    row.components = std::move(enc.components);
    labeled.push_back(std::move(row));
  }
  emit(output, write_label_file(labeled, encoding));
  std::cerr << "encoded " << sentences.size() << " sentences, dropped arcs: " << dropped
            << "\n";
  return 0;
}

int cmd_decode(const std::string& input, const std::string& output,
               const std::string& encoding_id, bool single_root) {
  Encoding encoding = parse_encoding(encoding_id);
  auto labeled = parse_label_file(pipeline::read_file(input), encoding);
  std::vector<conllu::Sentence> sentences;
  for (const auto& row : labeled) {
    DepTree tree = decode_labels(row.components, row.upos, encoding);
    if (single_root) tree = enforce_single_root(std::move(tree));
    conllu::Sentence sentence;
    for (std::size_t i = 0; i < row.forms.size(); ++i) {
      conllu::Token tok;
      tok.id = static_cast<int>(i) + 1;
      tok.form = row.forms[i];
      tok.upos = row.upos[i];
      sentence.tokens.push_back(std::move(tok));
    }
    sentences.push_back(conllu::with_tree(std::move(sentence), tree));
  }
  emit(output, conllu::write(sentences));
  return 0;
}

int cmd_roundtrip(const std::string& input, const std::string& encodings_csv) {
  auto sentences = conllu::parse(pipeline::read_file(input), /*strict=*/true);
  std::vector<std::string> ids;
  std::stringstream ss(encodings_csv);
  for (std::string id; std::getline(ss, id, ',');) ids.push_back(id);
  if (ids.empty())
    for (Encoding e : kAllEncodings) ids.emplace_back(encoding_id(e));
  std::cout << "encoding\tuas\tlas\tdropped_arcs\n";
  for (const std::string& id : ids) {
    Encoding encoding = parse_encoding(id);
    pipeline::OracleCeiling ceiling = pipeline::oracle_ceiling(sentences, encoding);
    // LAS of the ceiling: rerun with deprel comparison
    std::vector<DepTree> gold, decoded;
    for (const auto& sentence : sentences) {
      DepTree tree = conllu::tree_of(sentence);
      auto tags = conllu::tags_of(sentence);
      decoded.push_back(decode_labels(encode_labels(tree, tags, encoding).components, tags,
                                      encoding));
      gold.push_back(std::move(tree));
    }
    auto metrics = evalstats::uas_las(gold, decoded);
    std::cout << id << '\t' << evalstats::format2(ceiling.uas) << '\t'
              << evalstats::format2(metrics.las) << '\t' << ceiling.dropped_arcs << '\n';
  }
  return 0;
}

int cmd_stats(const std::string& input) {
  conllu::ParseStats pstats;
  auto sentences = conllu::parse(pipeline::read_file(input), /*strict=*/true, &pstats);
  std::vector<DepTree> trees;
  long long tokens = 0;
  long long two_planar = 0;
  for (const auto& sentence : sentences) {
    trees.push_back(conllu::tree_of(sentence));
    tokens += sentence.size();
    if (assign_planes(trees.back()).dropped.empty()) ++two_planar;
  }
  std::cout << "sentences\t" << sentences.size() << '\n';
  std::cout << "tokens\t" << tokens << '\n';
  std::cout << "multiword_rows_skipped\t" << pstats.multiword_skipped << '\n';
  std::cout << "empty_node_rows_skipped\t" << pstats.empty_node_skipped << '\n';
  std::cout << "nonprojective_rate\t"
            << evalstats::format2(evalstats::nonprojective_rate(trees)) << '\n';
  std::cout << "two_planar_rate\t"
            << evalstats::format2(100.0 * static_cast<double>(two_planar) /
                                  static_cast<double>(trees.size()))
            << '\n';
  return 0;
}

int cmd_subset(const std::string& input, const std::string& sizes_csv,
               const std::string& prefix, std::uint64_t seed) {
  auto sentences = conllu::parse(pipeline::read_file(input), /*strict=*/true);
  std::vector<std::string> sizes;
  std::stringstream ss(sizes_csv);
  for (std::string size; std::getline(ss, size, ',');) sizes.push_back(size);
  auto subsets = pipeline::make_subsets(sentences, sizes, seed);
  for (std::size_t k = 0; k < subsets.size(); ++k) {
    std::string path = prefix + sizes[k] + ".conllu";
    pipeline::write_file(path, conllu::write(subsets[k]));
    std::cerr << "wrote " << path << " (" << subsets[k].size() << " sentences)\n";
  }
  return 0;
}

int cmd_train(const std::string& train_path, const std::string& dev_path,
              const std::string& model_path, const std::string& encoding_id,
              const std::string& setup_id, const std::string& pos_model_path, int epochs,
              std::uint64_t seed) {
  auto train_data = conllu::parse(pipeline::read_file(train_path), /*strict=*/true);
  tagger::TrainConfig config;
  config.epochs = epochs;
  config.seed = seed;

  std::vector<tagger::Instance> instances;
  std::vector<std::string> components;

  if (encoding_id == "upos") {
    config.features.use_pos = false;
    components = {"upos"};
    for (const auto& sentence : train_data) {
      tagger::Instance inst;
      inst.forms = forms_of(sentence);
      inst.components.push_back(conllu::tags_of(sentence));
      instances.push_back(std::move(inst));
    }
  } else {
    Encoding encoding = parse_encoding(encoding_id);
    auto setup = pipeline::setup_from_id(setup_id);
    if (!setup) throw CLI::ValidationError("--pos-setup", "unknown setup: " + setup_id);
    config.features.use_pos = *setup != pipeline::PosSetup::None;

    tagger::Model pos_model;
    if (*setup == pipeline::PosSetup::Predicted) {
      if (pos_model_path.empty())
        throw CLI::ValidationError("--pos-model",
                                   "predicted setup needs a trained upos model");
      std::ifstream in(pos_model_path);
      pos_model = tagger::Model::load(in);
    }
    components = component_names(encoding);
    for (const auto& sentence : train_data) {
      tagger::Instance inst;
      inst.forms = forms_of(sentence);
      auto gold_tags = conllu::tags_of(sentence);
      if (*setup == pipeline::PosSetup::Gold)
        inst.pos = gold_tags;
      else if (*setup == pipeline::PosSetup::Predicted)
        inst.pos = pos_model.predict(inst.forms, {})[0];
      inst.components =
          encode_labels(conllu::tree_of(sentence), gold_tags, encoding).components;
      instances.push_back(std::move(inst));
    }
  }

  std::function<double(int, const tagger::Model&)> epoch_score;
  std::vector<tagger::Instance> dev_instances;
  if (!dev_path.empty()) {
    auto dev_data = conllu::parse(pipeline::read_file(dev_path), /*strict=*/true);
    // Component-accuracy epoch selection; the experiment subcommand selects
    // on decoded dev UAS instead.
    for (const auto& sentence : dev_data) {
      tagger::Instance inst;
      inst.forms = forms_of(sentence);
      auto gold_tags = conllu::tags_of(sentence);
      if (encoding_id == "upos") {
        inst.components.push_back(gold_tags);
      } else {
        Encoding encoding = parse_encoding(encoding_id);
        if (config.features.use_pos) inst.pos = gold_tags;
        inst.components =
            encode_labels(conllu::tree_of(sentence), gold_tags, encoding).components;
      }
      dev_instances.push_back(std::move(inst));
    }
    epoch_score = [&](int, const tagger::Model& model) {
      long long total = 0, correct = 0;
      for (const auto& inst : dev_instances) {
        auto pred = model.predict(inst.forms, inst.pos);
        for (std::size_t c = 0; c < pred.size(); ++c)
          for (std::size_t i = 0; i < pred[c].size(); ++i) {
            ++total;
            if (pred[c][i] == inst.components[c][i]) ++correct;
          }
      }
      return total == 0 ? 0.0 : 100.0 * static_cast<double>(correct) /
                                    static_cast<double>(total);
    };
  }

  auto result = tagger::train(instances, components, config, epoch_score);
  std::ofstream out(model_path);
  if (!out) throw std::runtime_error("cannot write " + model_path);
  result.model.save(out);
  std::cerr << "trained " << components.size() << "-component model, epoch "
            << result.best_epoch << ", saved to " << model_path << "\n";
  return 0;
}

int cmd_predict(const std::string& model_path, const std::string& input,
                const std::string& output, const std::string& encoding_id) {
  std::ifstream in(model_path);
  if (!in) throw std::runtime_error("cannot open " + model_path);
  tagger::Model model = tagger::Model::load(in);
  auto sentences = conllu::parse(pipeline::read_file(input), /*strict=*/false);

  if (encoding_id == "upos") {
    // Tag and emit CoNLL-U with the UPOS column replaced.
    for (auto& sentence : sentences) {
      auto pred = model.predict(forms_of(sentence), {});
      for (std::size_t i = 0; i < sentence.tokens.size(); ++i)
        sentence.tokens[i].upos = pred[0][i];
    }
    emit(output, conllu::write(sentences));
    return 0;
  }

  Encoding encoding = parse_encoding(encoding_id);
  std::vector<LabeledSentence> labeled;
  for (const auto& sentence : sentences) {
    LabeledSentence row;
    row.forms = forms_of(sentence);
    row.upos = conllu::tags_of(sentence);
    row.components = model.predict(row.forms, model.uses_pos() ? row.upos
                                                               : std::vector<std::string>{});
    labeled.push_back(std::move(row));
  }
  emit(output, write_label_file(labeled, encoding));
  return 0;
}

int cmd_eval(const std::string& gold_path, const std::string& pred_path, bool exclude_punct) {
  auto gold = conllu::parse(pipeline::read_file(gold_path), /*strict=*/true);
  auto pred = conllu::parse(pipeline::read_file(pred_path), /*strict=*/false);
  std::vector<DepTree> gold_trees, pred_trees;
  for (const auto& s : gold) gold_trees.push_back(conllu::tree_of(s));
  for (const auto& s : pred) pred_trees.push_back(conllu::tree_of(s));
  auto metrics = evalstats::uas_las(gold_trees, pred_trees, exclude_punct);
  std::cout << "tokens\t" << metrics.token_count << '\n';
  std::cout << "uas\t" << evalstats::format2(metrics.uas) << '\n';
  std::cout << "las\t" << evalstats::format2(metrics.las) << '\n';
  return 0;
}

int cmd_experiment(const std::string& config_path, const std::string& json_out,
                   const std::string& tsv_out, bool timing) {
  pipeline::ExperimentConfig config =
      pipeline::config_from_json(pipeline::read_file(config_path));
  if (timing) config.include_timing = true;
  pipeline::RunReport report = pipeline::run_experiment(config);
  emit(json_out, report.to_json(config.include_timing));
  if (!tsv_out.empty()) pipeline::write_file(tsv_out, report.to_tsv());
  std::cerr << "experiment finished: " << report.cells.size() << " cells\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dependency parsing as sequence labeling toolkit"};
  app.require_subcommand(1);

  std::string input, output, gold_path, pred_path, model_path, dev_path, pos_model_path;
  std::string encoding = "rph", setup = "gold", sizes = "all", prefix = "subset_";
  std::string encodings_csv;
  std::string config_path, json_out = "-", tsv_out;
  std::uint64_t seed = 1;
  int epochs = 8;
  bool exclude_punct = false, timing = false, single_root = false;

  auto* encode = app.add_subcommand("encode", "tree file -> label file");
  encode->add_option("--input,-i", input)->required();
  encode->add_option("--output,-o", output);
  encode->add_option("--encoding,-e", encoding)->required();

  auto* decode = app.add_subcommand("decode", "label file -> tree file (with repair)");
  decode->add_option("--input,-i", input)->required();
  decode->add_option("--output,-o", output);
  decode->add_option("--encoding,-e", encoding)->required();
  decode->add_flag("--single-root", single_root,
                   "re-attach extra root children to the first one");

  auto* roundtrip =
      app.add_subcommand("roundtrip", "decode(encode(gold)) ceiling per encoding");
  roundtrip->add_option("--input,-i", input)->required();
  roundtrip->add_option("--encodings,-e", encodings_csv)
      ->description("comma list, default all");

  auto* stats = app.add_subcommand("stats", "treebank statistics");
  stats->add_option("--input,-i", input)->required();

  auto* subset = app.add_subcommand("subset", "seeded nested training subsets");
  subset->add_option("--input,-i", input)->required();
  subset->add_option("--sizes", sizes)->required();
  subset->add_option("--output-prefix", prefix);
  subset->add_option("--seed", seed);

  auto* train = app.add_subcommand("train", "train a labeler (encoding or upos)");
  train->add_option("--train,-t", input)->required();
  train->add_option("--dev,-d", dev_path);
  train->add_option("--model,-m", model_path)->required();
  train->add_option("--encoding,-e", encoding)
      ->description("rph|rxb|2pb|ahtb|ctb|upos")
      ->required();
  train->add_option("--pos-setup", setup)->description("gold|predicted|none");
  train->add_option("--pos-model", pos_model_path);
  train->add_option("--epochs", epochs);
  train->add_option("--seed", seed);

  auto* predict = app.add_subcommand("predict", "run a trained labeler");
  predict->add_option("--model,-m", model_path)->required();
  predict->add_option("--input,-i", input)->required();
  predict->add_option("--output,-o", output);
  predict->add_option("--encoding,-e", encoding)->required();

  auto* eval = app.add_subcommand("eval", "UAS/LAS of predicted vs gold CoNLL-U");
  eval->add_option("--gold,-g", gold_path)->required();
  eval->add_option("--pred,-p", pred_path)->required();
  eval->add_flag("--exclude-punct", exclude_punct);

  auto* experiment = app.add_subcommand("experiment", "full run matrix from a JSON config");
  experiment->add_option("--config,-c", config_path)->required();
  experiment->add_option("--out,-o", json_out)->description("JSON report path, '-' = stdout");
  experiment->add_option("--tsv", tsv_out);
  experiment->add_flag("--timing", timing);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*encode) return cmd_encode(input, output, encoding);
    if (*decode) return cmd_decode(input, output, encoding, single_root);
    if (*roundtrip) return cmd_roundtrip(input, encodings_csv);
    if (*stats) return cmd_stats(input);
    if (*subset) return cmd_subset(input, sizes, prefix, seed);
    if (*train)
      return cmd_train(input, dev_path, model_path, encoding, setup, pos_model_path, epochs,
                       seed);
    if (*predict) return cmd_predict(model_path, input, output, encoding);
    if (*eval) return cmd_eval(gold_path, pred_path, exclude_punct);
    if (*experiment) return cmd_experiment(config_path, json_out, tsv_out, timing);
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  }
  return 0;
}
