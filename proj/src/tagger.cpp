#include "deplabel/tagger.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "deplabel/prng.hpp"

namespace deplabel::tagger {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

const std::string kPadLeft = "<s>";
const std::string kPadRight = "</s>";
const std::string kPadLabel = "<p>";

const std::string& at(const std::vector<std::string>& xs, int i, const std::string& left,
                      const std::string& right) {
  if (i < 0) return left;
  if (i >= static_cast<int>(xs.size())) return right;
  return xs[static_cast<std::size_t>(i)];
}

// Shared templates: lowercased window forms, affixes and shape of the focus
// token, the two previous predicted labels, and (optionally) neighboring
// PoS tags.
void extract(const std::vector<std::string>& forms, const std::vector<std::string>& lows,
             const std::vector<std::string>& pos, const FeatureConfig& config, int i,
             const std::string& prev, const std::string& prev2,
             std::vector<std::string>& out) {
  out.clear();
  out.push_back("b");
  out.push_back("w0=" + lows[static_cast<std::size_t>(i)]);
  out.push_back("w-1=" + at(lows, i - 1, kPadLeft, kPadRight));
  out.push_back("w-2=" + at(lows, i - 2, kPadLeft, kPadRight));
  out.push_back("w+1=" + at(lows, i + 1, kPadLeft, kPadRight));
  out.push_back("w+2=" + at(lows, i + 2, kPadLeft, kPadRight));
  const std::string& low = lows[static_cast<std::size_t>(i)];
  if (config.use_affixes) {
    for (std::size_t k = 1; k <= 3 && k <= low.size(); ++k) {
      out.push_back("p" + std::to_string(k) + "=" + low.substr(0, k));
      out.push_back("s" + std::to_string(k) + "=" + low.substr(low.size() - k));
    }
  }
  if (config.use_shape) {
    const std::string& form = forms[static_cast<std::size_t>(i)];
    bool digit = false, punct = true, cap = false;
    for (unsigned char c : form) {
      if (std::isdigit(c)) digit = true;
      if (std::isalnum(c)) punct = false;
    }
    if (!form.empty() && std::isupper(static_cast<unsigned char>(form[0]))) cap = true;
    std::string shape = "sh=";
    shape += digit ? 'd' : '-';
    shape += punct ? 'p' : '-';
    shape += cap ? 'c' : '-';
    out.push_back(std::move(shape));
  }
  out.push_back("h1=" + prev);
  out.push_back("h2=" + prev2 + "|" + prev);
  if (config.use_pos) {
    out.push_back("t0=" + at(pos, i, kPadLeft, kPadRight));
    out.push_back("t-1=" + at(pos, i - 1, kPadLeft, kPadRight));
    out.push_back("t+1=" + at(pos, i + 1, kPadLeft, kPadRight));
  }
}

}  // namespace

struct Trainer {
  struct Entry {
    double w = 0, acc = 0;
    long long last = 0;
  };
  struct ComponentState {
    std::string name;
    std::vector<std::string> labels;
    std::unordered_map<std::string, int> label_ids;
    std::unordered_map<std::string, std::unordered_map<int, Entry>> weights;
    long long steps = 0;

    int label_id(const std::string& label) {
      auto it = label_ids.find(label);
      if (it != label_ids.end()) return it->second;
      int id = static_cast<int>(labels.size());
      labels.push_back(label);
      label_ids.emplace(label, id);
      return id;
    }

    int best(const std::vector<std::string>& feats) const {
      std::vector<double> scores(labels.size(), 0.0);
      for (const std::string& f : feats) {
        auto it = weights.find(f);
        if (it == weights.end()) continue;
        for (const auto& [label, entry] : it->second) scores[static_cast<std::size_t>(label)] += entry.w;
      }
      int arg = 0;
      for (std::size_t y = 1; y < scores.size(); ++y)
        if (scores[y] > scores[static_cast<std::size_t>(arg)]) arg = static_cast<int>(y);
      return arg;
    }

    void bump(const std::string& feature, int label, double delta) {
      Entry& entry = weights[feature][label];
      entry.acc += static_cast<double>(steps - entry.last) * entry.w;
      entry.w += delta;
      entry.last = steps;
    }
  };

  std::vector<ComponentState> components;

  // Averaged snapshot of the whole model.
  Model snapshot(const FeatureConfig& features, const std::vector<std::string>& names) const {
    Model model;
    model.features_ = features;
    model.names_ = names;
    model.components_.resize(components.size());
    for (std::size_t c = 0; c < components.size(); ++c) {
      const ComponentState& state = components[c];
      Model::Component& out = model.components_[c];
      out.name = state.name;
      out.labels = state.labels;
      out.label_ids = state.label_ids;
      if (state.steps == 0) continue;
      for (const auto& [feature, by_label] : state.weights) {
        std::vector<std::pair<int, float>> row;
        for (const auto& [label, entry] : by_label) {
          double avg = (entry.acc + static_cast<double>(state.steps - entry.last) * entry.w) /
                       static_cast<double>(state.steps);
          if (avg != 0.0) row.emplace_back(label, static_cast<float>(avg));
        }
        if (row.empty()) continue;
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        out.weights.emplace(feature, std::move(row));
      }
    }
    return model;
  }
};

TrainResult train(const std::vector<Instance>& corpus,
                  const std::vector<std::string>& component_names,
                  const TrainConfig& config,
                  const std::function<double(int epoch, const Model&)>& epoch_score) {
  if (corpus.empty()) throw std::invalid_argument("empty training corpus");
  const std::size_t k = component_names.size();
  for (const Instance& inst : corpus) {
    if (inst.components.size() != k)
      throw std::invalid_argument("instance component count does not match model");
    if (inst.forms.empty()) throw std::invalid_argument("empty sentence in training corpus");
    for (const auto& column : inst.components)
      if (column.size() != inst.forms.size())
        throw std::invalid_argument("component labels do not cover the sentence");
  }

  Trainer trainer;
  trainer.components.resize(k);
  for (std::size_t c = 0; c < k; ++c) trainer.components[c].name = component_names[c];
  // Register labels in corpus order so label ids (and tie-breaking) are
  // reproducible.
  for (const Instance& inst : corpus)
    for (std::size_t c = 0; c < k; ++c)
      for (const std::string& label : inst.components[c])
        trainer.components[c].label_id(label);

  std::vector<std::size_t> order(corpus.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  SplitMix64 rng(config.seed);

  TrainResult result;
  bool have_best = false;
  std::vector<std::string> feats;
  for (int epoch = 1; epoch <= config.epochs; ++epoch) {
    shuffle(order, rng);
    for (std::size_t index : order) {
      const Instance& inst = corpus[index];
      std::vector<std::string> lows(inst.forms.size());
      for (std::size_t i = 0; i < lows.size(); ++i) lows[i] = lower(inst.forms[i]);
      for (std::size_t c = 0; c < k; ++c) {
        Trainer::ComponentState& comp = trainer.components[c];
        std::string prev = kPadLabel, prev2 = kPadLabel;
        for (std::size_t i = 0; i < inst.forms.size(); ++i) {
          extract(inst.forms, lows, inst.pos, config.features, static_cast<int>(i), prev,
                  prev2, feats);
          ++comp.steps;
          const int guess = comp.best(feats);
          const int gold = comp.label_ids.at(inst.components[c][i]);
          if (guess != gold) {
            for (const std::string& f : feats) {
              comp.bump(f, gold, 1.0);
              comp.bump(f, guess, -1.0);
            }
          }
          prev2 = prev;
          prev = comp.labels[static_cast<std::size_t>(guess)];
        }
      }
    }
    if (epoch_score) {
      Model snap = trainer.snapshot(config.features, component_names);
      double score = epoch_score(epoch, snap);
      if (!have_best || score > result.best_score) {
        have_best = true;
        result.best_score = score;
        result.best_epoch = epoch;
        result.model = std::move(snap);
      }
    }
  }
  if (!epoch_score) {
    result.model = trainer.snapshot(config.features, component_names);
    result.best_epoch = config.epochs;
  }
  return result;
}

std::vector<std::vector<std::string>> Model::predict(const std::vector<std::string>& forms,
                                                     const std::vector<std::string>& pos) const {
  std::vector<std::vector<std::string>> out(components_.size());
  std::vector<std::string> lows(forms.size());
  for (std::size_t i = 0; i < lows.size(); ++i) lows[i] = lower(forms[i]);
  std::vector<std::string> feats;
  for (std::size_t c = 0; c < components_.size(); ++c) {
    const Component& comp = components_[c];
    auto& column = out[c];
    column.reserve(forms.size());
    std::string prev = kPadLabel, prev2 = kPadLabel;
    std::vector<double> scores;
    for (std::size_t i = 0; i < forms.size(); ++i) {
      extract(forms, lows, pos, features_, static_cast<int>(i), prev, prev2, feats);
      scores.assign(comp.labels.size(), 0.0);
      for (const std::string& f : feats) {
        auto it = comp.weights.find(f);
        if (it == comp.weights.end()) continue;
        for (const auto& [label, weight] : it->second)
          scores[static_cast<std::size_t>(label)] += weight;
      }
      std::size_t arg = 0;
      for (std::size_t y = 1; y < scores.size(); ++y)
        if (scores[y] > scores[arg]) arg = y;
      const std::string& label = comp.labels.empty() ? kPadLabel : comp.labels[arg];
      prev2 = prev;
      prev = label;
      column.push_back(label);
    }
  }
  return out;
}

void Model::save(std::ostream& out) const {
  out << "deplabel-model\t1\n";
  out << "use_pos\t" << (features_.use_pos ? 1 : 0) << '\n';
  out << "use_affixes\t" << (features_.use_affixes ? 1 : 0) << '\n';
  out << "use_shape\t" << (features_.use_shape ? 1 : 0) << '\n';
  out << "components\t" << components_.size() << '\n';
  out.precision(9);
  for (const Component& comp : components_) {
    std::vector<std::string> features;
    features.reserve(comp.weights.size());
    for (const auto& [feature, row] : comp.weights) features.push_back(feature);
    std::sort(features.begin(), features.end());
    std::size_t rows = 0;
    for (const std::string& f : features) rows += comp.weights.at(f).size();
    out << "component\t" << comp.name << '\t' << comp.labels.size() << '\t' << rows << '\n';
    for (const std::string& label : comp.labels) out << "label\t" << label << '\n';
    for (const std::string& f : features)
      for (const auto& [label, weight] : comp.weights.at(f))
        out << "w\t" << f << '\t' << label << '\t' << weight << '\n';
  }
}

Model Model::load(std::istream& in) {
  auto expect = [&](const std::string& line, const std::string& key) -> std::string {
    auto tab = line.find('\t');
    if (tab == std::string::npos || line.substr(0, tab) != key)
      throw std::runtime_error("model file: expected '" + key + "' row");
    return line.substr(tab + 1);
  };
  std::string line;
  Model model;
  if (!std::getline(in, line) || expect(line, "deplabel-model") != "1")
    throw std::runtime_error("model file: unsupported version");
  std::getline(in, line);
  model.features_.use_pos = expect(line, "use_pos") == "1";
  std::getline(in, line);
  model.features_.use_affixes = expect(line, "use_affixes") == "1";
  std::getline(in, line);
  model.features_.use_shape = expect(line, "use_shape") == "1";
  std::getline(in, line);
  const std::size_t k = std::stoul(expect(line, "components"));
  model.components_.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    if (!std::getline(in, line)) throw std::runtime_error("model file: truncated");
    std::istringstream header(expect(line, "component"));
    Component& comp = model.components_[c];
    std::size_t label_count = 0, row_count = 0;
    std::getline(header, comp.name, '\t');
    header >> label_count >> row_count;
    model.names_.push_back(comp.name);
    comp.labels.reserve(label_count);
    for (std::size_t l = 0; l < label_count; ++l) {
      if (!std::getline(in, line)) throw std::runtime_error("model file: truncated");
      comp.labels.push_back(expect(line, "label"));
      comp.label_ids.emplace(comp.labels.back(), static_cast<int>(l));
    }
    for (std::size_t r = 0; r < row_count; ++r) {
      if (!std::getline(in, line)) throw std::runtime_error("model file: truncated");
      std::string rest_row = expect(line, "w");
      auto tab1 = rest_row.rfind('\t');
      auto tab0 = rest_row.rfind('\t', tab1 - 1);
      if (tab0 == std::string::npos || tab1 == std::string::npos)
        throw std::runtime_error("model file: malformed weight row");
      std::string feature = rest_row.substr(0, tab0);
      int label = std::stoi(rest_row.substr(tab0 + 1, tab1 - tab0 - 1));
      float weight = std::stof(rest_row.substr(tab1 + 1));
      comp.weights[feature].emplace_back(label, weight);
    }
  }
  return model;
}

double accuracy(const std::vector<std::vector<std::string>>& gold,
                const std::vector<std::vector<std::string>>& predicted) {
  if (gold.size() != predicted.size())
    throw std::invalid_argument("gold/predicted sentence counts differ");
  long long total = 0, correct = 0;
  for (std::size_t s = 0; s < gold.size(); ++s) {
    if (gold[s].size() != predicted[s].size())
      throw std::invalid_argument("gold/predicted sentence lengths differ");
    for (std::size_t i = 0; i < gold[s].size(); ++i) {
      ++total;
      if (gold[s][i] == predicted[s][i]) ++correct;
    }
  }
  if (total == 0) throw std::invalid_argument("empty evaluation set");
  return 100.0 * static_cast<double>(correct) / static_cast<double>(total);
}

}  // namespace deplabel::tagger
