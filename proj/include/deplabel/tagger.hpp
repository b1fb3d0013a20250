#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <unordered_map>
#include <vector>

namespace deplabel::tagger {

struct FeatureConfig {
  bool use_pos = true;      // window +-1 PoS templates
  bool use_affixes = true;  // 1-3 char prefixes/suffixes
  bool use_shape = true;    // digit/punct/capitalization flags
};

struct TrainConfig {
  int epochs = 8;
  std::uint64_t seed = 1;
  FeatureConfig features;
};

// One training sentence: forms, optional PoS for features, and the gold
// label sequence of every component.
struct Instance {
  std::vector<std::string> forms;
  std::vector<std::string> pos;
  std::vector<std::vector<std::string>> components;  // [component][token]
};

// Multi-component averaged perceptron with greedy left-to-right decoding.
// Components are fully independent models that happen to share feature
// extraction; only labels seen in training can be predicted.
class Model {
 public:
  const std::vector<std::string>& component_names() const { return names_; }
  bool uses_pos() const { return features_.use_pos; }

  // One label per component per token; previous predictions of the same
  // component feed the history features.
  std::vector<std::vector<std::string>> predict(const std::vector<std::string>& forms,
                                                const std::vector<std::string>& pos) const;

  void save(std::ostream& out) const;
  static Model load(std::istream& in);

 private:
  struct Component {
    std::string name;
    std::vector<std::string> labels;  // id -> string
    std::unordered_map<std::string, int> label_ids;
    // feature -> sparse (label id, weight), label ids ascending
    std::unordered_map<std::string, std::vector<std::pair<int, float>>> weights;
  };

  FeatureConfig features_;
  std::vector<std::string> names_;
  std::vector<Component> components_;

  friend struct Trainer;
};

struct TrainResult {
  Model model;
  int best_epoch = 0;    // 1-based epoch the returned model comes from
  double best_score = 0;
};

// Averaged-perceptron training. Deterministic given corpus order, seed and
// epochs (sentence order is reshuffled per epoch from the seed). When
// epoch_score is given, the snapshot with the highest score is returned
// (earliest epoch wins ties); otherwise the final-epoch model is.
TrainResult train(const std::vector<Instance>& corpus,
                  const std::vector<std::string>& component_names,
                  const TrainConfig& config,
                  const std::function<double(int epoch, const Model&)>& epoch_score = {});

// Token-level accuracy of one label sequence against gold, in percent.
double accuracy(const std::vector<std::vector<std::string>>& gold,
                const std::vector<std::vector<std::string>>& predicted);

}  // namespace deplabel::tagger
