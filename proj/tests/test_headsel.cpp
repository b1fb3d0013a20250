#include <doctest.h>

#include "deplabel/headsel.hpp"
#include "testutil.hpp"

using namespace deplabel;
using headsel::RelPosLabel;

namespace {

std::vector<std::string> head_components(const std::vector<RelPosLabel>& labels) {
  std::vector<std::string> out;
  for (const auto& label : labels) out.push_back(headsel::head_component(label));
  return out;
}

// Every tag assignment over {A, B} for a sentence of length n.
std::vector<std::vector<std::string>> two_tag_assignments(int n) {
  std::vector<std::vector<std::string>> out;
  for (int mask = 0; mask < (1 << n); ++mask) {
    std::vector<std::string> tags(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) tags[i] = (mask >> i) & 1 ? "B" : "A";
    out.push_back(std::move(tags));
  }
  return out;
}

}  // namespace

TEST_CASE("worked-example labels") {
  auto labels = headsel::encode(testutil::example_tree(), testutil::example_tags());
  CHECK(head_components(labels) ==
        std::vector<std::string>{"+1@NOUN", "+1@ADJ", "+1@ADJ", "-1@ROOT", "-1@AUX"});
}

TEST_CASE("single token points at the root") {
  auto labels = headsel::encode(testutil::tree_from_heads({0}), {"NOUN"});
  CHECK(head_components(labels) == std::vector<std::string>{"-1@ROOT"});
}

TEST_CASE("leftward ranks count matching tags right-to-left") {
  auto labels = headsel::encode(testutil::tree_from_heads({0, 1, 1}), {"V", "N", "N"});
  CHECK(head_components(labels) == std::vector<std::string>{"-1@ROOT", "-1@V", "-1@V"});
}

TEST_CASE("decode inverts the worked-example labels") {
  std::vector<RelPosLabel> labels = {{1, "NOUN", "dep"},
                                     {1, "ADJ", "dep"},
                                     {1, "ADJ", "dep"},
                                     {-1, "ROOT", "root"},
                                     {-1, "AUX", "dep"}};
  DepTree tree = headsel::decode(labels, testutil::example_tags());
  CHECK(tree == testutil::example_tree());
}

TEST_CASE("unresolvable reference falls back to the root") {
  DepTree tree = headsel::decode({{2, "NOUN", "dep"}}, {"NOUN"});
  CHECK(tree.heads == std::vector<int>{-1, 0});
  CHECK(tree.deprels[1] == "root");
}

TEST_CASE("labels forming a two-cycle are repaired") {
  std::vector<RelPosLabel> labels = {{1, "N", "dep"}, {-1, "N", "dep"}};
  DepTree tree = headsel::decode(labels, {"N", "N"});
  CHECK(tree.heads == std::vector<int>{-1, 0, 1});
}

TEST_CASE("round-trip identity over all trees n<=4 under every 2-tag assignment") {
  for (int n = 1; n <= 4; ++n) {
    auto assignments = two_tag_assignments(n);
    for (const DepTree& tree : enumerate_trees(n)) {
      for (const auto& tags : assignments) {
        DepTree back = headsel::decode(headsel::encode(tree, tags), tags);
        REQUIRE(back == tree);
      }
    }
  }
}

TEST_CASE("round-trip on random non-projective trees with a realistic tagset") {
  SplitMix64 rng(99);
  std::vector<std::string> tagset = {"NOUN", "VERB", "ADJ", "DET", "PUNCT"};
  for (int round = 0; round < 300; ++round) {
    int n = 1 + static_cast<int>(rng.below(12));
    DepTree tree = testutil::random_tree(n, rng);
    std::vector<std::string> tags(static_cast<std::size_t>(n));
    for (auto& tag : tags) tag = tagset[rng.below(tagset.size())];
    CHECK(headsel::decode(headsel::encode(tree, tags), tags) == tree);
  }
}

TEST_CASE("a token's label never depends on its own tag") {
  // The rank scan for token i starts at i+1 (or i-1), so flipping tags[i]
  // can change other tokens' labels but never token i's own.
  SplitMix64 rng(5);
  for (int round = 0; round < 100; ++round) {
    int n = 2 + static_cast<int>(rng.below(8));
    DepTree tree = testutil::random_tree(n, rng);
    std::vector<std::string> tags(static_cast<std::size_t>(n));
    for (auto& tag : tags) tag = rng.below(2) ? "B" : "A";
    auto before = headsel::encode(tree, tags);
    for (int i = 1; i <= n; ++i) {
      auto flipped = tags;
      flipped[static_cast<std::size_t>(i - 1)] =
          flipped[static_cast<std::size_t>(i - 1)] == "A" ? "B" : "A";
      auto after = headsel::encode(tree, flipped);
      CHECK(after[static_cast<std::size_t>(i - 1)] == before[static_cast<std::size_t>(i - 1)]);
    }
  }
}

TEST_CASE("serialization grammar and lenient parsing") {
  CHECK(headsel::head_component({3, "NOUN", ""}) == "+3@NOUN");
  CHECK(headsel::head_component({-2, "ROOT", ""}) == "-2@ROOT");

  RelPosLabel parsed = headsel::parse_head_component("+3@NOUN", "amod");
  CHECK(parsed.offset == 3);
  CHECK(parsed.tag == "NOUN");
  CHECK(parsed.deprel == "amod");

  CHECK(headsel::parse_head_component("-1@ROOT").offset == -1);
  // Grammar violations become the unresolvable sentinel.
  CHECK(headsel::parse_head_component("garbage").offset == 0);
  CHECK(headsel::parse_head_component("+@NOUN").offset == 0);
  CHECK(headsel::parse_head_component("+0@NOUN").offset == 0);
  CHECK(headsel::parse_head_component("+2").offset == 0);
  CHECK(headsel::parse_head_component("").offset == 0);

  // Fixpoint on well-formed labels.
  for (const RelPosLabel label : {RelPosLabel{5, "X", "a"}, RelPosLabel{-12, "PUNCT", "b"}}) {
    RelPosLabel back = headsel::parse_head_component(headsel::head_component(label), label.deprel);
    CHECK(back == label);
  }
}

TEST_CASE("decode is total on arbitrary labels") {
  SplitMix64 rng(17);
  std::vector<std::string> tagset = {"A", "B", "ROOT"};
  for (int round = 0; round < 500; ++round) {
    int n = 1 + static_cast<int>(rng.below(10));
    std::vector<RelPosLabel> labels(static_cast<std::size_t>(n));
    std::vector<std::string> tags(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
      labels[static_cast<std::size_t>(i)].offset =
          static_cast<int>(rng.below(9)) - 4;  // -4..4 including the sentinel 0
      labels[static_cast<std::size_t>(i)].tag = tagset[rng.below(tagset.size())];
      tags[static_cast<std::size_t>(i)] = tagset[rng.below(2)];
    }
    CHECK(is_valid(headsel::decode(labels, tags)));
  }
}
