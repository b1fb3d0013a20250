#include "deplabel/headsel.hpp"

#include <cctype>
#include <stdexcept>

namespace deplabel::headsel {

namespace {

std::string_view tag_at(const std::vector<std::string>& tags, int pos) {
  return pos == 0 ? kRootTag : std::string_view(tags[pos - 1]);
}

}  // namespace

std::string head_component(const RelPosLabel& label) {
  std::string out = label.offset < 0 ? "-" : "+";
  out += std::to_string(label.offset < 0 ? -label.offset : label.offset);
  out += '@';
  out += label.tag;
  return out;
}

RelPosLabel parse_head_component(std::string_view text, std::string deprel) {
  RelPosLabel label;
  label.deprel = std::move(deprel);
  std::size_t i = 0;
  int sign = 1;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    if (text[i] == '-') sign = -1;
    ++i;
  }
  std::size_t digits_start = i;
  long magnitude = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    magnitude = magnitude * 10 + (text[i] - '0');
    if (magnitude > 1'000'000) magnitude = 1'000'000;  // corrupted labels stay finite
    ++i;
  }
  if (i == digits_start || i >= text.size() || text[i] != '@') return label;  // sentinel
  label.tag = std::string(text.substr(i + 1));
  if (magnitude == 0 || label.tag.empty()) return RelPosLabel{0, "", label.deprel};
  label.offset = sign * static_cast<int>(magnitude);
  return label;
}

std::vector<RelPosLabel> encode(const DepTree& tree, const std::vector<std::string>& tags) {
  if (static_cast<int>(tags.size()) != tree.n)
    throw std::invalid_argument("tag list length does not match tree size");
  std::vector<RelPosLabel> labels;
  labels.reserve(static_cast<std::size_t>(tree.n));
  for (int i = 1; i <= tree.n; ++i) {
    const int h = tree.heads[i];
    const std::string_view head_tag = tag_at(tags, h);
    int rank = 0;
    if (h > i) {
      for (int j = i + 1; j <= tree.n; ++j) {
        if (tag_at(tags, j) == head_tag) {
          ++rank;
          if (j == h) break;
        }
      }
    } else {
      for (int j = i - 1; j >= 0; --j) {
        if (tag_at(tags, j) == head_tag) {
          ++rank;
          if (j == h) break;
        }
      }
      rank = -rank;
    }
    labels.push_back({rank, std::string(head_tag), tree.deprels[i]});
  }
  return labels;
}

DepTree decode(const std::vector<RelPosLabel>& labels, const std::vector<std::string>& tags) {
  if (labels.size() != tags.size())
    throw std::invalid_argument("label list length does not match tag list length");
  const int n = static_cast<int>(labels.size());
  HeadMap raw(n);
  for (int i = 1; i <= n; ++i) {
    const RelPosLabel& label = labels[i - 1];
    raw.deprels[i] = label.deprel;
    if (label.offset == 0) continue;  // unresolvable sentinel
    int remaining = label.offset > 0 ? label.offset : -label.offset;
    if (label.offset > 0) {
      for (int j = i + 1; j <= n; ++j) {
        if (tag_at(tags, j) == label.tag && --remaining == 0) {
          raw.heads[i] = j;
          break;
        }
      }
    } else {
      for (int j = i - 1; j >= 0; --j) {
        if (tag_at(tags, j) == label.tag && --remaining == 0) {
          raw.heads[i] = j;
          break;
        }
      }
    }
  }
  return repair(raw);
}

}  // namespace deplabel::headsel
