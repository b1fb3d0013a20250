#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "deplabel/deptree.hpp"

namespace deplabel::headsel {

// Reserved tag of the artificial root at position 0. Root attachments are
// ordinary leftward references to it ("-1@ROOT").
inline constexpr std::string_view kRootTag = "ROOT";

// Relative PoS-based head reference: the head of a token is the |offset|-th
// word with PoS `tag`, to the right when offset > 0 and to the left
// (position 0 included) when offset < 0. offset == 0 is the unresolvable
// sentinel produced only by lenient parsing of corrupted strings.
struct RelPosLabel {
  int offset = 0;
  std::string tag;
  std::string deprel;

  friend bool operator==(const RelPosLabel&, const RelPosLabel&) = default;
};

// "{sign}{|offset|}@{tag}", e.g. "+1@NOUN", "-2@ROOT".
std::string head_component(const RelPosLabel& label);

// Lenient inverse of head_component: anything that does not match the
// grammar yields the offset-0 sentinel, which decodes to a root attachment.
RelPosLabel parse_head_component(std::string_view text, std::string deprel = "");

// Encodes any tree (projective or not). tags holds the PoS of positions
// 1..n; position 0 implicitly carries kRootTag. The label of token i never
// depends on tags[i-1].
std::vector<RelPosLabel> encode(const DepTree& tree, const std::vector<std::string>& tags);

// Total decoder: resolves each reference by scanning in the signed
// direction; references with fewer matches than |offset| stay undefined and
// fall to the repair stage (root attachment).
DepTree decode(const std::vector<RelPosLabel>& labels, const std::vector<std::string>& tags);

}  // namespace deplabel::headsel
