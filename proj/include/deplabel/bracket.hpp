#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "deplabel/deptree.hpp"

namespace deplabel::bracket {

// Per-token bracket string, stored as counts. Symbol meanings at token i:
//   <   token i-1 has an incoming arc from the right
//   /   token i-1 has one outgoing arc to the right (per occurrence)
//   \   token i has one outgoing arc to the left (per occurrence)
//   >   token i has an incoming arc from the left
// Canonical serialization order is < / \ >; the empty string prints as ".".
struct BracketString {
  bool has_lt = false;
  int slashes = 0;
  int backslashes = 0;
  bool has_gt = false;

  bool empty() const { return !has_lt && slashes == 0 && backslashes == 0 && !has_gt; }
  friend bool operator==(const BracketString&, const BracketString&) = default;
};

// starred = true renders the second-plane variant: every symbol gets a '*'
// suffix ("/*", ">*", "<*", "\*").
std::string to_string(const BracketString& brackets, bool starred = false);

// Count-based parse: symbols may appear in any order; '*', '.' and unknown
// characters are ignored, so the same parser reads both planes and survives
// arbitrary predicted strings.
BracketString parse(std::string_view text);

struct BracketLabel {
  BracketString brackets;
  std::string deprel;
  friend bool operator==(const BracketLabel&, const BracketLabel&) = default;
};

// Label of the 2-planar variant: plane 1 plain, plane 2 starred.
struct TwoPlanarLabel {
  BracketString plane1;
  BracketString plane2;
  std::string deprel;
  friend bool operator==(const TwoPlanarLabel&, const TwoPlanarLabel&) = default;
};

// "plane1 plane2" with plane-2 symbols starred, e.g. "<\\ /*".
std::string display(const TwoPlanarLabel& label);

struct Encoded {
  std::vector<BracketLabel> labels;
  std::vector<Arc> dropped;  // non-root arcs the single-plane codec cannot carry
};

struct Encoded2Planar {
  std::vector<TwoPlanarLabel> labels;
  std::vector<Arc> dropped;  // arcs assignable to neither plane
};

// Restricted bracketing: every non-root arc becomes one opening and one
// closing symbol; root arcs are implicit. An arc is dropped exactly when the
// two-stack decode of the emitted labels would match it to the wrong
// partner; the returned labels always decode to precisely the kept arcs.
Encoded encode(const DepTree& tree);

// Left-to-right sweep with one stack per direction; per-token symbol order
// < / \ >. Pops on empty stacks are skipped, leftovers are discarded, the
// first head assigned to a token wins, and repair attaches the rest to root.
DepTree decode(const std::vector<BracketLabel>& labels);

// 2-planar bracketing: assign_planes splits the non-root arcs and each plane
// is bracket-encoded independently. Loses exactly the assignment's dropped
// arcs, so every 2-planar tree round-trips.
Encoded2Planar encode_2planar(const DepTree& tree);

// Same sweep with four stacks; at each token plane-1 symbols act before
// plane-2 symbols.
DepTree decode_2planar(const std::vector<TwoPlanarLabel>& labels);

}  // namespace deplabel::bracket
