#pragma once

#include <compare>
#include <string>
#include <vector>

namespace deplabel {

// Directed dependency arc, head -> dependent. Position 0 is the artificial
// root; a "root arc" is one with head == 0.
struct Arc {
  int head = 0;
  int dep = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

// Dependency tree over token positions 1..n, rooted at position 0.
// heads/deprels are indexed by position; slot 0 is unused (-1 / "").
// Invariants: heads[i] in 0..n, heads[i] != i, every position reaches 0.
struct DepTree {
  int n = 0;
  std::vector<int> heads;            // size n+1
  std::vector<std::string> deprels;  // size n+1

  // Builds a tree from the conventional 1-based head list, e.g. {2,4,4,0,3}.
  // deprels, when given, must have the same length as heads_by_token.
  static DepTree from_heads(const std::vector<int>& heads_by_token,
                            const std::vector<std::string>& deprels_by_token = {});

  int head_of(int pos) const { return heads[pos]; }
  const std::string& deprel_of(int pos) const { return deprels[pos]; }

  // All n arcs (root arcs included), ordered by dependent position.
  std::vector<Arc> arcs() const;

  friend bool operator==(const DepTree&, const DepTree&) = default;
};

// Raw head assignment as produced by a decoder before repair: may contain
// gaps (kUnset), cycles, and any number of root attachments. Never a
// self-loop or an out-of-range value.
struct HeadMap {
  static constexpr int kUnset = -1;

  int n = 0;
  std::vector<int> heads;            // size n+1; kUnset where undefined
  std::vector<std::string> deprels;  // size n+1, may be left empty

  explicit HeadMap(int token_count = 0)
      : n(token_count),
        heads(static_cast<std::size_t>(token_count) + 1, kUnset),
        deprels(static_cast<std::size_t>(token_count) + 1) {}
};

// Partition of the non-root arcs into two mutually non-crossing planes plus
// the arcs assignable to neither.
struct PlaneAssignment {
  std::vector<Arc> plane1;
  std::vector<Arc> plane2;
  std::vector<Arc> dropped;
};

// True iff the arcs cross: exactly one endpoint of one arc lies strictly
// between the endpoints of the other. Arcs sharing an endpoint never cross.
bool crossing(const Arc& a, const Arc& b);

// Checks the DepTree invariants (sizes, ranges, acyclicity, reachability).
bool is_valid(const DepTree& tree);

// True iff no two arcs cross, root arcs included.
bool is_projective(const DepTree& tree);

// Greedy plane assignment over the non-root arcs, visited in ascending
// (rightmost endpoint, leftmost endpoint) order: an arc goes to plane 1 if it
// crosses nothing already there, else to plane 2 under the same rule, else it
// is dropped. Root arcs take no part (bracket codecs leave them implicit).
PlaneAssignment assign_planes(const DepTree& tree);

// Total repair of a raw head map into a valid tree:
//   1. every undefined head becomes 0;
//   2. each cycle is broken by re-attaching its smallest-index position to 0;
//   3. positions already consistent are untouched.
// Positions the repair touched get deprel "root"; the rest keep theirs.
DepTree repair(const HeadMap& raw);

// Optional single-root post-processing (decoders leave multiple root
// children alone by default): every root child after the first is
// re-attached to the first one. Deprels are left as predicted.
DepTree enforce_single_root(DepTree tree);

// Every valid tree over 1..n, in lexicographic head-vector order. There are
// exactly (n+1)^(n-1) of them. n is capped at 7.
std::vector<DepTree> enumerate_trees(int n);

}  // namespace deplabel
