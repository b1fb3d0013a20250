#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "deplabel/deptree.hpp"

namespace deplabel::transition {

// SH reads the next word; LA/RA create arcs; NOARC advances the Covington
// candidate without creating an arc and is invalid in arc-hybrid.
enum class Op { Shift, LeftArc, RightArc, NoArc };

std::string_view name(Op op);  // "SH", "LA", "RA", "NOARC"

enum class System { ArcHybrid, Covington };

// One word's share of the transition sequence. Always starts with Shift.
struct Chunk {
  std::vector<Op> ops;
  std::string deprel;
  friend bool operator==(const Chunk&, const Chunk&) = default;
};

// Transition names joined by '_', e.g. "SH_LA_LA_NOARC_RA".
std::string to_string(const Chunk& chunk);

// Lenient inverse: unknown names are dropped; a chunk that does not start
// with SH is replaced by a bare "SH" (the read transition is structurally
// mandatory, the rest of such a label is discarded).
Chunk parse_chunk(std::string_view text, std::string deprel = "");

// Static oracles. Arc-hybrid first filters the arcs breadth-first from the
// root, keeping each arc iff it crosses nothing already kept (so it loses
// arcs exactly on non-projective input); Covington realizes every tree.
// Both emit exactly n Shift transitions.
std::vector<Op> oracle_archybrid(const DepTree& tree);
std::vector<Op> oracle_covington(const DepTree& tree);

// Splits a sequence with n >= 1 Shifts into n chunks: each Shift starts a
// chunk, trailing transitions join the last one. deprels, when given, are
// attached chunk-by-chunk. Throws std::invalid_argument on zero Shifts.
std::vector<Chunk> chunk_transitions(const std::vector<Op>& ops,
                                     const std::vector<std::string>* deprels = nullptr);

struct Encoded {
  std::vector<Chunk> labels;
  std::vector<Arc> dropped;  // gold arcs the oracle run did not realize
};

// oracle -> chunks, with the replayed-arc diff as the dropped set.
Encoded encode(const DepTree& tree, System system);

// Robust replay: transitions whose preconditions fail (invalid candidate,
// second head, cycle, pop/shift on empty structures, NOARC outside
// Covington) are skipped entirely; repair attaches leftover tokens to root.
DepTree replay(const std::vector<Chunk>& labels, System system);

}  // namespace deplabel::transition
