#include "deplabel/bracket.hpp"

#include <algorithm>

namespace deplabel::bracket {

namespace {

void append_symbol(std::string& out, char symbol, bool starred) {
  out += symbol;
  if (starred) out += '*';
}

// Emits the bracket symbols for a set of arcs over tokens 1..n.
std::vector<BracketString> emit(int n, const std::vector<Arc>& arcs) {
  std::vector<BracketString> labels(static_cast<std::size_t>(n));
  for (const Arc& arc : arcs) {
    if (arc.head > arc.dep) {  // leftward: < on dep+1, \ on head
      labels[arc.dep].has_lt = true;  // dep+1 is 1-based position dep+1 = index dep
      labels[arc.head - 1].backslashes += 1;
    } else {  // rightward: / on head+1, > on dep
      labels[arc.head].slashes += 1;
      labels[arc.dep - 1].has_gt = true;
    }
  }
  return labels;
}

struct StackPair {
  std::vector<int> left;   // dependents waiting for a \ (their head is to the right)
  std::vector<int> right;  // heads waiting for a > (their dependent is to the right)
};

// The shared sweep. Each plane contributes its symbols at every token,
// plane 1 first. Returns raw arcs; no repair.
HeadMap sweep(int n, const std::vector<BracketString>* plane1,
              const std::vector<BracketString>* plane2) {
  HeadMap raw(n);
  StackPair stacks1, stacks2;
  auto step = [&](int i, const BracketString& b, StackPair& stacks) {
    if (b.has_lt) stacks.left.push_back(i - 1);
    for (int k = 0; k < b.slashes; ++k) stacks.right.push_back(i - 1);
    for (int k = 0; k < b.backslashes; ++k) {
      if (stacks.left.empty()) continue;  // pop on empty stack: skipped
      int dep = stacks.left.back();
      stacks.left.pop_back();
      // dep may be 0 (a '<' on token 1); position 0 can never be a dependent.
      if (dep >= 1 && raw.heads[dep] == HeadMap::kUnset && dep != i) raw.heads[dep] = i;
    }
    if (b.has_gt) {
      if (!stacks.right.empty()) {
        int head = stacks.right.back();
        stacks.right.pop_back();
        if (raw.heads[i] == HeadMap::kUnset && head != i) raw.heads[i] = head;
      }
    }
  };
  for (int i = 1; i <= n; ++i) {
    if (plane1) step(i, (*plane1)[i - 1], stacks1);
    if (plane2) step(i, (*plane2)[i - 1], stacks2);
  }
  return raw;  // leftover stack entries are simply discarded
}

std::vector<Arc> arcs_of(const HeadMap& raw) {
  std::vector<Arc> out;
  for (int i = 1; i <= raw.n; ++i)
    if (raw.heads[i] != HeadMap::kUnset) out.push_back({raw.heads[i], i});
  return out;
}

}  // namespace

std::string to_string(const BracketString& brackets, bool starred) {
  if (brackets.empty()) return ".";
  std::string out;
  if (brackets.has_lt) append_symbol(out, '<', starred);
  for (int k = 0; k < brackets.slashes; ++k) append_symbol(out, '/', starred);
  for (int k = 0; k < brackets.backslashes; ++k) append_symbol(out, '\\', starred);
  if (brackets.has_gt) append_symbol(out, '>', starred);
  return out;
}

BracketString parse(std::string_view text) {
  BracketString out;
  for (char c : text) {
    switch (c) {
      case '<': out.has_lt = true; break;
      case '/': out.slashes += 1; break;
      case '\\': out.backslashes += 1; break;
      case '>': out.has_gt = true; break;
      default: break;  // '.', '*' and anything else carry no brackets
    }
  }
  return out;
}

std::string display(const TwoPlanarLabel& label) {
  return to_string(label.plane1) + " " + to_string(label.plane2, /*starred=*/true);
}

Encoded encode(const DepTree& tree) {
  std::vector<Arc> all;
  for (const Arc& arc : tree.arcs())
    if (arc.head != 0) all.push_back(arc);

  // Iterate to a fixpoint: drop every arc the sweep matches wrongly, then
  // re-emit. Each round strictly shrinks the kept set, so this terminates.
  std::vector<Arc> kept = all;
  std::vector<BracketString> emitted;
  while (true) {
    emitted = emit(tree.n, kept);
    std::vector<Arc> decoded = arcs_of(sweep(tree.n, &emitted, nullptr));
    std::sort(decoded.begin(), decoded.end());
    std::vector<Arc> sorted_kept = kept;
    std::sort(sorted_kept.begin(), sorted_kept.end());
    if (decoded == sorted_kept) break;
    std::vector<Arc> next;
    for (const Arc& arc : kept)
      if (std::binary_search(decoded.begin(), decoded.end(), arc)) next.push_back(arc);
    kept = std::move(next);
  }

  Encoded out;
  out.labels.resize(static_cast<std::size_t>(tree.n));
  for (int i = 1; i <= tree.n; ++i) {
    out.labels[i - 1].brackets = emitted[i - 1];
    out.labels[i - 1].deprel = tree.deprels[i];
  }
  for (const Arc& arc : all)
    if (std::find(kept.begin(), kept.end(), arc) == kept.end()) out.dropped.push_back(arc);
  return out;
}

DepTree decode(const std::vector<BracketLabel>& labels) {
  const int n = static_cast<int>(labels.size());
  std::vector<BracketString> brackets(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) brackets[i] = labels[i].brackets;
  HeadMap raw = sweep(n, &brackets, nullptr);
  for (int i = 1; i <= n; ++i) raw.deprels[i] = labels[i - 1].deprel;
  return repair(raw);
}

Encoded2Planar encode_2planar(const DepTree& tree) {
  PlaneAssignment planes = assign_planes(tree);
  std::vector<BracketString> plane1 = emit(tree.n, planes.plane1);
  std::vector<BracketString> plane2 = emit(tree.n, planes.plane2);

  Encoded2Planar out;
  out.labels.resize(static_cast<std::size_t>(tree.n));
  for (int i = 1; i <= tree.n; ++i) {
    out.labels[i - 1].plane1 = plane1[i - 1];
    out.labels[i - 1].plane2 = plane2[i - 1];
    out.labels[i - 1].deprel = tree.deprels[i];
  }
  out.dropped = planes.dropped;
  return out;
}

DepTree decode_2planar(const std::vector<TwoPlanarLabel>& labels) {
  const int n = static_cast<int>(labels.size());
  std::vector<BracketString> plane1(static_cast<std::size_t>(n));
  std::vector<BracketString> plane2(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    plane1[i] = labels[i].plane1;
    plane2[i] = labels[i].plane2;
  }
  HeadMap raw = sweep(n, &plane1, &plane2);
  for (int i = 1; i <= n; ++i) raw.deprels[i] = labels[i - 1].deprel;
  return repair(raw);
}

}  // namespace deplabel::bracket
