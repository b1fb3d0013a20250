#include "deplabel/transition.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace deplabel::transition {

namespace {

// Raw replay over the concatenated transitions; no repair.
HeadMap replay_raw(int n, const std::vector<Op>& ops, System system) {
  HeadMap raw(n);
  if (system == System::ArcHybrid) {
    std::vector<int> stack{0};
    std::deque<int> buffer;
    for (int i = 1; i <= n; ++i) buffer.push_back(i);
    for (Op op : ops) {
      switch (op) {
        case Op::Shift:
          if (!buffer.empty()) {
            stack.push_back(buffer.front());
            buffer.pop_front();
          }
          break;
        case Op::LeftArc:
          if (!buffer.empty() && stack.size() >= 2 && stack.back() != 0 &&
              raw.heads[stack.back()] == HeadMap::kUnset) {
            raw.heads[stack.back()] = buffer.front();
            stack.pop_back();
          }
          break;
        case Op::RightArc:
          if (stack.size() >= 2 && raw.heads[stack.back()] == HeadMap::kUnset) {
            raw.heads[stack.back()] = stack[stack.size() - 2];
            stack.pop_back();
          }
          break;
        case Op::NoArc:
          break;  // not a transition of this system
      }
    }
  } else {
    // Covington state: j is the last read word, i the left candidate.
    int j = 0, i = -1;
    auto reaches = [&](int from, int target) {
      int cur = from;
      while (cur > 0) {
        if (cur == target) return true;
        cur = raw.heads[cur] == HeadMap::kUnset ? 0 : raw.heads[cur];
      }
      return cur == target;
    };
    for (Op op : ops) {
      switch (op) {
        case Op::Shift:
          if (j < n) {
            ++j;
            i = j - 1;
          }
          break;
        case Op::LeftArc:  // arc j -> i
          if (i >= 1 && i < j && raw.heads[i] == HeadMap::kUnset && !reaches(j, i)) {
            raw.heads[i] = j;
            --i;
          }
          break;
        case Op::RightArc:  // arc i -> j
          if (i >= 0 && i < j && raw.heads[j] == HeadMap::kUnset && !reaches(i, j)) {
            raw.heads[j] = i;
            --i;
          }
          break;
        case Op::NoArc:
          if (i >= 0 && i < j) --i;
          break;
      }
    }
  }
  return raw;
}

std::vector<Op> concat(const std::vector<Chunk>& labels) {
  std::vector<Op> ops;
  for (const Chunk& chunk : labels) ops.insert(ops.end(), chunk.ops.begin(), chunk.ops.end());
  return ops;
}

}  // namespace

std::string_view name(Op op) {
  switch (op) {
    case Op::Shift: return "SH";
    case Op::LeftArc: return "LA";
    case Op::RightArc: return "RA";
    case Op::NoArc: return "NOARC";
  }
  return "SH";
}

std::string to_string(const Chunk& chunk) {
  std::string out;
  for (std::size_t k = 0; k < chunk.ops.size(); ++k) {
    if (k) out += '_';
    out += name(chunk.ops[k]);
  }
  return out;
}

Chunk parse_chunk(std::string_view text, std::string deprel) {
  Chunk chunk;
  chunk.deprel = std::move(deprel);
  std::size_t start = 0;
  while (start <= text.size()) {
    auto sep = text.find('_', start);
    std::string_view word = sep == std::string_view::npos ? text.substr(start)
                                                          : text.substr(start, sep - start);
    if (word == "SH")
      chunk.ops.push_back(Op::Shift);
    else if (word == "LA")
      chunk.ops.push_back(Op::LeftArc);
    else if (word == "RA")
      chunk.ops.push_back(Op::RightArc);
    else if (word == "NOARC")
      chunk.ops.push_back(Op::NoArc);
    // anything else is predicted garbage and is dropped
    if (sep == std::string_view::npos) break;
    start = sep + 1;
  }
  if (chunk.ops.empty() || chunk.ops.front() != Op::Shift) chunk.ops = {Op::Shift};
  return chunk;
}

std::vector<Op> oracle_archybrid(const DepTree& tree) {
  const int n = tree.n;
  // Phase 1: keep arcs breadth-first from the root, each iff it crosses
  // nothing already kept. Root arcs join the crossing checks.
  std::vector<std::vector<int>> children(static_cast<std::size_t>(n) + 1);
  for (int d = 1; d <= n; ++d) children[tree.heads[d]].push_back(d);

  std::vector<int> kept_head(static_cast<std::size_t>(n) + 1, -2);
  std::vector<int> pending(static_cast<std::size_t>(n) + 1, 0);  // uncollected kept deps
  std::vector<Arc> kept;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int node = queue.front();
    queue.pop_front();
    for (int child : children[node]) {
      Arc arc{node, child};
      bool ok = true;
      for (const Arc& other : kept)
        if (crossing(other, arc)) {
          ok = false;
          break;
        }
      if (ok) {
        kept.push_back(arc);
        kept_head[child] = node;
        ++pending[node];
      }
      queue.push_back(child);
    }
  }

  // Phase 2: static oracle against the kept arcs.
  std::vector<Op> ops;
  std::vector<int> stack{0};
  std::deque<int> buffer;
  for (int i = 1; i <= n; ++i) buffer.push_back(i);
  while (true) {
    const int top = stack.back();
    if (!buffer.empty() && top != 0 && kept_head[top] == buffer.front() && pending[top] == 0) {
      ops.push_back(Op::LeftArc);
      --pending[buffer.front()];
      stack.pop_back();
    } else if (stack.size() >= 2 && kept_head[top] == stack[stack.size() - 2] &&
               pending[top] == 0) {
      ops.push_back(Op::RightArc);
      --pending[stack[stack.size() - 2]];
      stack.pop_back();
    } else if (!buffer.empty()) {
      ops.push_back(Op::Shift);
      stack.push_back(buffer.front());
      buffer.pop_front();
    } else {
      break;
    }
  }
  return ops;
}

std::vector<Op> oracle_covington(const DepTree& tree) {
  std::vector<Op> ops;
  for (int j = 1; j <= tree.n; ++j) {
    ops.push_back(Op::Shift);
    std::vector<Op> trail;
    std::size_t last_arc = 0;  // length of trail up to the last arc transition
    for (int i = j - 1; i >= 0; --i) {
      if (i >= 1 && tree.heads[i] == j) {
        trail.push_back(Op::LeftArc);
        last_arc = trail.size();
      } else if (tree.heads[j] == i) {
        trail.push_back(Op::RightArc);
        last_arc = trail.size();
      } else {
        trail.push_back(Op::NoArc);
      }
    }
    // Trailing NOARCs are never emitted.
    ops.insert(ops.end(), trail.begin(), trail.begin() + static_cast<long>(last_arc));
  }
  return ops;
}

std::vector<Chunk> chunk_transitions(const std::vector<Op>& ops,
                                     const std::vector<std::string>* deprels) {
  std::vector<Chunk> chunks;
  for (const Op op : ops) {
    if (op == Op::Shift)
      chunks.push_back(Chunk{{op}, ""});
    else if (!chunks.empty())
      chunks.back().ops.push_back(op);
    // transitions before the first Shift cannot belong to any word; with at
    // least one Shift present the sequence is chunkable, otherwise we throw
  }
  if (chunks.empty()) throw std::invalid_argument("transition sequence contains no SH");
  if (deprels) {
    if (deprels->size() != chunks.size())
      throw std::invalid_argument("deprel list length does not match chunk count");
    for (std::size_t k = 0; k < chunks.size(); ++k) chunks[k].deprel = (*deprels)[k];
  }
  return chunks;
}

Encoded encode(const DepTree& tree, System system) {
  std::vector<Op> ops =
      system == System::ArcHybrid ? oracle_archybrid(tree) : oracle_covington(tree);
  std::vector<std::string> deprels(tree.deprels.begin() + 1, tree.deprels.end());
  Encoded out;
  out.labels = chunk_transitions(ops, &deprels);

  HeadMap raw = replay_raw(tree.n, ops, system);
  for (const Arc& arc : tree.arcs())
    if (raw.heads[arc.dep] != arc.head) out.dropped.push_back(arc);
  return out;
}

DepTree replay(const std::vector<Chunk>& labels, System system) {
  const int n = static_cast<int>(labels.size());
  HeadMap raw = replay_raw(n, concat(labels), system);
  for (int i = 1; i <= n; ++i) raw.deprels[i] = labels[i - 1].deprel;
  return repair(raw);
}

}  // namespace deplabel::transition
