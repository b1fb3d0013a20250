#include "deplabel/deptree.hpp"

#include <algorithm>
#include <stdexcept>

namespace deplabel {

DepTree DepTree::from_heads(const std::vector<int>& heads_by_token,
                            const std::vector<std::string>& deprels_by_token) {
  DepTree tree;
  tree.n = static_cast<int>(heads_by_token.size());
  tree.heads.assign(static_cast<std::size_t>(tree.n) + 1, -1);
  tree.deprels.assign(static_cast<std::size_t>(tree.n) + 1, "");
  if (!deprels_by_token.empty() && deprels_by_token.size() != heads_by_token.size())
    throw std::invalid_argument("deprel list length does not match head list length");
  for (int i = 1; i <= tree.n; ++i) {
    tree.heads[i] = heads_by_token[i - 1];
    if (!deprels_by_token.empty()) tree.deprels[i] = deprels_by_token[i - 1];
  }
  return tree;
}

std::vector<Arc> DepTree::arcs() const {
  std::vector<Arc> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int d = 1; d <= n; ++d) out.push_back({heads[d], d});
  return out;
}

bool crossing(const Arc& a, const Arc& b) {
  const int al = std::min(a.head, a.dep), ar = std::max(a.head, a.dep);
  const int bl = std::min(b.head, b.dep), br = std::max(b.head, b.dep);
  if (al == bl || al == br || ar == bl || ar == br) return false;
  const bool bl_inside = al < bl && bl < ar;
  const bool br_inside = al < br && br < ar;
  return bl_inside != br_inside;
}

bool is_valid(const DepTree& tree) {
  if (tree.n < 0) return false;
  const std::size_t want = static_cast<std::size_t>(tree.n) + 1;
  if (tree.heads.size() != want || tree.deprels.size() != want) return false;
  for (int i = 1; i <= tree.n; ++i) {
    if (tree.heads[i] < 0 || tree.heads[i] > tree.n || tree.heads[i] == i) return false;
  }
  // Every position must reach 0 by iterating heads.
  for (int i = 1; i <= tree.n; ++i) {
    int cur = i;
    for (int steps = 0; cur != 0; ++steps) {
      if (steps > tree.n) return false;  // cycle
      cur = tree.heads[cur];
    }
  }
  return true;
}

bool is_projective(const DepTree& tree) {
  const auto all = tree.arcs();
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (crossing(all[i], all[j])) return false;
  return true;
}

PlaneAssignment assign_planes(const DepTree& tree) {
  std::vector<Arc> work;
  for (const Arc& arc : tree.arcs())
    if (arc.head != 0) work.push_back(arc);
  std::stable_sort(work.begin(), work.end(), [](const Arc& a, const Arc& b) {
    const int ar = std::max(a.head, a.dep), br = std::max(b.head, b.dep);
    if (ar != br) return ar < br;
    return std::min(a.head, a.dep) < std::min(b.head, b.dep);
  });

  PlaneAssignment out;
  auto fits = [](const std::vector<Arc>& plane, const Arc& arc) {
    for (const Arc& other : plane)
      if (crossing(other, arc)) return false;
    return true;
  };
  for (const Arc& arc : work) {
    if (fits(out.plane1, arc))
      out.plane1.push_back(arc);
    else if (fits(out.plane2, arc))
      out.plane2.push_back(arc);
    else
      out.dropped.push_back(arc);
  }
  return out;
}

DepTree repair(const HeadMap& raw) {
  const int n = raw.n;
  DepTree tree;
  tree.n = n;
  tree.heads.assign(static_cast<std::size_t>(n) + 1, -1);
  tree.deprels.assign(static_cast<std::size_t>(n) + 1, "");
  for (int i = 1; i <= n && i < static_cast<int>(raw.deprels.size()); ++i)
    tree.deprels[i] = raw.deprels[i];

  std::vector<bool> touched(static_cast<std::size_t>(n) + 1, false);
  for (int i = 1; i <= n; ++i) {
    int h = i < static_cast<int>(raw.heads.size()) ? raw.heads[i] : HeadMap::kUnset;
    if (h < 0 || h > n || h == i) {
      tree.heads[i] = 0;
      touched[i] = true;
    } else {
      tree.heads[i] = h;
    }
  }

  // Break cycles: walk the head chain from every position; a chain that
  // re-enters itself before reaching 0 or a settled node is a cycle, and its
  // smallest member gets re-attached to 0.
  // state: 0 = unknown, 1 = on current path, 2 = settled (reaches 0)
  std::vector<char> state(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> path;
  for (int start = 1; start <= n; ++start) {
    if (state[start] != 0) continue;
    path.clear();
    int cur = start;
    while (cur != 0 && state[cur] == 0) {
      state[cur] = 1;
      path.push_back(cur);
      cur = tree.heads[cur];
    }
    if (cur != 0 && state[cur] == 1) {
      // Found a cycle: it is the suffix of path starting at cur.
      auto it = std::find(path.begin(), path.end(), cur);
      int smallest = *std::min_element(it, path.end());
      tree.heads[smallest] = 0;
      touched[smallest] = true;
    }
    for (int node : path) state[node] = 2;
  }

  for (int i = 1; i <= n; ++i)
    if (touched[i]) tree.deprels[i] = "root";
  return tree;
}

DepTree enforce_single_root(DepTree tree) {
  int first = 0;
  for (int i = 1; i <= tree.n; ++i) {
    if (tree.heads[i] != 0) continue;
    if (first == 0)
      first = i;
    else
      tree.heads[i] = first;
  }
  return tree;
}

std::vector<DepTree> enumerate_trees(int n) {
  if (n < 1 || n > 7) throw std::invalid_argument("enumerate_trees supports 1 <= n <= 7");
  std::vector<DepTree> out;
  std::vector<int> heads(static_cast<std::size_t>(n), 0);
  // Odometer over head vectors in {0..n}^n, self-loops skipped up front.
  while (true) {
    bool ok = true;
    for (int i = 1; i <= n && ok; ++i) {
      int cur = i;
      for (int steps = 0; cur != 0; ++steps) {
        if (steps >= n) {
          ok = false;
          break;
        }
        cur = heads[cur - 1];
      }
    }
    if (ok) {
      std::vector<std::string> deprels(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) deprels[i] = heads[i] == 0 ? "root" : "dep";
      out.push_back(DepTree::from_heads(heads, deprels));
    }
    int pos = n - 1;
    while (pos >= 0) {
      ++heads[pos];
      if (heads[pos] == pos + 1) ++heads[pos];  // skip self
      if (heads[pos] <= n) break;
      heads[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return out;
}

}  // namespace deplabel
