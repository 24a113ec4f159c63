#include "linkforge/bingtree.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <string>

namespace linkforge {

namespace {

int ceil_log2(int n) {
  int h = 0;
  while ((1 << h) < n) ++h;
  return h;
}

void check_m(int m) {
  if (m < 2) throw TreeError("m must be at least 2, got " + std::to_string(m));
}

}  // namespace

std::vector<int> PlanarBinaryTree::leaves() const {
  std::vector<int> out;
  if (nodes.empty()) return out;
  std::function<void(int)> walk = [&](int v) {
    if (nodes[v].is_leaf()) {
      out.push_back(v);
      return;
    }
    walk(nodes[v].left);
    walk(nodes[v].right);
  };
  walk(0);
  return out;
}

std::vector<int> PlanarBinaryTree::leaf_depths() const {
  std::vector<int> out;
  if (nodes.empty()) return out;
  std::function<void(int, int)> walk = [&](int v, int depth) {
    if (nodes[v].is_leaf()) {
      out.push_back(depth);
      return;
    }
    walk(nodes[v].left, depth + 1);
    walk(nodes[v].right, depth + 1);
  };
  walk(0, 0);
  return out;
}

int PlanarBinaryTree::height() const {
  auto d = leaf_depths();
  return d.empty() ? 0 : *std::max_element(d.begin(), d.end());
}

PlanarBinaryTree PlanarBinaryTree::subtree(int v) const {
  PlanarBinaryTree t;
  std::function<int(int)> copy = [&](int u) {
    int id = static_cast<int>(t.nodes.size());
    t.nodes.push_back({-1, -1, nodes[u].label});
    if (!nodes[u].is_leaf()) {
      int l = copy(nodes[u].left);
      int r = copy(nodes[u].right);
      t.nodes[id].left = l;
      t.nodes[id].right = r;
    }
    return id;
  };
  copy(v);
  return t;
}

int height_h(int m) {
  check_m(m);
  return ceil_log2(m - 1);
}

int height_k(int m) {
  check_m(m);
  int k = 0;
  while ((2 << k) <= m - 1) ++k;
  return k;
}

PlanarBinaryTree build_tree(int m) {
  const int h = height_h(m);
  const int removals = (1 << h) - (m - 1);
  PlanarBinaryTree t;
  t.nodes.push_back({});
  // Complete tree of height h under the root's left child; bottom-level
  // sibling pairs are dropped from the right.
  int pairs_at_bottom = h == 0 ? 0 : (1 << (h - 1));
  int bottom_parent = 0;  // index among depth h-1 nodes, left to right
  std::function<int(int)> grow = [&](int depth) {
    int id = static_cast<int>(t.nodes.size());
    t.nodes.push_back({});
    if (depth == h) return id;
    if (depth == h - 1) {
      int position = bottom_parent++;
      if (position >= pairs_at_bottom - removals) return id;
    }
    int l = grow(depth + 1);
    int r = grow(depth + 1);
    t.nodes[id].left = l;
    t.nodes[id].right = r;
    return id;
  };
  int left = grow(0);
  int right = static_cast<int>(t.nodes.size());
  t.nodes.push_back({});
  t.nodes[0].left = left;
  t.nodes[0].right = right;
  return t;
}

PlanarBinaryTree dagger(const PlanarBinaryTree& t) {
  if (t.nodes.empty() || t.nodes[0].is_leaf()) throw TreeError("tree has no left subtree");
  return t.subtree(t.nodes[0].left);
}

PlanarBinaryTree label_leaves(PlanarBinaryTree t, const std::vector<int>& index) {
  auto ls = t.leaves();
  if (ls.size() != index.size())
    throw TreeError("index has " + std::to_string(index.size()) + " entries but the tree has " +
                    std::to_string(ls.size()) + " leaves");
  std::set<int> seen;
  for (int i : index) {
    if (i < 1) throw TreeError("index entries must be positive");
    if (!seen.insert(i).second) throw TreeError("index entry " + std::to_string(i) + " repeats");
  }
  for (std::size_t k = 0; k < ls.size(); ++k) t.nodes[ls[k]].label = index[k];
  return t;
}

Diagram tree_to_link(const PlanarBinaryTree& t) {
  if (t.nodes.empty() || t.nodes[0].is_leaf()) throw TreeError("tree must have at least two leaves");
  auto ls = t.leaves();
  std::vector<int> labels;
  for (int v : ls) {
    if (!t.nodes[v].label) throw TreeError("tree leaves are not labelled");
    labels.push_back(*t.nodes[v].label);
  }
  std::vector<int> sorted = labels;
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 0; k < sorted.size(); ++k)
    if (sorted[k] != static_cast<int>(k) + 1)
      throw TreeError("leaf labels must be 1.." + std::to_string(sorted.size()));

  Diagram d = braid_closure(2, {1, 1});
  std::vector<int> node_of = {t.nodes[0].left, t.nodes[0].right};  // per component
  std::deque<int> queue(node_of.begin(), node_of.end());
  while (!queue.empty()) {
    int v = queue.front();
    queue.pop_front();
    if (t.nodes[v].is_leaf()) continue;
    auto it = std::find(node_of.begin(), node_of.end(), v);
    const int c = static_cast<int>(it - node_of.begin());
    d = bing_double(d, c);
    *it = t.nodes[v].left;
    node_of.insert(node_of.begin() + c + 1, t.nodes[v].right);
    queue.push_back(t.nodes[v].left);
    queue.push_back(t.nodes[v].right);
  }
  std::vector<int> order(node_of.size());
  for (std::size_t c = 0; c < node_of.size(); ++c) order[*t.nodes[node_of[c]].label - 1] = static_cast<int>(c);
  return permute_components(d, order);
}

}  // namespace linkforge
