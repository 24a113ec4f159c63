#pragma once

#include "linkforge/diagram.hpp"

#include <optional>
#include <stdexcept>
#include <vector>

namespace linkforge {

class TreeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rooted planar binary tree; node 0 is the root.
struct PlanarBinaryTree {
  struct Node {
    int left = -1;
    int right = -1;
    std::optional<int> label;  // leaves only
    bool is_leaf() const { return left < 0; }
  };
  std::vector<Node> nodes;

  std::vector<int> leaves() const;        // left to right
  std::vector<int> leaf_depths() const;   // root-relative, left to right
  int height() const;
  int leaf_count() const { return static_cast<int>(leaves().size()); }
  // Subtree rooted at node v, renumbered so v becomes 0.
  PlanarBinaryTree subtree(int v) const;
};

int height_h(int m);  // ceil(log2(m-1))
int height_k(int m);  // floor(log2(m-1))

// T(m): the root's right child is a leaf, its left child is T-dagger(m), a
// minimal-height tree with m-1 leaves.
PlanarBinaryTree build_tree(int m);
PlanarBinaryTree dagger(const PlanarBinaryTree& t);  // left subtree of the root

PlanarBinaryTree label_leaves(PlanarBinaryTree t, const std::vector<int>& index);

// Iterated Bing double of the Hopf link along the tree; component i-1 is the
// leaf labelled i.
Diagram tree_to_link(const PlanarBinaryTree& t);

}  // namespace linkforge
