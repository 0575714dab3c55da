#pragma once

#include <vector>

#include "twreach/tree_decomposition.hpp"

namespace twreach {

/// A rooted tree decomposition in which every node has at most two
/// children. The first child (smaller id) is the left child.
class BalancedTD {
 public:
  /// Throws PreconditionError if `t` is unrooted or some node has more than
  /// two children.
  explicit BalancedTD(TreeDecomp t);

  const TreeDecomp& decomposition() const noexcept { return td_; }
  NodeId root() const noexcept { return td_.root(); }
  NodeId size() const noexcept { return td_.size(); }
  const VertexSet& bag(NodeId t) const { return td_.bag(t); }

  NodeId left(NodeId t) const { return left_[t]; }
  NodeId right(NodeId t) const { return right_[t]; }
  NodeId parent(NodeId t) const { return td_.parent(t); }
  bool is_leaf(NodeId t) const { return left_[t] == kNoNode && right_[t] == kNoNode; }

  /// Edge count from the root to `t`.
  int level(NodeId t) const { return level_[t]; }
  /// Height of the subtree rooted at `t` (0 for a leaf).
  int height(NodeId t) const { return height_[t]; }
  int depth() const { return height_[root()]; }

  /// Leaves in left-to-right order.
  const std::vector<NodeId>& leaves() const noexcept { return leaves_; }

 private:
  TreeDecomp td_;
  std::vector<NodeId> left_;
  std::vector<NodeId> right_;
  std::vector<int> level_;
  std::vector<int> height_;
  std::vector<NodeId> leaves_;
};

/// Rebuilds a decomposition as a binary tree of logarithmic depth.
///
/// The tree is split recursively at a node chosen so that every remaining
/// piece is at most half the size of its parent piece whenever the piece
/// touches at most one outside node; pieces touching two outside nodes are
/// split on the path between the two contact points instead, so no piece
/// ever touches more than two. Each emitted bag is the split node's bag plus
/// the vertices shared across the piece's (at most two) boundary edges, so
/// width grows to at most 3(w+1)-1. Children of a split node are merged
/// pairwise, shallowest first, under copies of its bag.
///
/// Only the connected-occurrences property is checked (no graph is given);
/// a violation throws ValidationError. The input root, if any, is ignored.
BalancedTD binarize_balance(const TreeDecomp& t);

}  // namespace twreach
