#pragma once

#include <memory>
#include <vector>

#include "twreach/graph.hpp"
#include "twreach/tree_decomposition.hpp"

namespace twreach {

/// A bag of the decomposition that splits a target set in half.
struct SeparatorResult {
  NodeId bag_node = kNoNode;
  VertexSet separator;
  std::size_t target_size = 0;
};

/// True iff every component of G - s holds at most |u|/2 members of u
/// (compared exactly as 2*count <= |u|).
bool is_balanced_separator(const DiGraph& g, const VertexSet& s, const VertexSet& u);

/// Answers repeated separator queries against one (graph, decomposition)
/// pair. Query results match a plain scan of the bags in ascending id order
/// with is_balanced_separator(); the index only lets most bags be accepted
/// or rejected without a graph search.
///
/// Each component of G - B(t) lies inside the bags of a single branch of
/// the tree at t, so per-branch member counts bound per-component counts.
/// When no branch holds more than half of u the bag is accepted outright;
/// otherwise only the one heavy branch is searched.
class SeparatorIndex {
 public:
  SeparatorIndex(std::shared_ptr<const DiGraph> g, std::shared_ptr<const TreeDecomp> t);

  /// First bag in ascending node-id order that is a balanced separator of u.
  /// Throws ValidationError when no bag qualifies (impossible for a valid
  /// decomposition) or when some vertex of u lies in no bag.
  SeparatorResult find(const VertexSet& u) const;

  const DiGraph& graph() const noexcept { return *g_; }
  const TreeDecomp& decomposition() const noexcept { return *t_; }

 private:
  bool heavy_branch_splits(NodeId t, NodeId heavy_child, const VertexSet& u,
                           std::vector<int>& blocked, std::vector<int>& seen, int stamp) const;

  std::shared_ptr<const DiGraph> g_;
  std::shared_ptr<const TreeDecomp> t_;
  // The decomposition rooted at node 1 (or a copy of the input root).
  std::vector<NodeId> order_;
  std::vector<NodeId> parent_;
  std::vector<std::vector<NodeId>> children_;
  std::vector<int> entry_;
  std::vector<int> exit_;
  std::vector<NodeId> top_;
};

/// Convenience wrapper building a throwaway index.
SeparatorResult sep(const DiGraph& g, const TreeDecomp& t, const VertexSet& u);

}  // namespace twreach
