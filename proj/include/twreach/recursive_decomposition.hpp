#pragma once

#include <compare>
#include <memory>
#include <vector>

#include "twreach/balanced.hpp"
#include "twreach/graph.hpp"
#include "twreach/separator.hpp"
#include "twreach/tree_decomposition.hpp"

namespace twreach {

/// Node <Z, r> of a recursive decomposition: boundary set Z and the
/// representative r, the lowest vertex of its component.
struct RDNode {
  VertexSet z;
  Vertex r = 0;

  friend bool operator==(const RDNode&, const RDNode&) = default;
  friend auto operator<=>(const RDNode&, const RDNode&) = default;
};

/// Graph, input decomposition and root representative v0. Copies share the
/// underlying graph, decomposition and separator index.
class RDContext {
 public:
  /// Throws ValidationError (with the validator's witness) when t does not
  /// decompose g, and PreconditionError when v0 is out of range.
  RDContext(DiGraph g, TreeDecomp t, Vertex v0);

  const DiGraph& graph() const noexcept { return index_->graph(); }
  const TreeDecomp& decomposition() const noexcept { return index_->decomposition(); }
  Vertex v0() const noexcept { return v0_; }
  RDNode root() const { return {VertexSet{}, v0_}; }

  SeparatorResult sep(const VertexSet& u) const { return index_->find(u); }

 private:
  std::shared_ptr<const SeparatorIndex> index_;
  Vertex v0_;
};

/// Everything Algorithm-1-style expansion of one node yields.
struct RDExpansion {
  VertexSet component;        // I_Z(r)
  VertexSet boundary;         // Z' = Z ∪ sep(Z) ∪ sep(I)
  VertexSet hat_bag;          // Z ∪ ((sep(I) ∪ sep(Z)) ∩ I)
  std::vector<RDNode> children;
  std::vector<VertexSet> child_components;
};

/// Throws PreconditionError when r is out of range or r ∈ z.
RDExpansion rd_expand(const RDContext& ctx, const RDNode& node);

std::vector<RDNode> rd_children(const RDContext& ctx, const RDNode& node);

/// Finds the parent by walking down from the root. Throws PreconditionError
/// for the root ("no parent") and for nodes off the descent path
/// ("not a member").
RDNode rd_parent(const RDContext& ctx, const RDNode& node);

VertexSet hat_bag(const RDContext& ctx, const RDNode& node);

/// The whole recursive decomposition, nodes numbered 1.. in breadth-first
/// order from the root. Index 0 of every vector is unused.
struct RDTree {
  std::vector<RDNode> nodes;
  std::vector<NodeId> parent;
  std::vector<VertexSet> components;
  std::vector<VertexSet> hat_bags;

  NodeId size() const noexcept { return static_cast<NodeId>(nodes.size()) - 1; }
};

RDTree materialize_rd(const RDContext& ctx);

/// The hat decomposition of v0's component, rooted at node 1 = <∅, v0>.
TreeDecomp build_hat_decomposition(const RDContext& ctx);

/// One hat decomposition per undirected component. A single component's
/// decomposition is returned as is; several are joined under an extra
/// empty-bag root (node 1). Throws ValidationError when t does not
/// decompose g.
TreeDecomp build_hat_forest(const DiGraph& g, const TreeDecomp& t);

/// build_hat_forest() balanced with binarize_balance().
BalancedTD build_balanced(const DiGraph& g, const TreeDecomp& t);

}  // namespace twreach
