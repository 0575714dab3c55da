#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twreach/graph.hpp"
#include "twreach/vertex_set.hpp"

namespace twreach {

/// Undirected tree edge between two decomposition nodes.
struct TreeEdge {
  NodeId a = kNoNode;
  NodeId b = kNoNode;

  friend bool operator==(const TreeEdge&, const TreeEdge&) = default;
  friend auto operator<=>(const TreeEdge&, const TreeEdge&) = default;
};

/// A tree decomposition: nodes 1..N carrying bags, joined by N-1 tree edges.
///
/// The tree shape is checked on construction (connected and acyclic). Bag
/// contents are only range-checked against the vertex count; whether the
/// bags actually decompose a graph is the job of validate_td(). A root may
/// be designated, after which parent/children queries are available.
class TreeDecomp {
 public:
  TreeDecomp() = default;

  /// Throws PreconditionError on out-of-range vertices or node ids, or when
  /// the edges are not a tree on nodes 1..bags.size().
  TreeDecomp(Vertex vertex_count, std::vector<VertexSet> bags, std::vector<TreeEdge> edges,
             NodeId root = kNoNode);

  Vertex vertex_count() const noexcept { return n_; }
  NodeId size() const noexcept { return static_cast<NodeId>(bags_.size()); }
  bool contains(NodeId t) const noexcept { return t >= 1 && t <= size(); }

  const VertexSet& bag(NodeId t) const { return bags_[t - 1]; }
  const std::vector<VertexSet>& bags() const noexcept { return bags_; }

  /// Edges with a < b, sorted.
  const std::vector<TreeEdge>& edges() const noexcept { return edges_; }
  std::span<const NodeId> neighbors(NodeId t) const;

  bool rooted() const noexcept { return root_ != kNoNode; }
  NodeId root() const noexcept { return root_; }

  /// kNoNode for the root. Throws PreconditionError when unrooted.
  NodeId parent(NodeId t) const;

  /// Children in ascending id order. Throws PreconditionError when unrooted.
  std::span<const NodeId> children(NodeId t) const;

  TreeDecomp with_root(NodeId root) const;
  TreeDecomp with_bags(std::vector<VertexSet> bags) const;

 private:
  void require_rooted() const;

  Vertex n_ = 0;
  std::vector<VertexSet> bags_;
  std::vector<TreeEdge> edges_;
  std::vector<std::size_t> adj_offsets_;
  std::vector<NodeId> adj_;
  NodeId root_ = kNoNode;
  std::vector<NodeId> parent_;
  std::vector<std::size_t> child_offsets_;
  std::vector<NodeId> children_;
};

/// Outcome of checking the three decomposition properties against a graph.
struct ValidityReport {
  bool covers_vertices = true;
  bool covers_edges = true;
  bool connected_occurrences = true;
  /// Describes the first violated property instance, if any.
  std::optional<std::string> witness;

  bool valid() const noexcept { return covers_vertices && covers_edges && connected_occurrences; }
};

ValidityReport validate_td(const DiGraph& g, const TreeDecomp& t);

/// Only the connected-occurrences property; needs no graph.
ValidityReport check_occurrences_connected(const TreeDecomp& t);

/// max |bag| - 1; -1 when every bag is empty or there are no nodes.
int width(const TreeDecomp& t);

/// Longest root-to-leaf edge count. Throws PreconditionError ("missing root")
/// when the decomposition is unrooted.
int depth(const TreeDecomp& t);

/// Every bag replaced by bag ∪ s.
TreeDecomp augment_all_bags(const TreeDecomp& t, const VertexSet& s);

/// PACE 2017 .td text. A "c root <id>" comment, when present, designates
/// the root. Throws ParseError.
TreeDecomp parse_td(std::istream& in);
TreeDecomp parse_td(std::string_view text);

/// Canonical .td text; emits "c root <id>" first when rooted.
void write_td(std::ostream& out, const TreeDecomp& t);
std::string td_to_text(const TreeDecomp& t);

}  // namespace twreach
