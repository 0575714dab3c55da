#pragma once

#include <compare>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "twreach/vertex_set.hpp"

namespace twreach {

/// Directed arc from -> to.
struct Arc {
  Vertex from = 0;
  Vertex to = 0;

  friend bool operator==(const Arc&, const Arc&) = default;
  friend auto operator<=>(const Arc&, const Arc&) = default;
};

/// Immutable directed graph on vertices 1..n.
///
/// Arcs are deduplicated on construction. Self-loops are kept in the arc set
/// but never appear in the undirected view, so they cannot affect
/// connectivity or reachability. The undirected view is the symmetric
/// closure of the arc set.
class DiGraph {
 public:
  DiGraph() = default;

  /// Throws PreconditionError when an endpoint lies outside [1, n].
  DiGraph(Vertex n, std::vector<Arc> arcs);

  Vertex vertex_count() const noexcept { return n_; }
  std::size_t arc_count() const noexcept { return arcs_.size(); }
  bool contains(Vertex v) const noexcept { return v >= 1 && v <= n_; }

  /// Lexicographically sorted arcs.
  std::span<const Arc> arcs() const noexcept { return arcs_; }

  /// Sorted out-neighbours of `v` (self-loop included if present).
  std::span<const Vertex> out_neighbors(Vertex v) const;

  /// Sorted undirected neighbours of `v`, excluding `v` itself.
  std::span<const Vertex> neighbors(Vertex v) const;

  bool has_arc(Vertex from, Vertex to) const;

 private:
  Vertex n_ = 0;
  std::vector<Arc> arcs_;
  std::vector<std::size_t> out_offsets_;
  std::vector<Vertex> out_targets_;
  std::vector<std::size_t> und_offsets_;
  std::vector<Vertex> und_targets_;
};

/// Reads the "p dgr <n> <m>" line format. Throws ParseError.
DiGraph parse_graph(std::istream& in);
DiGraph parse_graph(std::string_view text);

/// Writes the canonical form: header then arcs in lexicographic order.
void write_graph(std::ostream& out, const DiGraph& g);
std::string graph_to_text(const DiGraph& g);

/// Components of the undirected view restricted to [1, n] \ removed,
/// ordered by smallest member.
std::vector<VertexSet> undirected_components(const DiGraph& g, const VertexSet& removed);

/// Vertex set of the component of G[V \ z] containing r.
/// Throws PreconditionError if r is in z or out of range.
VertexSet component_containing(const DiGraph& g, const VertexSet& z, Vertex r);

/// Directed BFS; u == v counts as reachable.
bool bfs_reachable(const DiGraph& g, Vertex u, Vertex v);

}  // namespace twreach
