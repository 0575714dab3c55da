#include "twreach/recursive_decomposition.hpp"

#include <algorithm>
#include <string>

#include "twreach/errors.hpp"

namespace twreach {

namespace {

std::shared_ptr<const SeparatorIndex> make_index(DiGraph g, TreeDecomp t) {
  ValidityReport report = validate_td(g, t);
  if (!report.valid()) throw ValidationError(report.witness.value_or("invalid decomposition"));
  return std::make_shared<const SeparatorIndex>(std::make_shared<const DiGraph>(std::move(g)),
                                                std::make_shared<const TreeDecomp>(std::move(t)));
}

// Components of G[within] in ascending order of their smallest vertex.
std::vector<VertexSet> components_within(const DiGraph& g, const VertexSet& within) {
  std::vector<char> open(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
  for (Vertex v : within) open[v] = 1;
  std::vector<VertexSet> out;
  std::vector<Vertex> queue;
  for (Vertex start : within) {
    if (!open[start]) continue;
    open[start] = 0;
    queue.assign(1, start);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (Vertex y : g.neighbors(queue[head])) {
        if (open[y]) {
          open[y] = 0;
          queue.push_back(y);
        }
      }
    }
    out.emplace_back(std::move(queue));
    queue = {};
  }
  return out;
}

}  // namespace

RDContext::RDContext(DiGraph g, TreeDecomp t, Vertex v0)
    : index_(make_index(std::move(g), std::move(t))), v0_(v0) {
  if (!graph().contains(v0)) {
    throw PreconditionError("representative " + std::to_string(v0) + " is out of range");
  }
}

RDExpansion rd_expand(const RDContext& ctx, const RDNode& node) {
  const DiGraph& g = ctx.graph();
  if (!g.contains(node.r)) {
    throw PreconditionError("malformed node: representative " + std::to_string(node.r) +
                            " is out of range");
  }
  if (node.z.contains(node.r)) {
    throw PreconditionError("malformed node: representative " + std::to_string(node.r) +
                            " lies in the boundary " + to_string(node.z));
  }
  RDExpansion e;
  e.component = component_containing(g, node.z, node.r);
  VertexSet sep_z = ctx.sep(node.z).separator;
  VertexSet sep_i = ctx.sep(e.component).separator;
  e.boundary = set_union(node.z, set_union(sep_z, sep_i));
  e.hat_bag = set_union(node.z, set_intersection(set_union(sep_i, sep_z), e.component));

  std::vector<char> in_boundary(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
  for (Vertex x : e.boundary) in_boundary[x] = 1;
  for (VertexSet& c : components_within(g, set_difference(e.component, e.boundary))) {
    std::vector<Vertex> touching;
    for (Vertex x : c) {
      for (Vertex y : g.neighbors(x)) {
        if (in_boundary[y]) touching.push_back(y);
      }
    }
    e.children.push_back({VertexSet(std::move(touching)), c.front()});
    e.child_components.push_back(std::move(c));
  }
  return e;
}

std::vector<RDNode> rd_children(const RDContext& ctx, const RDNode& node) {
  return rd_expand(ctx, node).children;
}

RDNode rd_parent(const RDContext& ctx, const RDNode& node) {
  RDNode current = ctx.root();
  if (node == current) throw PreconditionError("the root has no parent");
  while (true) {
    RDExpansion e = rd_expand(ctx, current);
    std::size_t next = e.children.size();
    for (std::size_t i = 0; i < e.children.size(); ++i) {
      if (e.children[i] == node) return current;
      if (e.child_components[i].contains(node.r)) next = i;
    }
    if (next == e.children.size()) {
      throw PreconditionError("node <" + to_string(node.z) + ", " + std::to_string(node.r) +
                              "> is not a member of the recursive decomposition");
    }
    current = std::move(e.children[next]);
  }
}

VertexSet hat_bag(const RDContext& ctx, const RDNode& node) { return rd_expand(ctx, node).hat_bag; }

RDTree materialize_rd(const RDContext& ctx) {
  RDTree tree;
  tree.nodes.push_back({});
  tree.parent.push_back(kNoNode);
  tree.components.emplace_back();
  tree.hat_bags.emplace_back();

  tree.nodes.push_back(ctx.root());
  tree.parent.push_back(kNoNode);
  tree.components.emplace_back();
  tree.hat_bags.emplace_back();
  for (NodeId x = 1; x <= tree.size(); ++x) {
    RDExpansion e = rd_expand(ctx, tree.nodes[x]);
    tree.components[x] = std::move(e.component);
    tree.hat_bags[x] = std::move(e.hat_bag);
    for (RDNode& child : e.children) {
      tree.nodes.push_back(std::move(child));
      tree.parent.push_back(x);
      tree.components.emplace_back();
      tree.hat_bags.emplace_back();
    }
  }
  return tree;
}

TreeDecomp build_hat_decomposition(const RDContext& ctx) {
  RDTree rd = materialize_rd(ctx);
  std::vector<VertexSet> bags(rd.hat_bags.begin() + 1, rd.hat_bags.end());
  std::vector<TreeEdge> edges;
  for (NodeId x = 2; x <= rd.size(); ++x) edges.push_back({rd.parent[x], x});
  return TreeDecomp(ctx.graph().vertex_count(), std::move(bags), std::move(edges), 1);
}

TreeDecomp build_hat_forest(const DiGraph& g, const TreeDecomp& t) {
  ValidityReport report = validate_td(g, t);
  if (!report.valid()) throw ValidationError(report.witness.value_or("invalid decomposition"));

  std::vector<VertexSet> comps = undirected_components(g, VertexSet{});
  if (comps.size() == 1) return build_hat_decomposition(RDContext(g, t, comps.front().front()));
  std::vector<VertexSet> bags{VertexSet{}};
  std::vector<TreeEdge> edges;
  for (const VertexSet& c : comps) {
    TreeDecomp hat = build_hat_decomposition(RDContext(g, t, c.front()));
    const NodeId offset = static_cast<NodeId>(bags.size());
    bags.insert(bags.end(), hat.bags().begin(), hat.bags().end());
    for (const TreeEdge& e : hat.edges()) edges.push_back({e.a + offset, e.b + offset});
    edges.push_back({1, offset + 1});
  }
  return TreeDecomp(g.vertex_count(), std::move(bags), std::move(edges), 1);
}

BalancedTD build_balanced(const DiGraph& g, const TreeDecomp& t) {
  return binarize_balance(build_hat_forest(g, t));
}

}  // namespace twreach
