#include "twreach/separator.hpp"

#include "twreach/errors.hpp"

namespace twreach {

bool is_balanced_separator(const DiGraph& g, const VertexSet& s, const VertexSet& u) {
  const Vertex n = g.vertex_count();
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  std::vector<char> target(static_cast<std::size_t>(n) + 1, 0);
  for (Vertex v : s) {
    if (g.contains(v)) seen[v] = 1;
  }
  for (Vertex v : u) {
    if (g.contains(v)) target[v] = 1;
  }
  std::vector<Vertex> queue;
  for (Vertex start : u) {
    if (!g.contains(start) || seen[start]) continue;
    std::size_t count = 0;
    queue.assign(1, start);
    seen[start] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex x = queue[head];
      if (target[x]) ++count;
      for (Vertex y : g.neighbors(x)) {
        if (!seen[y]) {
          seen[y] = 1;
          queue.push_back(y);
        }
      }
    }
    if (2 * count > u.size()) return false;
  }
  return true;
}

SeparatorIndex::SeparatorIndex(std::shared_ptr<const DiGraph> g, std::shared_ptr<const TreeDecomp> t)
    : g_(std::move(g)), t_(std::move(t)) {
  const NodeId count = t_->size();
  if (count == 0) return;
  parent_.assign(static_cast<std::size_t>(count) + 1, kNoNode);
  children_.assign(static_cast<std::size_t>(count) + 1, {});
  entry_.assign(static_cast<std::size_t>(count) + 1, 0);
  exit_.assign(static_cast<std::size_t>(count) + 1, 0);

  NodeId root = t_->rooted() ? t_->root() : 1;
  std::vector<char> seen(static_cast<std::size_t>(count) + 1, 0);
  order_.push_back(root);
  seen[root] = 1;
  for (std::size_t head = 0; head < order_.size(); ++head) {
    NodeId x = order_[head];
    for (NodeId c : t_->neighbors(x)) {
      if (!seen[c]) {
        seen[c] = 1;
        parent_[c] = x;
        children_[x].push_back(c);
        order_.push_back(c);
      }
    }
  }
  // Euler-tour intervals for subtree membership.
  int clock = 0;
  std::vector<std::pair<NodeId, std::size_t>> stack{{root, 0}};
  entry_[root] = clock++;
  while (!stack.empty()) {
    auto& [x, next] = stack.back();
    if (next < children_[x].size()) {
      NodeId c = children_[x][next++];
      entry_[c] = clock++;
      stack.push_back({c, 0});
    } else {
      exit_[x] = clock;
      stack.pop_back();
    }
  }
  // Highest occurrence of every vertex; the BFS order visits shallow nodes first.
  top_.assign(static_cast<std::size_t>(t_->vertex_count()) + 1, kNoNode);
  for (NodeId x : order_) {
    for (Vertex v : t_->bag(x)) {
      if (top_[v] == kNoNode) top_[v] = x;
    }
  }
}

bool SeparatorIndex::heavy_branch_splits(NodeId t, NodeId heavy_child, const VertexSet& u,
                                         std::vector<int>& blocked, std::vector<int>& seen,
                                         int stamp) const {
  // Every member of u outside B(t) whose highest occurrence is in the heavy
  // branch seeds a search of G - B(t); a component with more than |u|/2
  // members rejects the bag.
  const DiGraph& g = *g_;
  for (Vertex v : t_->bag(t)) blocked[v] = stamp;
  auto in_heavy = [&](Vertex x) {
    NodeId top = top_[x];
    bool below = entry_[top] >= entry_[heavy_child] && entry_[top] < exit_[heavy_child];
    if (heavy_child != kNoNode) return below;
    return false;
  };
  auto in_parent_side = [&](Vertex x) {
    NodeId top = top_[x];
    return !(entry_[top] >= entry_[t] && entry_[top] < exit_[t]);
  };
  std::vector<char> member(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
  for (Vertex x : u) member[x] = 1;

  std::vector<Vertex> queue;
  for (Vertex start : u) {
    if (blocked[start] == stamp || seen[start] == stamp) continue;
    bool relevant = heavy_child != kNoNode ? in_heavy(start) : in_parent_side(start);
    if (!relevant) continue;
    std::size_t count = 0;
    queue.assign(1, start);
    seen[start] = stamp;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      Vertex x = queue[head];
      if (member[x] && 2 * ++count > u.size()) return false;
      for (Vertex y : g.neighbors(x)) {
        if (blocked[y] != stamp && seen[y] != stamp) {
          seen[y] = stamp;
          queue.push_back(y);
        }
      }
    }
  }
  return true;
}

SeparatorResult SeparatorIndex::find(const VertexSet& u) const {
  const TreeDecomp& t = *t_;
  const NodeId count = t.size();
  if (count == 0) throw ValidationError("no bags to search for a separator");
  const std::size_t target = u.size();

  std::vector<int> sub(static_cast<std::size_t>(count) + 1, 0);
  std::vector<int> in_bag(static_cast<std::size_t>(count) + 1, 0);
  std::vector<char> member(static_cast<std::size_t>(t.vertex_count()) + 1, 0);
  for (Vertex x : u) {
    if (x < 1 || x > t.vertex_count() || top_[x] == kNoNode) {
      throw ValidationError("vertex " + std::to_string(x) + " is in no bag");
    }
    member[x] = 1;
    ++sub[top_[x]];
  }
  for (auto it = order_.rbegin(); it != order_.rend(); ++it) {
    if (parent_[*it] != kNoNode) sub[parent_[*it]] += sub[*it];
  }
  for (NodeId x = 1; x <= count; ++x) {
    for (Vertex v : t.bag(x)) in_bag[x] += member[v];
  }

  std::vector<int> blocked;
  std::vector<int> seen;
  int stamp = 0;
  for (NodeId x = 1; x <= count; ++x) {
    // Branch member counts around x.
    long long below = 0;
    NodeId heavy = kNoNode;
    bool heavy_parent_side = false;
    for (NodeId c : children_[x]) {
      below += sub[c];
      if (2 * static_cast<std::size_t>(sub[c]) > target) heavy = c;
    }
    long long above = static_cast<long long>(target) - in_bag[x] - below;
    if (2 * above > static_cast<long long>(target)) heavy_parent_side = true;

    bool ok = true;
    if (heavy != kNoNode || heavy_parent_side) {
      if (blocked.empty()) {
        blocked.assign(static_cast<std::size_t>(g_->vertex_count()) + 1, 0);
        seen.assign(static_cast<std::size_t>(g_->vertex_count()) + 1, 0);
      }
      ok = heavy_branch_splits(x, heavy, u, blocked, seen, ++stamp);
    }
    if (ok) return {x, t.bag(x), target};
  }
  throw ValidationError("no bag is a balanced separator of " + to_string(u));
}

SeparatorResult sep(const DiGraph& g, const TreeDecomp& t, const VertexSet& u) {
  SeparatorIndex index(std::make_shared<const DiGraph>(g), std::make_shared<const TreeDecomp>(t));
  return index.find(u);
}

}  // namespace twreach
