#include "twreach/balanced.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <tuple>

#include "twreach/errors.hpp"

namespace twreach {

BalancedTD::BalancedTD(TreeDecomp t) : td_(std::move(t)) {
  if (!td_.rooted()) throw PreconditionError("balanced decomposition needs a root");
  const NodeId count = td_.size();
  left_.assign(static_cast<std::size_t>(count) + 1, kNoNode);
  right_.assign(static_cast<std::size_t>(count) + 1, kNoNode);
  level_.assign(static_cast<std::size_t>(count) + 1, 0);
  height_.assign(static_cast<std::size_t>(count) + 1, 0);

  std::vector<NodeId> order{td_.root()};
  for (std::size_t head = 0; head < order.size(); ++head) {
    NodeId x = order[head];
    auto kids = td_.children(x);
    if (kids.size() > 2) {
      throw PreconditionError("node " + std::to_string(x) + " has " + std::to_string(kids.size()) +
                              " children");
    }
    if (!kids.empty()) left_[x] = kids[0];
    if (kids.size() == 2) right_[x] = kids[1];
    for (NodeId c : kids) {
      level_[c] = level_[x] + 1;
      order.push_back(c);
    }
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    NodeId x = *it;
    if (left_[x] != kNoNode) height_[x] = std::max(height_[x], height_[left_[x]] + 1);
    if (right_[x] != kNoNode) height_[x] = std::max(height_[x], height_[right_[x]] + 1);
  }

  std::vector<NodeId> stack{td_.root()};
  while (!stack.empty()) {
    NodeId x = stack.back();
    stack.pop_back();
    if (is_leaf(x)) leaves_.push_back(x);
    if (right_[x] != kNoNode) stack.push_back(right_[x]);
    if (left_[x] != kNoNode) stack.push_back(left_[x]);
  }
}

namespace {

struct BoundaryEdge {
  NodeId inside;
  NodeId outside;
};

struct OutNode {
  VertexSet bag;
  int left = -1;
  int right = -1;
};

class Balancer {
 public:
  explicit Balancer(const TreeDecomp& t)
      : t_(t),
        owner_(static_cast<std::size_t>(t.size()) + 1, -1),
        scratch_(static_cast<std::size_t>(t.size()) + 1, 0),
        parent_(static_cast<std::size_t>(t.size()) + 1, kNoNode),
        sub_(static_cast<std::size_t>(t.size()) + 1, 0),
        heaviest_(static_cast<std::size_t>(t.size()) + 1, 0) {}

  BalancedTD run() {
    std::vector<NodeId> all;
    for (NodeId x = 1; x <= t_.size(); ++x) all.push_back(x);
    int root = build(std::move(all), {});
    return renumber(root);
  }

 private:
  // Returns the index of the emitted subtree root in out_.
  int build(std::vector<NodeId> piece, std::vector<BoundaryEdge> boundary) {
    const int id = next_piece_++;
    for (NodeId x : piece) owner_[x] = id;

    NodeId split = choose_split(piece, boundary, id);

    VertexSet bag = t_.bag(split);
    for (const BoundaryEdge& e : boundary) {
      bag = set_union(bag, set_intersection(t_.bag(e.inside), t_.bag(e.outside)));
    }
    owner_[split] = -1;

    // Components of the piece without the split node, one per neighbour.
    std::vector<std::pair<int, int>> parts;  // (out index, height)
    for (NodeId y : t_.neighbors(split)) {
      if (owner_[y] != id) continue;
      std::vector<NodeId> comp{y};
      owner_[y] = -2;
      for (std::size_t head = 0; head < comp.size(); ++head) {
        for (NodeId z : t_.neighbors(comp[head])) {
          if (owner_[z] == id) {
            owner_[z] = -2;
            comp.push_back(z);
          }
        }
      }
      std::vector<BoundaryEdge> child_boundary{{y, split}};
      for (const BoundaryEdge& e : boundary) {
        if (owner_[e.inside] == -2) child_boundary.push_back(e);
      }
      if (child_boundary.size() > 2) throw Error("internal: piece with more than two boundary edges");
      int out = build(std::move(comp), std::move(child_boundary));
      parts.push_back({out, height_of_[out]});
    }
    return merge(std::move(bag), std::move(parts));
  }

  // Pairs the lowest subtrees first under copies of `bag`; the final one or
  // two become children of the node carrying `bag` itself.
  int merge(VertexSet bag, std::vector<std::pair<int, int>> parts) {
    using Item = std::tuple<int, int, int>;  // height, tie-break, out index
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    int tie = 0;
    for (auto [out, h] : parts) heap.push({h, tie++, out});
    while (heap.size() > 2) {
      auto [ha, ta, a] = heap.top();
      heap.pop();
      auto [hb, tb, b] = heap.top();
      heap.pop();
      (void)ta;
      (void)tb;
      int join = add_node(bag, a, b, std::max(ha, hb) + 1);
      heap.push({std::max(ha, hb) + 1, tie++, join});
    }
    int left = -1;
    int right = -1;
    int h = 0;
    if (!heap.empty()) {
      left = std::get<2>(heap.top());
      h = std::get<0>(heap.top()) + 1;
      heap.pop();
    }
    if (!heap.empty()) {
      right = std::get<2>(heap.top());
      h = std::max(h, std::get<0>(heap.top()) + 1);
      heap.pop();
    }
    return add_node(std::move(bag), left, right, h);
  }

  int add_node(VertexSet bag, int left, int right, int height) {
    out_.push_back({std::move(bag), left, right});
    height_of_.push_back(height);
    return static_cast<int>(out_.size()) - 1;
  }

  NodeId choose_split(const std::vector<NodeId>& piece, const std::vector<BoundaryEdge>& boundary,
                      int id) {
    if (piece.size() == 1) return piece.front();

    // Subtree sizes with the piece rooted at piece[0].
    std::vector<NodeId> order{piece.front()};
    parent_[piece.front()] = kNoNode;
    ++stamp_;
    scratch_[piece.front()] = stamp_;
    for (std::size_t head = 0; head < order.size(); ++head) {
      for (NodeId z : t_.neighbors(order[head])) {
        if (owner_[z] == id && scratch_[z] != stamp_) {
          scratch_[z] = stamp_;
          parent_[z] = order[head];
          order.push_back(z);
        }
      }
    }
    for (NodeId x : piece) sub_[x] = heaviest_[x] = 0;
    const int total = static_cast<int>(piece.size());
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      NodeId x = *it;
      sub_[x] += 1;
      if (parent_[x] != kNoNode) {
        sub_[parent_[x]] += sub_[x];
        heaviest_[parent_[x]] = std::max(heaviest_[parent_[x]], sub_[x]);
      }
    }
    auto largest_part = [&](NodeId x) { return std::max(heaviest_[x], total - sub_[x]); };

    std::vector<NodeId> candidates;
    if (boundary.size() <= 1) {
      candidates = piece;
    } else {
      // Path between the two contact points, via parent pointers.
      NodeId a = boundary[0].inside;
      NodeId b = boundary[1].inside;
      auto depth_of = [&](NodeId x) {
        int d = 0;
        while (parent_[x] != kNoNode) {
          x = parent_[x];
          ++d;
        }
        return d;
      };
      int da = depth_of(a);
      int db = depth_of(b);
      std::vector<NodeId> from_b;
      while (da > db) {
        candidates.push_back(a);
        a = parent_[a];
        --da;
      }
      while (db > da) {
        from_b.push_back(b);
        b = parent_[b];
        --db;
      }
      while (a != b) {
        candidates.push_back(a);
        from_b.push_back(b);
        a = parent_[a];
        b = parent_[b];
      }
      candidates.push_back(a);
      candidates.insert(candidates.end(), from_b.rbegin(), from_b.rend());
    }
    NodeId best = candidates.front();
    for (NodeId x : candidates) {
      int lx = largest_part(x);
      int lb = largest_part(best);
      if (lx < lb || (lx == lb && x < best)) best = x;
    }
    return best;
  }

  BalancedTD renumber(int root) {
    std::vector<VertexSet> bags;
    std::vector<TreeEdge> edges;
    std::vector<std::pair<int, NodeId>> stack{{root, kNoNode}};
    while (!stack.empty()) {
      auto [idx, parent] = stack.back();
      stack.pop_back();
      bags.push_back(out_[idx].bag);
      NodeId self = static_cast<NodeId>(bags.size());
      if (parent != kNoNode) edges.push_back({parent, self});
      if (out_[idx].right >= 0) stack.push_back({out_[idx].right, self});
      if (out_[idx].left >= 0) stack.push_back({out_[idx].left, self});
    }
    return BalancedTD(TreeDecomp(t_.vertex_count(), std::move(bags), std::move(edges), 1));
  }

  const TreeDecomp& t_;
  std::vector<int> owner_;
  std::vector<int> scratch_;
  int stamp_ = 0;
  int next_piece_ = 0;
  std::vector<NodeId> parent_;
  std::vector<int> sub_;
  std::vector<int> heaviest_;
  std::vector<OutNode> out_;
  std::vector<int> height_of_;
};

}  // namespace

BalancedTD binarize_balance(const TreeDecomp& t) {
  ValidityReport occ = check_occurrences_connected(t);
  if (!occ.valid()) throw ValidationError("cannot balance an invalid decomposition: " + *occ.witness);
  if (t.size() == 0) throw PreconditionError("cannot balance an empty decomposition");
  return Balancer(t).run();
}

}  // namespace twreach
