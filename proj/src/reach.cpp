#include "twreach/reach.hpp"

#include <algorithm>
#include <bit>
#include <optional>
#include <string>

#include "twreach/errors.hpp"
#include "twreach/recursive_decomposition.hpp"
#include "twreach/sequences.hpp"

namespace twreach {

namespace {

std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

// Per-leaf relaxation table: for every vertex x that is in V_f or has an arc
// into V_f, the positions y in V_f with x -> y or x == y.
struct LeafScope {
  AncestorOrder order;
  std::vector<int> source;  // vertex -> row index, -1 when x relaxes nothing
  std::vector<std::uint64_t> rows;
  std::size_t words = 0;
};

class ScopeCache {
 public:
  ScopeCache(const DiGraph& g, const BalancedTD& tree) : g_(g), tree_(tree), scopes_(tree.size() + 1) {}

  const LeafScope& get(NodeId f) {
    std::optional<LeafScope>& slot = scopes_[f];
    if (!slot) slot = build(f);
    return *slot;
  }

 private:
  LeafScope build(NodeId f) const {
    LeafScope s;
    s.order = ancestor_vertices(tree_, f);
    const std::size_t width = s.order.vertices.size();
    s.words = std::max<std::size_t>(word_count(width), 1);
    s.source.assign(static_cast<std::size_t>(g_.vertex_count()) + 1, -1);
    auto row_of = [&](Vertex x) {
      if (s.source[x] < 0) {
        s.source[x] = static_cast<int>(s.rows.size() / s.words);
        s.rows.resize(s.rows.size() + s.words, 0);
      }
      return &s.rows[static_cast<std::size_t>(s.source[x]) * s.words];
    };
    std::vector<int> position(static_cast<std::size_t>(g_.vertex_count()) + 1, -1);
    for (std::size_t i = 0; i < width; ++i) position[s.order.vertices[i]] = static_cast<int>(i);
    for (std::size_t i = 0; i < width; ++i) row_of(s.order.vertices[i])[i / 64] |= std::uint64_t{1} << (i % 64);
    for (const Arc& a : g_.arcs()) {
      int p = position[a.to];
      if (p >= 0) row_of(a.from)[p / 64] |= std::uint64_t{1} << (p % 64);
    }
    return s;
  }

  const DiGraph& g_;
  const BalancedTD& tree_;
  std::vector<std::optional<LeafScope>> scopes_;
};

// prev (in scope `from`) -> next (in scope `to`). Returns |marked| * |V_to|.
std::uint64_t relax(const LeafScope& from, const MarkVector& prev, const LeafScope& to, MarkVector& next) {
  next.clear();
  std::uint64_t marked = 0;
  const auto& src = prev.words();
  auto& dst = next.words();
  for (std::size_t w = 0; w < src.size(); ++w) {
    std::uint64_t bits = src[w];
    while (bits) {
      std::size_t i = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
      bits &= bits - 1;
      ++marked;
      Vertex x = from.order.vertices[i];
      int row = to.source[x];
      if (row < 0) continue;
      const std::uint64_t* r = &to.rows[static_cast<std::size_t>(row) * to.words];
      for (std::size_t k = 0; k < std::min(to.words, dst.size()); ++k) dst[k] |= r[k];
    }
  }
  return marked * to.order.vertices.size();
}

std::size_t scope_capacity(const BalancedTD& tree) {
  return static_cast<std::size_t>(width(tree.decomposition()) + 1) *
         static_cast<std::size_t>(tree.depth() + 1);
}

// Square boolean matrix over vertices 1..n (row/column 0 unused).
class BitMatrix {
 public:
  explicit BitMatrix(std::size_t n) : n_(n), words_(word_count(n + 1)), data_((n + 1) * words_, 0) {}

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n);
    for (std::size_t i = 1; i <= n; ++i) m.set(i, i);
    return m;
  }

  void set(std::size_t i, std::size_t j) { data_[i * words_ + j / 64] |= std::uint64_t{1} << (j % 64); }
  bool test(std::size_t i, std::size_t j) const {
    return (data_[i * words_ + j / 64] >> (j % 64)) & 1U;
  }

  BitMatrix operator*(const BitMatrix& b) const {
    BitMatrix c(n_);
    for (std::size_t i = 1; i <= n_; ++i) {
      const std::uint64_t* row = &data_[i * words_];
      std::uint64_t* out = &c.data_[i * words_];
      for (std::size_t w = 0; w < words_; ++w) {
        std::uint64_t bits = row[w];
        while (bits) {
          std::size_t k = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
          bits &= bits - 1;
          const std::uint64_t* src = &b.data_[k * words_];
          for (std::size_t x = 0; x < words_; ++x) out[x] |= src[x];
        }
      }
    }
    return c;
  }

 private:
  std::size_t n_;
  std::size_t words_;
  std::vector<std::uint64_t> data_;
};

// Transfer relation of Lseq(x, 2^j) for j = 0..log_d: entry (a, b) is set
// when marking a before the run leaves b marked after it.
std::vector<BitMatrix> transfer(const DiGraph& g, const BalancedTD& tree, NodeId x, int log_d) {
  const auto n = static_cast<std::size_t>(g.vertex_count());
  std::vector<BitMatrix> out;
  if (tree.is_leaf(x)) {
    AncestorOrder order = ancestor_vertices(tree, x);
    std::vector<char> in_scope(n + 1, 0);
    for (Vertex y : order.vertices) in_scope[y] = 1;
    BitMatrix step(n);
    for (Vertex y : order.vertices) step.set(y, y);
    for (const Arc& a : g.arcs()) {
      if (in_scope[a.to]) step.set(a.from, a.to);
    }
    out.push_back(std::move(step));
    for (int j = 1; j <= log_d; ++j) out.push_back(out.back() * out.back());
    return out;
  }
  std::vector<BitMatrix> left = tree.left(x) != kNoNode ? transfer(g, tree, tree.left(x), log_d)
                                                         : std::vector<BitMatrix>{};
  std::vector<BitMatrix> right = tree.right(x) != kNoNode ? transfer(g, tree, tree.right(x), log_d)
                                                           : std::vector<BitMatrix>{};
  auto pair = [&](int j) {
    if (left.empty()) return right[j];
    if (right.empty()) return left[j];
    return left[j] * right[j];
  };
  out.push_back(pair(0));
  for (int j = 1; j <= log_d; ++j) out.push_back(out[j - 1] * pair(j) * out[j - 1]);
  return out;
}

void require_in_root(const BalancedTD& tree, Vertex u, Vertex v) {
  const VertexSet& root_bag = tree.bag(tree.root());
  for (Vertex x : {u, v}) {
    if (!root_bag.contains(x)) {
      throw PreconditionError("vertex " + std::to_string(x) + " is not in the root bag");
    }
  }
}

}  // namespace

AncestorOrder ancestor_vertices(const BalancedTD& tree, NodeId t) {
  if (!tree.decomposition().contains(t)) throw PreconditionError("unknown node " + std::to_string(t));
  VertexSet acc;
  for (NodeId x = t; x != kNoNode; x = tree.parent(x)) acc = set_union(acc, tree.bag(x));
  return {t, acc.values()};
}

std::size_t pos(const AncestorOrder& order, Vertex v) {
  auto it = std::lower_bound(order.vertices.begin(), order.vertices.end(), v);
  if (it == order.vertices.end() || *it != v) {
    throw PreconditionError("vertex " + std::to_string(v) + " is not in scope of node " +
                            std::to_string(order.leaf));
  }
  return static_cast<std::size_t>(it - order.vertices.begin());
}

MarkVector::MarkVector(std::size_t capacity) : capacity_(capacity), words_(word_count(capacity), 0) {}

void MarkVector::set(std::size_t i) {
  if (i >= capacity_) throw PreconditionError("bit " + std::to_string(i) + " exceeds capacity");
  words_[i / 64] |= std::uint64_t{1} << (i % 64);
}

bool MarkVector::test(std::size_t i) const {
  if (i >= capacity_) throw PreconditionError("bit " + std::to_string(i) + " exceeds capacity");
  return (words_[i / 64] >> (i % 64)) & 1U;
}

void MarkVector::clear() noexcept { std::fill(words_.begin(), words_.end(), 0); }

std::size_t MarkVector::count() const noexcept {
  std::size_t c = 0;
  for (std::uint64_t w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

GadView gad_view(const DiGraph& g, const BalancedTD& tree, NodeId t) {
  if (!tree.decomposition().contains(t)) throw PreconditionError("unknown node " + std::to_string(t));
  std::vector<NodeId> nodes;
  for (NodeId x = tree.parent(t); x != kNoNode; x = tree.parent(x)) nodes.push_back(x);
  std::vector<NodeId> stack{t};
  while (!stack.empty()) {
    NodeId x = stack.back();
    stack.pop_back();
    nodes.push_back(x);
    if (tree.left(x) != kNoNode) stack.push_back(tree.left(x));
    if (tree.right(x) != kNoNode) stack.push_back(tree.right(x));
  }
  GadView view;
  view.node = t;
  for (NodeId x : nodes) view.vertices = set_union(view.vertices, tree.bag(x));
  for (const Arc& a : g.arcs()) {
    for (NodeId x : nodes) {
      if (tree.bag(x).contains(a.from) && tree.bag(x).contains(a.to)) {
        view.arcs.push_back(a);
        break;
      }
    }
  }
  return view;
}

std::uint64_t schedule_power(Vertex n) {
  return n <= 1 ? 1 : std::bit_ceil(static_cast<std::uint64_t>(n));
}

bool reach_balanced(const DiGraph& g, const BalancedTD& tree, Vertex u, Vertex v, SpaceMeter& meter,
                    const ReachOptions& options, ReachStats* stats) {
  if (!g.contains(u) || !g.contains(v)) throw PreconditionError("endpoint out of range");
  if (tree.decomposition().vertex_count() != g.vertex_count()) {
    throw PreconditionError("decomposition and graph disagree on the vertex count");
  }
  require_in_root(tree, u, v);
  const std::uint64_t d = schedule_power(g.vertex_count());
  const NodeId root = tree.root();
  LeafSequence schedule(tree, root, d);

  ReachStats local;
  ReachStats& st = stats ? *stats : local;
  st = {};
  st.schedule_length = schedule.length();
  st.capacity_bits = scope_capacity(tree);

  if (options.engine == ReachOptions::Engine::Composed) {
    std::vector<BitMatrix> p = transfer(g, tree, root, exact_log2(d));
    st.iterations = st.schedule_length;
    st.completed = true;
    return p.back().test(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
  }

  const std::uint64_t node_bits = bits_for(static_cast<std::uint64_t>(tree.size()));
  const std::uint64_t vertex_bits = bits_for(static_cast<std::uint64_t>(g.vertex_count()));
  const std::uint64_t index_bits = bits_for(st.schedule_length);
  const std::vector<std::pair<std::string, std::uint64_t>> registers{
      {"R0", st.capacity_bits},      {"R1", st.capacity_bits},
      {"t0", node_bits},             {"t1", node_bits},
      {"iteration", index_bits},     {"lseq.r", index_bits},
      {"lseq.node", node_bits},      {"lseq.d", bits_for(d)},
      {"x", vertex_bits},            {"y", vertex_bits},
      {"u", vertex_bits},            {"v", vertex_bits},
      {"pos", bits_for(st.capacity_bits)},
  };
  for (const auto& [name, bits] : registers) meter.register_item(name, bits);

  ScopeCache scopes(g, tree);
  MarkVector marks[2] = {MarkVector(st.capacity_bits), MarkVector(st.capacity_bits)};
  NodeId first = tree.leaves().front();
  const LeafScope* scope[2] = {&scopes.get(first), nullptr};
  marks[0].set_owner(first);
  marks[0].set(pos(scope[0]->order, u));

  std::uint64_t i = 0;
  schedule.for_each([&](NodeId f) {
    ++i;
    const int cur = static_cast<int>(i % 2);
    const int prev = 1 - cur;
    scope[cur] = &scopes.get(f);
    marks[cur].set_owner(f);
    st.relax_work += relax(*scope[prev], marks[prev], *scope[cur], marks[cur]);
    if (options.stop_when_target_marked && marks[cur].test(pos(scope[cur]->order, v))) return false;
    return options.iteration_limit == 0 || i < options.iteration_limit;
  });
  st.iterations = i;
  st.completed = i == st.schedule_length;

  const int last = static_cast<int>(i % 2);
  bool answer = marks[last].test(pos(scope[last]->order, v));
  st.peak_bits = meter.peak_bits();
  for (const auto& reg : registers) meter.release(reg.first);
  return answer;
}

VertexSet propagate_marks(const DiGraph& g, const BalancedTD& tree, NodeId t, std::uint64_t d,
                          const VertexSet& initial) {
  LeafSequence schedule(tree, t, d);
  ScopeCache scopes(g, tree);
  const std::size_t capacity = scope_capacity(tree);
  MarkVector marks[2] = {MarkVector(capacity), MarkVector(capacity)};

  // Any leaf below t sees all of V_A(t), so the first scheduled leaf can
  // hold the initial marks.
  NodeId first = schedule.element(1);
  const LeafScope* scope[2] = {&scopes.get(first), nullptr};
  for (Vertex x : initial) marks[0].set(pos(scope[0]->order, x));

  std::uint64_t i = 0;
  schedule.for_each([&](NodeId f) {
    ++i;
    const int cur = static_cast<int>(i % 2);
    scope[cur] = &scopes.get(f);
    relax(*scope[1 - cur], marks[1 - cur], *scope[cur], marks[cur]);
    return true;
  });
  const int last = static_cast<int>(i % 2);
  std::vector<Vertex> out;
  for (std::size_t k = 0; k < scope[last]->order.vertices.size(); ++k) {
    if (marks[last].test(k)) out.push_back(scope[last]->order.vertices[k]);
  }
  return VertexSet::from_sorted(std::move(out));
}

BalancedTD prepare_query_tree(const DiGraph& g, const TreeDecomp& t, Vertex u, Vertex v) {
  BalancedTD balanced = build_balanced(g, t);
  return BalancedTD(augment_all_bags(balanced.decomposition(), VertexSet{u, v}));
}

ReachReport reach(const DiGraph& g, const TreeDecomp& t, Vertex u, Vertex v, const ReachOptions& options) {
  if (!g.contains(u) || !g.contains(v)) throw PreconditionError("endpoint out of range");
  ValidityReport report = validate_td(g, t);
  if (!report.valid()) throw ValidationError(report.witness.value_or("invalid decomposition"));

  ReachReport out;
  out.n = g.vertex_count();
  out.width_input = width(t);
  if (!component_containing(g, VertexSet{}, u).contains(v)) {
    out.same_component = false;
    return out;
  }
  BalancedTD tree = prepare_query_tree(g, t, u, v);
  out.width_balanced = width(tree.decomposition());
  out.depth_balanced = tree.depth();
  out.nodes_balanced = tree.size();
  SpaceMeter meter;
  out.reachable = reach_balanced(g, tree, u, v, meter, options, &out.stats);
  return out;
}

}  // namespace twreach
