#pragma once

#include <cstdint>
#include <vector>

#include "twreach/balanced.hpp"
#include "twreach/graph.hpp"
#include "twreach/space_meter.hpp"
#include "twreach/tree_decomposition.hpp"

namespace twreach {

/// Vertices of the bags on the root-to-t path, t included, ascending.
struct AncestorOrder {
  NodeId leaf = kNoNode;
  std::vector<Vertex> vertices;
};

/// Throws PreconditionError for an unknown node.
AncestorOrder ancestor_vertices(const BalancedTD& tree, NodeId t);

/// 0-based rank of v in order.vertices; PreconditionError ("not in scope")
/// when absent.
std::size_t pos(const AncestorOrder& order, Vertex v);

/// Fixed-capacity bit array owned by one leaf scope.
class MarkVector {
 public:
  explicit MarkVector(std::size_t capacity = 0);

  std::size_t capacity() const noexcept { return capacity_; }
  NodeId owner() const noexcept { return owner_; }
  void set_owner(NodeId leaf) noexcept { owner_ = leaf; }

  void set(std::size_t i);
  bool test(std::size_t i) const;
  void clear() noexcept;
  std::size_t count() const noexcept;

  std::vector<std::uint64_t>& words() noexcept { return words_; }
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

 private:
  std::size_t capacity_;
  NodeId owner_ = kNoNode;
  std::vector<std::uint64_t> words_;
};

/// Vertices in bags at t and at every ancestor or descendant of t, with
/// the arcs whose endpoints share one of those bags.
struct GadView {
  NodeId node = kNoNode;
  VertexSet vertices;
  std::vector<Arc> arcs;
};

GadView gad_view(const DiGraph& g, const BalancedTD& tree, NodeId t);

struct ReachOptions {
  enum class Engine {
    /// The two-vector marking loop, streamed leaf by leaf and metered.
    Loop,
    /// Evaluates the same schedule by composing per-subtree transfer
    /// relations (boolean matrices over all n vertices), memoized per
    /// (node, power of two). Gives the same answer in far fewer steps but
    /// is not metered.
    Composed,
  };
  Engine engine = Engine::Loop;
  /// Loop only: stop as soon as the target is marked.
  bool stop_when_target_marked = false;
  /// Loop only: stop after this many iterations; 0 means no limit.
  std::uint64_t iteration_limit = 0;
};

struct ReachStats {
  std::uint64_t schedule_length = 0;  // |Lseq(root, D)|
  std::uint64_t iterations = 0;       // iterations executed (Composed: schedule_length)
  std::uint64_t relax_work = 0;       // sum over iterations of |marked| * |V_f|
  std::uint64_t capacity_bits = 0;    // (width + 1) * (depth + 1)
  std::uint64_t peak_bits = 0;
  bool completed = false;             // the whole schedule was processed
};

/// Decides u -> v reachability on a balanced decomposition whose root bag
/// holds both u and v. Throws PreconditionError otherwise.
bool reach_balanced(const DiGraph& g, const BalancedTD& tree, Vertex u, Vertex v,
                    SpaceMeter& meter, const ReachOptions& options = {},
                    ReachStats* stats = nullptr);

/// Runs the marking loop over Lseq(t, d) starting from `initial` (which must
/// lie in V_A(t)) and returns the vertices marked in the last-written vector.
VertexSet propagate_marks(const DiGraph& g, const BalancedTD& tree, NodeId t, std::uint64_t d,
                          const VertexSet& initial);

/// Smallest power of two >= n (1 for n <= 1).
std::uint64_t schedule_power(Vertex n);

/// build_balanced() followed by adding {u, v} to every bag.
BalancedTD prepare_query_tree(const DiGraph& g, const TreeDecomp& t, Vertex u, Vertex v);

struct ReachReport {
  bool reachable = false;
  bool same_component = true;
  Vertex n = 0;
  int width_input = -1;
  int width_balanced = -1;
  int depth_balanced = -1;
  NodeId nodes_balanced = 0;
  ReachStats stats;
};

/// Full pipeline. Throws ValidationError (with the validator's witness)
/// when t does not decompose g and PreconditionError for out-of-range
/// endpoints. Endpoints in different undirected components are answered
/// without building anything.
ReachReport reach(const DiGraph& g, const TreeDecomp& t, Vertex u, Vertex v,
                  const ReachOptions& options = {});

}  // namespace twreach
