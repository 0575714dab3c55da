#include "twreach/tree_decomposition.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "twreach/errors.hpp"

namespace twreach {

namespace {

struct DisjointSets {
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[a] = b;
    return true;
  }

  std::vector<std::size_t> parent;
};

}  // namespace

TreeDecomp::TreeDecomp(Vertex vertex_count, std::vector<VertexSet> bags, std::vector<TreeEdge> edges,
                       NodeId root)
    : n_(vertex_count), bags_(std::move(bags)), edges_(std::move(edges)) {
  const NodeId count = size();
  for (NodeId t = 1; t <= count; ++t) {
    const VertexSet& b = bag(t);
    if (!b.empty() && (b.front() < 1 || b.back() > n_)) {
      throw PreconditionError("bag " + std::to_string(t) + " references a vertex outside [1, " +
                              std::to_string(n_) + "]");
    }
  }
  DisjointSets sets(static_cast<std::size_t>(count) + 1);
  for (TreeEdge& e : edges_) {
    if (!contains(e.a) || !contains(e.b) || e.a == e.b) {
      throw PreconditionError("tree edge (" + std::to_string(e.a) + "," + std::to_string(e.b) +
                              ") is not between two distinct nodes");
    }
    if (e.a > e.b) std::swap(e.a, e.b);
    if (!sets.unite(e.a, e.b)) throw PreconditionError("decomposition edges contain a cycle");
  }
  if (count > 0 && edges_.size() != static_cast<std::size_t>(count - 1)) {
    throw PreconditionError("decomposition edges do not connect all bags");
  }
  std::sort(edges_.begin(), edges_.end());

  adj_offsets_.assign(static_cast<std::size_t>(count) + 2, 0);
  for (const TreeEdge& e : edges_) {
    ++adj_offsets_[e.a + 1];
    ++adj_offsets_[e.b + 1];
  }
  for (std::size_t i = 1; i < adj_offsets_.size(); ++i) adj_offsets_[i] += adj_offsets_[i - 1];
  adj_.resize(2 * edges_.size());
  std::vector<std::size_t> cursor(adj_offsets_.begin(), adj_offsets_.end() - 1);
  for (const TreeEdge& e : edges_) {
    adj_[cursor[e.a]++] = e.b;
    adj_[cursor[e.b]++] = e.a;
  }
  for (NodeId t = 1; t <= count; ++t) {
    std::sort(adj_.begin() + static_cast<std::ptrdiff_t>(adj_offsets_[t]),
              adj_.begin() + static_cast<std::ptrdiff_t>(adj_offsets_[t + 1]));
  }

  if (root != kNoNode) {
    if (!contains(root)) throw PreconditionError("root " + std::to_string(root) + " is not a node");
    root_ = root;
    parent_.assign(static_cast<std::size_t>(count) + 1, kNoNode);
    std::vector<NodeId> order{root};
    std::vector<char> seen(static_cast<std::size_t>(count) + 1, 0);
    seen[root] = 1;
    for (std::size_t head = 0; head < order.size(); ++head) {
      for (NodeId c : neighbors(order[head])) {
        if (!seen[c]) {
          seen[c] = 1;
          parent_[c] = order[head];
          order.push_back(c);
        }
      }
    }
    child_offsets_.assign(static_cast<std::size_t>(count) + 2, 0);
    for (NodeId t = 1; t <= count; ++t) {
      if (parent_[t] != kNoNode) ++child_offsets_[parent_[t] + 1];
    }
    for (std::size_t i = 1; i < child_offsets_.size(); ++i) child_offsets_[i] += child_offsets_[i - 1];
    children_.resize(count > 0 ? static_cast<std::size_t>(count - 1) : 0);
    std::vector<std::size_t> next(child_offsets_.begin(), child_offsets_.end() - 1);
    for (NodeId t = 1; t <= count; ++t) {
      if (parent_[t] != kNoNode) children_[next[parent_[t]]++] = t;
    }
  }
}

std::span<const NodeId> TreeDecomp::neighbors(NodeId t) const {
  return {adj_.data() + adj_offsets_[t], adj_offsets_[t + 1] - adj_offsets_[t]};
}

void TreeDecomp::require_rooted() const {
  if (!rooted()) throw PreconditionError("missing root");
}

NodeId TreeDecomp::parent(NodeId t) const {
  require_rooted();
  return parent_[t];
}

std::span<const NodeId> TreeDecomp::children(NodeId t) const {
  require_rooted();
  return {children_.data() + child_offsets_[t], child_offsets_[t + 1] - child_offsets_[t]};
}

TreeDecomp TreeDecomp::with_root(NodeId root) const { return TreeDecomp(n_, bags_, edges_, root); }

TreeDecomp TreeDecomp::with_bags(std::vector<VertexSet> bags) const {
  if (bags.size() != bags_.size()) throw PreconditionError("bag count mismatch");
  return TreeDecomp(n_, std::move(bags), edges_, root_);
}

// ---------------------------------------------------------------------------

ValidityReport check_occurrences_connected(const TreeDecomp& t) {
  // The nodes holding v induce a forest of the tree; it is connected iff it
  // has exactly (occurrences - 1) edges.
  ValidityReport report;
  const Vertex n = t.vertex_count();
  std::vector<std::size_t> occurrences(static_cast<std::size_t>(n) + 1, 0);
  std::vector<std::size_t> shared_edges(static_cast<std::size_t>(n) + 1, 0);
  for (const VertexSet& b : t.bags()) {
    for (Vertex v : b) ++occurrences[v];
  }
  for (const TreeEdge& e : t.edges()) {
    for (Vertex v : set_intersection(t.bag(e.a), t.bag(e.b))) ++shared_edges[v];
  }
  for (Vertex v = 1; v <= n; ++v) {
    if (occurrences[v] > 0 && shared_edges[v] + 1 != occurrences[v]) {
      report.connected_occurrences = false;
      report.witness = "occurrences of vertex " + std::to_string(v) + " are not connected";
      break;
    }
  }
  return report;
}

ValidityReport validate_td(const DiGraph& g, const TreeDecomp& t) {
  ValidityReport report;
  const Vertex n = g.vertex_count();
  std::vector<char> covered(static_cast<std::size_t>(n) + 1, 0);
  for (NodeId id = 1; id <= t.size(); ++id) {
    for (Vertex v : t.bag(id)) {
      if (v > n) {
        report.covers_vertices = false;
        if (!report.witness) {
          report.witness = "bag " + std::to_string(id) + " holds vertex " + std::to_string(v) +
                           " which is not in the graph";
        }
      } else {
        covered[v] = 1;
      }
    }
  }
  for (Vertex v = 1; v <= n; ++v) {
    if (!covered[v]) {
      report.covers_vertices = false;
      if (!report.witness) report.witness = "vertex " + std::to_string(v) + " is in no bag";
      break;
    }
  }

  // For each arc, some bag must hold both endpoints. Index the bags by vertex.
  std::vector<std::vector<NodeId>> holders(static_cast<std::size_t>(n) + 1);
  for (NodeId id = 1; id <= t.size(); ++id) {
    for (Vertex v : t.bag(id)) {
      if (v <= n) holders[v].push_back(id);
    }
  }
  for (const Arc& a : g.arcs()) {
    if (a.from == a.to) continue;
    const auto& hu = holders[a.from];
    const auto& hv = holders[a.to];
    auto i = hu.begin();
    auto j = hv.begin();
    bool found = false;
    while (i != hu.end() && j != hv.end()) {
      if (*i == *j) {
        found = true;
        break;
      }
      if (*i < *j) ++i; else ++j;
    }
    if (!found) {
      report.covers_edges = false;
      if (!report.witness) {
        report.witness = "arc (" + std::to_string(a.from) + "," + std::to_string(a.to) +
                         ") is not covered by any bag";
      }
      break;
    }
  }

  ValidityReport occ = check_occurrences_connected(t);
  report.connected_occurrences = occ.connected_occurrences;
  if (!report.witness) report.witness = occ.witness;
  return report;
}

int width(const TreeDecomp& t) {
  std::size_t widest = 0;
  for (const VertexSet& b : t.bags()) widest = std::max(widest, b.size());
  return static_cast<int>(widest) - 1;
}

int depth(const TreeDecomp& t) {
  if (!t.rooted()) throw PreconditionError("missing root");
  std::vector<int> level(static_cast<std::size_t>(t.size()) + 1, 0);
  std::vector<NodeId> order{t.root()};
  int deepest = 0;
  for (std::size_t head = 0; head < order.size(); ++head) {
    NodeId x = order[head];
    deepest = std::max(deepest, level[x]);
    for (NodeId c : t.children(x)) {
      level[c] = level[x] + 1;
      order.push_back(c);
    }
  }
  return deepest;
}

TreeDecomp augment_all_bags(const TreeDecomp& t, const VertexSet& s) {
  std::vector<VertexSet> bags;
  bags.reserve(t.bags().size());
  for (const VertexSet& b : t.bags()) bags.push_back(set_union(b, s));
  return t.with_bags(std::move(bags));
}

// ---------------------------------------------------------------------------
// PACE .td IO

namespace {

std::vector<std::string_view> tokens_of(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

long long to_int(std::string_view token, std::size_t line) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("non-integer token '" + std::string(token) + "'", line);
  }
  return value;
}

}  // namespace

TreeDecomp parse_td(std::istream& in) {
  bool have_header = false;
  long long node_count = 0;
  long long n = 0;
  NodeId root = kNoNode;
  std::vector<std::optional<VertexSet>> bags;
  std::vector<TreeEdge> edges;
  std::optional<DisjointSets> sets;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto tok = tokens_of(raw);
    if (tok.empty()) continue;
    if (tok[0] == "c") {
      if (tok.size() == 3 && tok[1] == "root") root = static_cast<NodeId>(to_int(tok[2], line));
      continue;
    }
    if (tok[0] == "s") {
      if (have_header) throw ParseError("duplicate header", line);
      if (tok.size() != 5 || tok[1] != "td") {
        throw ParseError("malformed header, expected 's td <N> <maxbag> <n>'", line);
      }
      node_count = to_int(tok[2], line);
      to_int(tok[3], line);
      n = to_int(tok[4], line);
      if (node_count < 0 || n < 0) throw ParseError("negative count in header", line);
      have_header = true;
      bags.assign(static_cast<std::size_t>(node_count), std::nullopt);
      sets.emplace(static_cast<std::size_t>(node_count) + 1);
      continue;
    }
    if (!have_header) throw ParseError("missing header", line);
    if (tok[0] == "b") {
      if (tok.size() < 2) throw ParseError("bag line without id", line);
      long long id = to_int(tok[1], line);
      if (id < 1 || id > node_count) throw ParseError("bag id out of range", line);
      if (bags[id - 1]) throw ParseError("duplicate bag id " + std::to_string(id), line);
      std::vector<Vertex> members;
      for (std::size_t i = 2; i < tok.size(); ++i) {
        long long v = to_int(tok[i], line);
        if (v < 1 || v > n) throw ParseError("bag references out-of-range vertex " + std::to_string(v), line);
        members.push_back(static_cast<Vertex>(v));
      }
      bags[id - 1] = VertexSet(std::move(members));
      continue;
    }
    if (tok.size() != 2) throw ParseError("expected a tree edge '<id1> <id2>'", line);
    long long a = to_int(tok[0], line);
    long long b = to_int(tok[1], line);
    if (a < 1 || a > node_count || b < 1 || b > node_count || a == b) {
      throw ParseError("tree edge endpoint out of range", line);
    }
    if (!sets->unite(static_cast<std::size_t>(a), static_cast<std::size_t>(b))) {
      throw ParseError("decomposition edges contain a cycle", line);
    }
    edges.push_back({static_cast<NodeId>(a), static_cast<NodeId>(b)});
  }
  if (!have_header) throw ParseError("missing header", line + 1);
  std::vector<VertexSet> final_bags;
  for (std::size_t i = 0; i < bags.size(); ++i) {
    if (!bags[i]) throw ParseError("bag " + std::to_string(i + 1) + " is missing", line + 1);
    final_bags.push_back(std::move(*bags[i]));
  }
  if (node_count > 0 && edges.size() != static_cast<std::size_t>(node_count - 1)) {
    throw ParseError("decomposition edges do not connect all bags", line + 1);
  }
  if (root != kNoNode && (root < 1 || root > node_count)) throw ParseError("root id out of range", line + 1);
  return TreeDecomp(static_cast<Vertex>(n), std::move(final_bags), std::move(edges), root);
}

TreeDecomp parse_td(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_td(in);
}

void write_td(std::ostream& out, const TreeDecomp& t) {
  if (t.rooted()) out << "c root " << t.root() << '\n';
  out << "s td " << t.size() << ' ' << (width(t) + 1) << ' ' << t.vertex_count() << '\n';
  for (NodeId id = 1; id <= t.size(); ++id) {
    out << "b " << id;
    for (Vertex v : t.bag(id)) out << ' ' << v;
    out << '\n';
  }
  for (const TreeEdge& e : t.edges()) out << e.a << ' ' << e.b << '\n';
}

std::string td_to_text(const TreeDecomp& t) {
  std::ostringstream out;
  write_td(out, t);
  return out.str();
}

}  // namespace twreach
