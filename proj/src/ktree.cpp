#include "twreach/ktree.hpp"

#include <numeric>
#include <string>
#include <utility>

#include "twreach/errors.hpp"

namespace twreach {

std::uint64_t PortableRng::below(std::uint64_t bound) {
  if (bound == 0) throw PreconditionError("empty range");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % bound;
}

bool PortableRng::bernoulli(double p) {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53 < p;
}

namespace {

template <typename T>
void shuffle(std::vector<T>& items, PortableRng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[rng.below(i)]);
  }
}

}  // namespace

KTreeInstance gen_ktree(const KTreeSpec& spec) {
  const int k = spec.k;
  const Vertex n = spec.n;
  if (k < 0) throw PreconditionError("k must be non-negative");
  if (n < k + 1) {
    throw PreconditionError("n = " + std::to_string(n) + " is smaller than k + 1 = " + std::to_string(k + 1));
  }
  if (!(spec.arc_probability >= 0.0 && spec.arc_probability <= 1.0)) {
    throw PreconditionError("arc probability must lie in [0, 1]");
  }
  PortableRng rng(spec.seed);

  // Vertices 0..n-1 and bags 0..n-k-1 before relabelling.
  struct Clique {
    std::vector<Vertex> members;
    int creator;
  };
  std::vector<std::vector<Vertex>> bags;
  std::vector<std::pair<int, int>> tree_edges;
  std::vector<std::pair<Vertex, Vertex>> edges;
  std::vector<Clique> cliques;

  std::vector<Vertex> base(static_cast<std::size_t>(k) + 1);
  std::iota(base.begin(), base.end(), 0);
  bags.push_back(base);
  for (Vertex a = 0; a <= k; ++a) {
    for (Vertex b = a + 1; b <= k; ++b) edges.emplace_back(a, b);
    std::vector<Vertex> face;
    for (Vertex x : base) {
      if (x != a) face.push_back(x);
    }
    cliques.push_back({std::move(face), 0});
  }

  for (Vertex v = k + 1; v < n; ++v) {
    const Clique host = cliques[rng.below(cliques.size())];
    const int bag_id = static_cast<int>(bags.size());
    std::vector<Vertex> bag = host.members;
    bag.push_back(v);
    bags.push_back(bag);
    tree_edges.emplace_back(host.creator, bag_id);
    for (Vertex x : host.members) edges.emplace_back(x, v);
    for (Vertex drop : host.members) {
      std::vector<Vertex> face;
      for (Vertex x : host.members) {
        if (x != drop) face.push_back(x);
      }
      face.push_back(v);
      cliques.push_back({std::move(face), bag_id});
    }
  }

  std::vector<std::pair<Vertex, Vertex>> arcs;
  for (auto [a, b] : edges) {
    if (rng.bernoulli(spec.arc_probability)) arcs.emplace_back(a, b);
    if (rng.bernoulli(spec.arc_probability)) arcs.emplace_back(b, a);
  }

  std::vector<Vertex> label(static_cast<std::size_t>(n));
  std::iota(label.begin(), label.end(), 1);
  shuffle(label, rng);
  std::vector<NodeId> bag_label(bags.size());
  std::iota(bag_label.begin(), bag_label.end(), 1);
  shuffle(bag_label, rng);

  std::vector<Arc> out_arcs;
  for (auto [a, b] : arcs) out_arcs.push_back({label[a], label[b]});
  std::vector<VertexSet> out_bags(bags.size());
  for (std::size_t i = 0; i < bags.size(); ++i) {
    std::vector<Vertex> relabelled;
    for (Vertex x : bags[i]) relabelled.push_back(label[x]);
    out_bags[bag_label[i] - 1] = VertexSet(std::move(relabelled));
  }
  std::vector<TreeEdge> out_edges;
  for (auto [a, b] : tree_edges) out_edges.push_back({bag_label[a], bag_label[b]});

  return {DiGraph(n, std::move(out_arcs)), TreeDecomp(n, std::move(out_bags), std::move(out_edges))};
}

}  // namespace twreach
