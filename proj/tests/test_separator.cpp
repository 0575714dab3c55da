#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "twreach/errors.hpp"
#include "twreach/ktree.hpp"
#include "twreach/separator.hpp"

using namespace twreach;

namespace {

VertexSet random_subset(std::mt19937_64& rng, Vertex n, int percent) {
  std::vector<Vertex> out;
  for (Vertex v = 1; v <= n; ++v)
    if (static_cast<int>(rng() % 100) < percent) out.push_back(v);
  return VertexSet(out);
}

}  // namespace

TEST_CASE("is_balanced_separator examples") {
  DiGraph path3(3, {{1, 2}, {2, 3}});
  CHECK(is_balanced_separator(path3, {2}, {1, 2, 3}));
  DiGraph path4(4, {{1, 2}, {2, 3}, {3, 4}});
  CHECK_FALSE(is_balanced_separator(path4, {}, {1, 2, 3, 4}));
  CHECK(is_balanced_separator(path4, {}, {}));
  CHECK(is_balanced_separator(path4, {1, 2, 3, 4}, {1, 2, 3, 4}));
}

TEST_CASE("sep on the path example") {
  DiGraph g(4, {{1, 2}, {2, 3}, {3, 4}});
  TreeDecomp t(4, {{1, 2}, {2, 3}, {3, 4}}, {{1, 2}, {2, 3}});
  SeparatorResult all = sep(g, t, {1, 2, 3, 4});
  CHECK(all.bag_node == 1);
  CHECK(all.separator == VertexSet{1, 2});
  CHECK(all.target_size == 4);
  CHECK(oracle::first_separator_bag(g, t, {1, 2, 3, 4}) == 1);

  SeparatorResult none = sep(g, t, {});
  CHECK(none.bag_node == 1);
  CHECK(none.target_size == 0);
}

TEST_CASE("sep matches an exhaustive bag scan and is deterministic") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 500; ++i) {
    const int k = 1 + i % 4;
    KTreeInstance inst = gen_ktree({k + 1 + i % 50, k, static_cast<std::uint64_t>(300 + i), 0.5});
    const DiGraph& g = inst.graph;
    const TreeDecomp& t = inst.decomposition;
    SeparatorIndex index(std::make_shared<const DiGraph>(g), std::make_shared<const TreeDecomp>(t));
    for (int q = 0; q < 4; ++q) {
      VertexSet u = random_subset(rng, g.vertex_count(), q == 0 ? 100 : 15 + 20 * q);
      SeparatorResult r = index.find(u);
      CHECK(r.bag_node == oracle::first_separator_bag(g, t, u));
      CHECK(oracle::balanced_by_components(g, r.separator, u));
      CHECK(is_balanced_separator(g, r.separator, u));
      CHECK(static_cast<int>(r.separator.size()) <= width(t) + 1);
      CHECK(index.find(u).bag_node == r.bag_node);
    }
  }
}

TEST_CASE("is_balanced_separator matches component counting") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 300; ++i) {
    KTreeInstance inst = gen_ktree({3 + i % 20, 1 + i % 2, static_cast<std::uint64_t>(i), 0.4});
    VertexSet s = random_subset(rng, inst.graph.vertex_count(), 20);
    VertexSet u = random_subset(rng, inst.graph.vertex_count(), 50);
    CHECK(is_balanced_separator(inst.graph, s, u) == oracle::balanced_by_components(inst.graph, s, u));
  }
}

TEST_CASE("sep reports vertices that no bag holds") {
  DiGraph g(3, {{1, 2}});
  TreeDecomp t(3, {{1, 2}}, {});
  CHECK_THROWS_AS(sep(g, t, {3}), ValidationError);
}
