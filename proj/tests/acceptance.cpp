// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// non-zero when any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>

#include "oracles.hpp"
#include "space_calibration.hpp"
#include "twreach/bench.hpp"
#include "twreach/ktree.hpp"
#include "twreach/reach.hpp"
#include "twreach/recursive_decomposition.hpp"
#include "twreach/sequences.hpp"

using namespace twreach;

namespace {

int ceil_log2(std::uint64_t x) {
  int r = 0;
  while ((std::uint64_t{1} << r) < x) ++r;
  return r;
}

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const char* name, const Outcome& o) {
  std::printf("criterion %d [%s] %s: %s\n", id, o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// 1. reach agrees with BFS on random instances.
Outcome oracle_equivalence() {
  std::mt19937_64 rng(20240601);
  const int instances = 1000;
  int agree = 0, queries = 0, pipeline_runs = 0, reachable = 0;
  for (int i = 0; i < instances; ++i) {
    const int k = 1 + i % 4;
    const Vertex n = std::max<Vertex>(4, k + 1) + static_cast<Vertex>(rng() % (64 - 4 + 1));
    KTreeInstance inst = gen_ktree({std::min<Vertex>(n, 64), k, rng(), 0.5});
    const Vertex nv = inst.graph.vertex_count();
    Vertex u = 1 + static_cast<Vertex>(rng() % nv);
    Vertex v = 1 + static_cast<Vertex>(rng() % nv);
    // A second query inside u's component so the marking loop always runs.
    VertexSet comp = component_containing(inst.graph, {}, u);
    Vertex w = comp[rng() % comp.size()];
    for (Vertex target : {v, w}) {
      ReachReport r = reach(inst.graph, inst.decomposition, u, target);
      const bool expected = bfs_reachable(inst.graph, u, target);
      ++queries;
      agree += r.reachable == expected;
      pipeline_runs += r.same_component;
      reachable += expected;
      if (r.same_component && !r.stats.completed) --agree;
    }
  }
  return {agree == queries, fmt("%d/%d queries agree over %d instances (%d full marking runs, %d reachable)", agree,
                                queries, instances, pipeline_runs, reachable)};
}

struct Corpus {
  std::vector<KTreeInstance> instances;
};

Corpus structural_corpus() {
  Corpus c;
  for (int i = 0; i < 240; ++i) {
    const int k = 1 + i % 4;
    const Vertex n = 8 + (i * 37) % 121;
    c.instances.push_back(gen_ktree({n, k, 555000 + static_cast<std::uint64_t>(i), 0.5}));
  }
  return c;
}

// 2. Boundary size and halving along every edge of every recursive decomposition.
Outcome recursion_bounds(const Corpus& corpus) {
  std::size_t nodes = 0, boundary_bad = 0, halving_bad = 0, depth_bad = 0, trees = 0;
  for (const KTreeInstance& inst : corpus.instances) {
    const int w = width(inst.decomposition);
    const int limit = ceil_log2(static_cast<std::uint64_t>(inst.graph.vertex_count()));
    for (const VertexSet& comp : undirected_components(inst.graph, {})) {
      RDTree rd = materialize_rd(RDContext(inst.graph, inst.decomposition, comp.front()));
      ++trees;
      std::vector<int> level(rd.size() + 1, 0);
      for (NodeId x = 1; x <= rd.size(); ++x) {
        ++nodes;
        if (static_cast<int>(rd.nodes[x].z.size()) > 4 * w + 4) ++boundary_bad;
        if (NodeId p = rd.parent[x]; p != kNoNode) {
          level[x] = level[p] + 1;
          if (2 * rd.components[x].size() > rd.components[p].size()) ++halving_bad;
        }
        if (level[x] > limit) ++depth_bad;
      }
    }
  }
  const bool ok = boundary_bad == 0 && halving_bad == 0 && depth_bad == 0;
  return {ok, fmt("%zu instances, %zu trees, %zu nodes; boundary violations %zu, halving violations %zu, depth violations %zu",
                  corpus.instances.size(), trees, nodes, boundary_bad, halving_bad, depth_bad)};
}

// 3. Hat decompositions: valid, width <= 6w+6, depth <= ceil(log2 n).
Outcome hat_bounds(const Corpus& corpus) {
  std::size_t invalid = 0, wide = 0, deep = 0, max_width = 0;
  for (const KTreeInstance& inst : corpus.instances) {
    const int w = width(inst.decomposition);
    const int limit = ceil_log2(static_cast<std::uint64_t>(inst.graph.vertex_count()));
    TreeDecomp forest = build_hat_forest(inst.graph, inst.decomposition);
    if (!validate_td(inst.graph, forest).valid()) ++invalid;
    for (const VertexSet& comp : undirected_components(inst.graph, {})) {
      TreeDecomp hat = build_hat_decomposition(RDContext(inst.graph, inst.decomposition, comp.front()));
      if (width(hat) > 6 * w + 6) ++wide;
      if (depth(hat) > limit) ++deep;
      max_width = std::max<std::size_t>(max_width, static_cast<std::size_t>(width(hat) + 1));
    }
  }
  const bool ok = invalid == 0 && wide == 0 && deep == 0;
  return {ok, fmt("%zu instances; invalid %zu, width violations %zu, depth violations %zu (largest hat bag %zu)",
                  corpus.instances.size(), invalid, wide, deep, max_width)};
}

// 4. Balancing contract.
Outcome balancing(const Corpus& corpus) {
  std::size_t bad_shape = 0, invalid = 0, wide = 0, deep = 0;
  for (const KTreeInstance& inst : corpus.instances) {
    TreeDecomp hat = build_hat_forest(inst.graph, inst.decomposition);
    BalancedTD b = binarize_balance(hat);
    for (NodeId x = 1; x <= b.size(); ++x)
      if (b.decomposition().children(x).size() > 2) ++bad_shape;
    if (!validate_td(inst.graph, b.decomposition()).valid()) ++invalid;
    if (width(b.decomposition()) > 3 * (width(hat) + 1) - 1) ++wide;
    if (b.depth() > 2 * ceil_log2(static_cast<std::uint64_t>(hat.size())) + 1) ++deep;
  }
  const bool ok = bad_shape == 0 && invalid == 0 && wide == 0 && deep == 0;
  return {ok, fmt("%zu instances; non-binary nodes %zu, invalid %zu, width violations %zu, depth violations %zu",
                  corpus.instances.size(), bad_shape, invalid, wide, deep)};
}

// 5. Universal sequence counts and domination.
Outcome universal_sequences() {
  bool ok = true;
  for (int s = 0; s <= 10; ++s) {
    std::map<std::uint64_t, std::uint64_t> counts;
    const std::uint64_t len = useq_length(s);
    ok = ok && len == (std::uint64_t{2} << s) - 1;
    for (std::uint64_t k = 1; k <= len; ++k) ++counts[useq_element(s, k)];
    for (int i = 0; i <= s; ++i) ok = ok && counts[std::uint64_t{1} << i] == (std::uint64_t{1} << (s - i));
    ok = ok && counts.size() == static_cast<std::size_t>(s + 1);
  }
  std::uint64_t compositions = 0, failed = 0;
  for (int s = 0; s <= 4; ++s) {
    std::vector<std::uint64_t> demands;
    std::function<void(std::uint64_t)> grow = [&](std::uint64_t left) {
      ++compositions;
      auto picks = dominating_subsequence(s, demands);
      bool good = picks.has_value();
      for (std::size_t j = 0; good && j < demands.size(); ++j) {
        good = useq_element(s, (*picks)[j]) >= demands[j] && (j == 0 || (*picks)[j] > (*picks)[j - 1]);
      }
      failed += !good;
      for (std::uint64_t next = 1; next <= left; ++next) {
        demands.push_back(next);
        grow(left - next);
        demands.pop_back();
      }
    };
    grow(std::uint64_t{1} << s);
  }
  ok = ok && failed == 0;
  return {ok, fmt("counts and lengths exact for s <= 10; %llu compositions checked, %llu without domination",
                  static_cast<unsigned long long>(compositions), static_cast<unsigned long long>(failed))};
}

// 6. Leaf sequence lengths and element access.
Outcome leaf_sequences() {
  std::size_t length_checks = 0, length_bad = 0, elements = 0, element_bad = 0;
  for (int h = 0; h <= 6; ++h) {
    BalancedTD tree = oracle::complete_tree(h);
    for (std::uint64_t d : {1, 2, 4, 8, 16}) {
      std::vector<NodeId> full;
      oracle::lseq_materialize(tree, 1, d, full);
      const std::uint64_t closed = lseq_length(h, d);
      ++length_checks;
      if (closed != oracle::lseq_recurrence(h, d) || closed != full.size() ||
          LeafSequence(tree, 1, d).length() != closed) {
        ++length_bad;
      }
    }
  }
  std::vector<BalancedTD> trees;
  for (int h = 0; h <= 4; ++h) trees.push_back(oracle::complete_tree(h));
  for (int i = 0; i < 60; ++i) {
    KTreeInstance inst = gen_ktree({5 + i % 30, 1 + i % 3, 31337 + static_cast<std::uint64_t>(i), 0.5});
    BalancedTD b = build_balanced(inst.graph, inst.decomposition);
    if (b.depth() <= 4) trees.push_back(std::move(b));
  }
  for (const BalancedTD& tree : trees) {
    for (NodeId t = 1; t <= tree.size(); ++t) {
      for (std::uint64_t d : {1, 2, 4, 8}) {
        std::vector<NodeId> full;
        oracle::lseq_materialize(tree, t, d, full);
        LeafSequence seq(tree, t, d);
        if (seq.length() != full.size()) {
          ++element_bad;
          continue;
        }
        for (std::uint64_t r = 1; r <= full.size(); ++r) {
          ++elements;
          element_bad += seq.element(r) != full[r - 1];
        }
      }
    }
  }
  const bool ok = length_bad == 0 && element_bad == 0;
  return {ok, fmt("%zu length triples (%zu mismatched); %zu elements over %zu trees of height <= 4 (%zu mismatched)",
                  length_checks, length_bad, elements, trees.size(), element_bad)};
}

// 7. Marking over Lseq(t, d) equals the bounded-path closure inside the
// descendant-or-ancestor subgraph, for every initial subset of V_A(t).
Outcome iteration_closure() {
  std::size_t cases = 0, mismatched = 0, over = 0, under = 0, outside_reach = 0, nodes = 0;
  std::string example;
  for (int i = 0; i < 200 && nodes < 400; ++i) {
    KTreeInstance inst = gen_ktree({4 + i % 9, 1 + i % 3, 880000 + static_cast<std::uint64_t>(i), 0.6});
    BalancedTD tree = build_balanced(inst.graph, inst.decomposition);
    if (tree.depth() > 3) continue;
    auto closure = oracle::closure(inst.graph);
    for (NodeId t = 1; t <= tree.size(); ++t) {
      const std::vector<Vertex> va = ancestor_vertices(tree, t).vertices;
      if (va.size() > 10) continue;
      ++nodes;
      GadView view = gad_view(inst.graph, tree, t);
      for (std::uint64_t d : {1, 2, 4}) {
        for (unsigned mask = 0; mask < (1U << va.size()); ++mask) {
          std::set<Vertex> init;
          for (std::size_t b = 0; b < va.size(); ++b)
            if (mask >> b & 1U) init.insert(va[b]);
          VertexSet marked = propagate_marks(inst.graph, tree, t, d, VertexSet(std::vector<Vertex>(init.begin(), init.end())));
          std::set<Vertex> expected = oracle::bounded_reach(view.arcs, init, d);
          ++cases;
          bool differs = false;
          for (Vertex y : va) {
            const bool m = marked.contains(y);
            const bool e = expected.count(y) != 0;
            if (m && !e) ++over;
            if (!m && e) ++under;
            differs = differs || m != e;
            bool reachable = false;
            for (Vertex x : init) reachable = reachable || closure[x][y];
            if (m && !reachable) ++outside_reach;
          }
          if (differs) {
            ++mismatched;
            if (example.empty()) {
              example = fmt("first mismatch: instance %d node %d d=%llu initial %s", i, t,
                            static_cast<unsigned long long>(d),
                            to_string(VertexSet(std::vector<Vertex>(init.begin(), init.end()))).c_str());
            }
          }
        }
      }
    }
  }
  const bool ok = mismatched == 0;
  return {ok, fmt("%zu nodes, %zu (node, d, initial set) cases; %zu differ from the bounded closure "
                  "(%zu extra marks beyond length d, %zu missing marks, %zu marks unreachable in G)%s%s",
                  nodes, cases, mismatched, over, under, outside_reach, example.empty() ? "" : "; ",
                  example.c_str())};
}

// 8. Peak metered bits against (w'+1)(depth+1) + 64 ceil(log2 n), k = 3.
Outcome space_scaling() {
  bool ok = true;
  std::string detail;
  std::uint64_t peak_first = 0, peak_last = 0;
  // max ratio as a fraction num/den
  std::uint64_t best_num = 0, best_den = 1;
  for (std::size_t i = 0; i < calibration::kSizes.size(); ++i) {
    const Vertex n = calibration::kSizes[i];
    KTreeInstance inst = gen_ktree({n, 3, calibration::kSeed + static_cast<std::uint64_t>(n), 0.5});
    BalancedTD tree = prepare_query_tree(inst.graph, inst.decomposition, 1, n);
    SpaceMeter meter;
    ReachOptions opts;
    opts.iteration_limit = calibration::kIterationLimit;
    ReachStats stats;
    reach_balanced(inst.graph, tree, 1, n, meter, opts, &stats);
    const std::uint64_t denom = static_cast<std::uint64_t>(width(tree.decomposition()) + 1) *
                                    static_cast<std::uint64_t>(tree.depth() + 1) +
                                64 * static_cast<std::uint64_t>(ceil_log2(static_cast<std::uint64_t>(n)));
    const std::uint64_t peak = stats.peak_bits;
    ok = ok && peak == calibration::kPeakBits[i];
    // ratio <= C  <=>  peak * C_den <= C_num * denom
    ok = ok && peak * calibration::kConstantDen <= calibration::kConstantNum * denom;
    if (peak * best_den > best_num * denom) {
      best_num = peak;
      best_den = denom;
    }
    if (i == 0) peak_first = peak;
    peak_last = peak;
    detail += fmt("%sn=%d peak=%llu bound_term=%llu", i ? ", " : "", n, static_cast<unsigned long long>(peak),
                  static_cast<unsigned long long>(denom));
  }
  // The calibrated constant is the exact maximum ratio.
  ok = ok && best_num * calibration::kConstantDen == calibration::kConstantNum * best_den;
  const bool growth = peak_last <= 4 * peak_first;
  ok = ok && growth;
  return {ok, detail + fmt("; max ratio %llu/%llu = %.4f vs C = %llu/%llu; peak(1024)/peak(64) = %.3f",
                           static_cast<unsigned long long>(best_num), static_cast<unsigned long long>(best_den),
                           static_cast<double>(best_num) / static_cast<double>(best_den),
                           static_cast<unsigned long long>(calibration::kConstantNum),
                           static_cast<unsigned long long>(calibration::kConstantDen),
                           static_cast<double>(peak_last) / static_cast<double>(peak_first))};
}

// Schedule length counted straight from the definition, memoized per
// (node, d), independent of LeafSequence.
std::uint64_t structural_length(const BalancedTD& tree, NodeId x, std::uint64_t d,
                                std::map<std::pair<NodeId, std::uint64_t>, std::uint64_t>& memo) {
  if (tree.is_leaf(x)) return d;
  auto key = std::make_pair(x, d);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  std::uint64_t total = 0;
  for (std::uint64_t c : oracle::useq(ceil_log2(d))) {
    if (tree.left(x) != kNoNode) total += structural_length(tree, tree.left(x), c, memo);
    if (tree.right(x) != kNoNode) total += structural_length(tree, tree.right(x), c, memo);
  }
  return memo[key] = total;
}

// 9. Iteration count and relaxation work on benchmarked instances.
Outcome iteration_counts() {
  BenchConfig config;
  for (Vertex n : {16, 32, 64})
    for (int k = 1; k <= 4; ++k) config.grid.push_back({n, k});
  config.repetitions = 3;
  config.seed = 99;
  config.threads = 1;
  std::vector<BenchRecord> records = run_bench(config);
  std::size_t count_bad = 0, closed_form_exceeded = 0, closed_form_equal = 0, work_bad = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    const BenchRecord& r = records[i];
    BenchInstance inst = make_bench_instance(r.n, r.k, bench_instance_seed(config.seed, i), config.arc_probability);
    const std::uint64_t d = schedule_power(r.n);
    std::map<std::pair<NodeId, std::uint64_t>, std::uint64_t> memo;
    const std::uint64_t expected = structural_length(inst.tree, inst.tree.root(), d, memo);
    if (r.iterations != expected || r.depth_balanced != inst.tree.depth()) ++count_bad;
    const std::uint64_t closed = lseq_length(r.depth_balanced, d);
    if (r.iterations > closed) ++closed_form_exceeded;
    if (r.iterations == closed) ++closed_form_equal;
    const std::uint64_t cap = static_cast<std::uint64_t>(r.width_balanced + 1) * (r.depth_balanced + 1);
    if (r.relax_work > r.iterations * cap * cap) ++work_bad;
  }
  const bool ok = count_bad == 0 && closed_form_exceeded == 0 && work_bad == 0;
  return {ok, fmt("%zu benchmarked runs; iteration count off the leaf-sequence length %zu, above the complete-tree "
                  "closed form %zu (equal to it on %zu), relaxation work over bound %zu",
                  records.size(), count_bad, closed_form_exceeded, closed_form_equal, work_bad)};
}

}  // namespace

int main() {
  auto timed = [](int id, const char* name, const std::function<Outcome()>& run) {
    auto start = std::chrono::steady_clock::now();
    Outcome o = run();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.detail += fmt(" (%.1fs)", secs);
    report(id, name, o);
  };
  timed(1, "reachability matches BFS", oracle_equivalence);
  Corpus corpus = structural_corpus();
  timed(2, "recursive decomposition boundary and halving bounds", [&] { return recursion_bounds(corpus); });
  timed(3, "hat decomposition validity, width and depth", [&] { return hat_bounds(corpus); });
  timed(4, "balanced binary decomposition contract", [&] { return balancing(corpus); });
  timed(5, "universal sequence counts and domination", universal_sequences);
  timed(6, "leaf sequence length and element access", leaf_sequences);
  timed(7, "marking equals bounded-length closure", iteration_closure);
  timed(8, "metered space scaling", space_scaling);
  timed(9, "iteration count and relaxation work", iteration_counts);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
