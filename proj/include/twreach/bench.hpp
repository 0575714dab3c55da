#pragma once

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

#include "twreach/balanced.hpp"
#include "twreach/ktree.hpp"

namespace twreach {

struct BenchRecord {
  Vertex n = 0;
  int k = 0;
  int width_input = 0;
  int width_balanced = 0;
  int depth_balanced = 0;
  std::uint64_t iterations = 0;
  std::uint64_t peak_bits = 0;
  double wall_time = 0.0;  // seconds, reach run only
  // Not part of the CSV.
  std::uint64_t schedule_length = 0;
  std::uint64_t relax_work = 0;
};

struct BenchConfig {
  std::vector<std::pair<Vertex, int>> grid;  // (n, k)
  int repetitions = 1;
  std::uint64_t seed = 1;
  double arc_probability = 0.5;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// A generated instance with its query endpoints and prepared tree.
struct BenchInstance {
  KTreeInstance instance;
  Vertex u = 0;
  Vertex v = 0;
  BalancedTD tree;
};

BenchInstance make_bench_instance(Vertex n, int k, std::uint64_t seed, double arc_probability);

/// Instance seed for the given run; runs are numbered in grid order,
/// repetitions innermost.
std::uint64_t bench_instance_seed(std::uint64_t seed, std::size_t run);

/// One full, metered reach run per (grid point, repetition) on a fresh
/// k-tree instance with random endpoints. Records come back in grid order.
std::vector<BenchRecord> run_bench(const BenchConfig& config);

/// A "c seed=... grid=..." provenance line and the header, followed by one
/// row per record.
void write_bench_csv(std::ostream& out, const BenchConfig& config, const std::vector<BenchRecord>& records);

}  // namespace twreach
