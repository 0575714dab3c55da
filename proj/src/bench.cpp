#include "twreach/bench.hpp"

#include <atomic>
#include <chrono>
#include <exception>
#include <iomanip>
#include <mutex>
#include <ostream>
#include <thread>

#include "twreach/errors.hpp"
#include "twreach/ktree.hpp"
#include "twreach/reach.hpp"

namespace twreach {

std::uint64_t bench_instance_seed(std::uint64_t seed, std::size_t run) {
  // splitmix64 finaliser over seed + run.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (static_cast<std::uint64_t>(run) + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

BenchInstance make_bench_instance(Vertex n, int k, std::uint64_t seed, double p) {
  KTreeInstance inst = gen_ktree({n, k, seed, p});
  PortableRng pick(seed ^ 0xA5A5A5A5A5A5A5A5ULL);
  Vertex u = static_cast<Vertex>(pick.below(static_cast<std::uint64_t>(n))) + 1;
  Vertex v = static_cast<Vertex>(pick.below(static_cast<std::uint64_t>(n))) + 1;
  BalancedTD tree = prepare_query_tree(inst.graph, inst.decomposition, u, v);
  return {std::move(inst), u, v, std::move(tree)};
}

namespace {

BenchRecord run_one(Vertex n, int k, std::uint64_t seed, double p) {
  BenchInstance b = make_bench_instance(n, k, seed, p);
  const KTreeInstance& inst = b.instance;
  const BalancedTD& tree = b.tree;
  const Vertex u = b.u;
  const Vertex v = b.v;
  BenchRecord rec;
  rec.n = n;
  rec.k = k;
  rec.width_input = width(inst.decomposition);
  rec.width_balanced = width(tree.decomposition());
  rec.depth_balanced = tree.depth();

  SpaceMeter meter;
  ReachStats stats;
  auto start = std::chrono::steady_clock::now();
  reach_balanced(inst.graph, tree, u, v, meter, {}, &stats);
  rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  rec.iterations = stats.iterations;
  rec.peak_bits = stats.peak_bits;
  rec.schedule_length = stats.schedule_length;
  rec.relax_work = stats.relax_work;
  return rec;
}

}  // namespace

std::vector<BenchRecord> run_bench(const BenchConfig& config) {
  if (config.repetitions < 1) throw PreconditionError("repetitions must be positive");
  struct Job {
    Vertex n;
    int k;
  };
  std::vector<Job> jobs;
  for (auto [n, k] : config.grid) {
    for (int r = 0; r < config.repetitions; ++r) jobs.push_back({n, k});
  }
  std::vector<BenchRecord> records(jobs.size());
  unsigned workers = config.threads != 0 ? config.threads : std::max(1U, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(jobs.size(), 1)));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_lock;
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        records[i] = run_one(jobs[i].n, jobs[i].k, bench_instance_seed(config.seed, i), config.arc_probability);
      } catch (...) {
        std::lock_guard lock(failure_lock);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return records;
}

void write_bench_csv(std::ostream& out, const BenchConfig& config, const std::vector<BenchRecord>& records) {
  out << "c seed=" << config.seed << " grid=";
  for (std::size_t i = 0; i < config.grid.size(); ++i) {
    out << (i ? ";" : "") << config.grid[i].first << "x" << config.grid[i].second;
  }
  out << " reps=" << config.repetitions << " p=" << config.arc_probability << "\n";
  out << "n,k,width_input,width_balanced,depth_balanced,iterations,peak_bits,wall_time\n";
  for (const BenchRecord& r : records) {
    out << r.n << ',' << r.k << ',' << r.width_input << ',' << r.width_balanced << ',' << r.depth_balanced
        << ',' << r.iterations << ',' << r.peak_bits << ',' << std::fixed << std::setprecision(6)
        << r.wall_time << std::defaultfloat << '\n';
  }
}

}  // namespace twreach
