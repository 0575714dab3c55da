#pragma once

#include <cstdint>
#include <random>

#include "twreach/graph.hpp"
#include "twreach/tree_decomposition.hpp"

namespace twreach {

/// Seeded 64-bit Mersenne Twister with portable bounded and Bernoulli draws
/// (no reliance on std distributions, whose output is implementation
/// defined).
class PortableRng {
 public:
  explicit PortableRng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform in [0, bound); bound must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// True with probability p, using the top 53 bits of one draw.
  bool bernoulli(double p);

 private:
  std::mt19937_64 engine_;
};

struct KTreeSpec {
  Vertex n = 0;
  int k = 1;
  std::uint64_t seed = 0;
  /// Probability of including each direction of each k-tree edge.
  double arc_probability = 0.5;
};

struct KTreeInstance {
  DiGraph graph;
  TreeDecomp decomposition;
};

/// Random k-tree with its elimination decomposition (width exactly k) and a
/// random orientation. Vertex labels and bag ids are shuffled. Throws
/// PreconditionError for out-of-range parameters.
KTreeInstance gen_ktree(const KTreeSpec& spec);

}  // namespace twreach
