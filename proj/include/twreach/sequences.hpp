#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "twreach/balanced.hpp"

namespace twreach {

/// |σ_s| = 2^(s+1) - 1. Throws PreconditionError for s outside [0, 62].
std::uint64_t useq_length(int s);

/// k-th element (1-based) of σ_s, found by descending the recurrence
/// σ_s = σ_{s-1} ⋄ <2^s> ⋄ σ_{s-1}. Throws PreconditionError on a bad k.
std::uint64_t useq_element(int s, std::uint64_t k);

/// Number of occurrences of 2^i in σ_s, which is 2^(s-i).
std::uint64_t useq_counts(int s, int i);

/// Greedy left-to-right domination: strictly increasing 1-based indices
/// i_1 < i_2 < ... with σ_s[i_j] >= demands[j], or nullopt if the greedy
/// scan runs out of elements.
std::optional<std::vector<std::uint64_t>> dominating_subsequence(
    int s, const std::vector<std::uint64_t>& demands);

bool is_power_of_two(std::uint64_t d) noexcept;

/// log2 of a power of two; PreconditionError otherwise.
int exact_log2(std::uint64_t d);

/// 2^h * d * C(h + log d, log d), the leaf-sequence length over a complete
/// binary tree of height h. Throws OverflowError if the value does not fit
/// in 64 bits and PreconditionError if d is not a power of two.
std::uint64_t lseq_length(int h, std::uint64_t d);

/// The leaf sequence Lseq(t, d) of a binary tree, addressed by index.
///
/// Lengths are tabulated per node for every power of two up to d, so nodes
/// with a single child (whose missing sibling contributes nothing) are
/// handled exactly. On complete trees the lengths match lseq_length().
class LeafSequence {
 public:
  /// Throws PreconditionError for an unknown node or a d that is not a power
  /// of two, and OverflowError when some length exceeds 64 bits.
  LeafSequence(const BalancedTD& tree, NodeId t, std::uint64_t d);

  NodeId start() const noexcept { return start_; }
  std::uint64_t d() const noexcept { return d_; }
  std::uint64_t length() const { return length_of(start_, log_d_); }

  /// Length of Lseq(x, 2^j) for any node x of the tree and j <= log d.
  std::uint64_t length_of(NodeId x, int j) const;

  /// r-th leaf (1-based). Throws PreconditionError when r is out of range.
  NodeId element(std::uint64_t r) const;

  /// One step of the element() descent.
  struct Step {
    NodeId node;
    std::uint64_t d;
    std::uint64_t r;
  };
  /// The (node, d, r) triples visited by element(r), root first.
  std::vector<Step> trace(std::uint64_t r) const;

  /// Calls visit(leaf) for every element in order; stops early when visit
  /// returns false. Returns the number of elements visited.
  std::uint64_t for_each(const std::function<bool(NodeId)>& visit) const;

  const BalancedTD& tree() const noexcept { return *tree_; }

 private:
  std::uint64_t block(NodeId x, int j) const;
  NodeId descend(std::uint64_t r, std::vector<Step>* steps) const;

  const BalancedTD* tree_;
  NodeId start_;
  std::uint64_t d_;
  int log_d_;
  // lengths_[x * (log_d_ + 1) + j] = |Lseq(x, 2^j)|
  std::vector<std::uint64_t> lengths_;
};

NodeId lseq_element(const BalancedTD& tree, NodeId t, std::uint64_t d, std::uint64_t r);

}  // namespace twreach
