#include "twreach/sequences.hpp"

#include <bit>
#include <limits>
#include <string>

#include "twreach/errors.hpp"

namespace twreach {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("leaf sequence length exceeds 64 bits");
  return out;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("leaf sequence length exceeds 64 bits");
  return out;
}

void require_s(int s) {
  if (s < 0 || s > 62) throw PreconditionError("sequence order " + std::to_string(s) + " is out of range");
}

}  // namespace

std::uint64_t useq_length(int s) {
  require_s(s);
  return (std::uint64_t{2} << s) - 1;
}

std::uint64_t useq_element(int s, std::uint64_t k) {
  if (k < 1 || k > useq_length(s)) {
    throw PreconditionError("index " + std::to_string(k) + " is outside sigma_" + std::to_string(s));
  }
  // Each level either lands on the middle element or recurses into one half.
  while (s > 0) {
    std::uint64_t half = (std::uint64_t{1} << s) - 1;
    if (k == half + 1) return std::uint64_t{1} << s;
    if (k > half) k -= half + 1;
    --s;
  }
  return 1;
}

std::uint64_t useq_counts(int s, int i) {
  require_s(s);
  if (i < 0 || i > s) throw PreconditionError("exponent " + std::to_string(i) + " exceeds " + std::to_string(s));
  return std::uint64_t{1} << (s - i);
}

std::optional<std::vector<std::uint64_t>> dominating_subsequence(
    int s, const std::vector<std::uint64_t>& demands) {
  const std::uint64_t n = useq_length(s);
  std::vector<std::uint64_t> picks;
  std::uint64_t k = 1;
  for (std::uint64_t want : demands) {
    while (k <= n && useq_element(s, k) < want) ++k;
    if (k > n) return std::nullopt;
    picks.push_back(k++);
  }
  return picks;
}

bool is_power_of_two(std::uint64_t d) noexcept { return std::has_single_bit(d); }

int exact_log2(std::uint64_t d) {
  if (!is_power_of_two(d)) throw PreconditionError(std::to_string(d) + " is not a power of two");
  return std::countr_zero(d);
}

std::uint64_t lseq_length(int h, std::uint64_t d) {
  if (h < 0) throw PreconditionError("height must be non-negative");
  const int log_d = exact_log2(d);
  // C(h + log d, log d) built incrementally; each prefix product is itself
  // a binomial coefficient, so the division is exact.
  unsigned __int128 binom = 1;
  for (int i = 1; i <= log_d; ++i) {
    binom = binom * static_cast<unsigned>(h + i) / static_cast<unsigned>(i);
    if (binom > std::numeric_limits<std::uint64_t>::max()) {
      throw OverflowError("leaf sequence length exceeds 64 bits");
    }
  }
  if (h >= 64) throw OverflowError("leaf sequence length exceeds 64 bits");
  return checked_mul(checked_mul(std::uint64_t{1} << h, d), static_cast<std::uint64_t>(binom));
}

LeafSequence::LeafSequence(const BalancedTD& tree, NodeId t, std::uint64_t d)
    : tree_(&tree), start_(t), d_(d), log_d_(exact_log2(d)) {
  if (!tree.decomposition().contains(t)) {
    throw PreconditionError("unknown node " + std::to_string(t));
  }
  const int width = log_d_ + 1;
  lengths_.assign(static_cast<std::size_t>(tree.size() + 1) * width, 0);
  // Node ids need not follow tree order, so children are filled first by
  // walking a breadth-first order backwards.
  std::vector<NodeId> order;
  order.push_back(tree.root());
  for (std::size_t head = 0; head < order.size(); ++head) {
    NodeId x = order[head];
    if (tree.left(x) != kNoNode) order.push_back(tree.left(x));
    if (tree.right(x) != kNoNode) order.push_back(tree.right(x));
  }
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    NodeId x = *it;
    std::uint64_t* row = &lengths_[static_cast<std::size_t>(x) * width];
    if (tree.is_leaf(x)) {
      for (int j = 0; j <= log_d_; ++j) row[j] = std::uint64_t{1} << j;
      continue;
    }
    row[0] = block(x, 0);
    for (int j = 1; j <= log_d_; ++j) {
      row[j] = checked_add(checked_mul(2, row[j - 1]), block(x, j));
    }
  }
}

std::uint64_t LeafSequence::length_of(NodeId x, int j) const {
  return lengths_[static_cast<std::size_t>(x) * (log_d_ + 1) + j];
}

std::uint64_t LeafSequence::block(NodeId x, int j) const {
  std::uint64_t total = 0;
  if (NodeId l = tree_->left(x); l != kNoNode) total = checked_add(total, length_of(l, j));
  if (NodeId r = tree_->right(x); r != kNoNode) total = checked_add(total, length_of(r, j));
  return total;
}

NodeId LeafSequence::descend(std::uint64_t r, std::vector<Step>* steps) const {
  if (r < 1 || r > length()) {
    throw PreconditionError("index " + std::to_string(r) + " is outside the leaf sequence of length " +
                            std::to_string(length()));
  }
  NodeId x = start_;
  int s = log_d_;
  while (true) {
    if (steps) steps->push_back({x, std::uint64_t{1} << s, r});
    if (tree_->is_leaf(x)) return x;
    // Locate the block of σ_s that holds r, using the halves
    // σ_s = σ_{j-1} ⋄ <2^j> ⋄ σ_{j-1} at each level j.
    int j = s;
    while (j > 0) {
      std::uint64_t half = length_of(x, j - 1);
      if (r <= half) {
        --j;
        continue;
      }
      r -= half;
      std::uint64_t middle = block(x, j);
      if (r <= middle) break;
      r -= middle;
      --j;
    }
    NodeId l = tree_->left(x);
    std::uint64_t left_len = l == kNoNode ? 0 : length_of(l, j);
    if (r <= left_len) {
      x = l;
    } else {
      r -= left_len;
      x = tree_->right(x);
    }
    s = j;
  }
}

NodeId LeafSequence::element(std::uint64_t r) const { return descend(r, nullptr); }

std::vector<LeafSequence::Step> LeafSequence::trace(std::uint64_t r) const {
  std::vector<Step> steps;
  descend(r, &steps);
  return steps;
}

std::uint64_t LeafSequence::for_each(const std::function<bool(NodeId)>& visit) const {
  std::uint64_t count = 0;
  bool running = true;
  // emit(x, j) streams Lseq(x, 2^j); sigma(x, j) streams the pairs of child
  // sequences indexed by σ_j.
  std::function<void(NodeId, int)> emit;
  std::function<void(NodeId, int)> sigma = [&](NodeId x, int j) {
    if (j > 0) sigma(x, j - 1);
    if (!running) return;
    if (NodeId l = tree_->left(x); l != kNoNode) emit(l, j);
    if (!running) return;
    if (NodeId r = tree_->right(x); r != kNoNode) emit(r, j);
    if (!running) return;
    if (j > 0) sigma(x, j - 1);
  };
  emit = [&](NodeId x, int j) {
    if (tree_->is_leaf(x)) {
      for (std::uint64_t i = 0; running && i < (std::uint64_t{1} << j); ++i) {
        ++count;
        running = visit(x);
      }
      return;
    }
    sigma(x, j);
  };
  emit(start_, log_d_);
  return count;
}

NodeId lseq_element(const BalancedTD& tree, NodeId t, std::uint64_t d, std::uint64_t r) {
  return LeafSequence(tree, t, d).element(r);
}

}  // namespace twreach
