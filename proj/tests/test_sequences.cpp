#include <algorithm>
#include <functional>

#include "doctest.h"
#include "oracles.hpp"
#include "twreach/errors.hpp"
#include "twreach/ktree.hpp"
#include "twreach/recursive_decomposition.hpp"
#include "twreach/sequences.hpp"

using namespace twreach;

TEST_CASE("useq_element examples") {
  CHECK(useq_element(0, 1) == 1);
  std::vector<std::uint64_t> s2;
  for (std::uint64_t k = 1; k <= 7; ++k) s2.push_back(useq_element(2, k));
  CHECK(s2 == std::vector<std::uint64_t>{1, 2, 1, 4, 1, 2, 1});
  CHECK(useq_element(2, 4) == 4);
  CHECK_THROWS_AS(useq_element(2, 0), PreconditionError);
  CHECK_THROWS_AS(useq_element(2, 8), PreconditionError);
}

TEST_CASE("useq_element matches the materialized recurrence and is a palindrome") {
  for (int s = 0; s <= 10; ++s) {
    std::vector<std::uint64_t> full = oracle::useq(s);
    REQUIRE(full.size() == useq_length(s));
    for (std::uint64_t k = 1; k <= full.size(); ++k) CHECK(useq_element(s, k) == full[k - 1]);
    CHECK(std::equal(full.begin(), full.end(), full.rbegin()));
  }
}

TEST_CASE("useq_counts") {
  CHECK(useq_counts(3, 0) == 8);
  CHECK(useq_counts(3, 3) == 1);
  CHECK_THROWS_AS(useq_counts(3, 4), PreconditionError);
  for (int s = 0; s <= 12; ++s) {
    std::uint64_t sum = 0;
    for (int i = 0; i <= s; ++i) sum += useq_counts(s, i);
    CHECK(sum == useq_length(s));
  }
}

TEST_CASE("dominating_subsequence examples") {
  CHECK(dominating_subsequence(2, {1, 1, 1, 1}) == std::vector<std::uint64_t>{1, 2, 3, 4});
  CHECK(dominating_subsequence(2, {3}) == std::vector<std::uint64_t>{4});
  CHECK(dominating_subsequence(2, {}) == std::vector<std::uint64_t>{});
  CHECK_FALSE(dominating_subsequence(1, {3}).has_value());
}

TEST_CASE("dominating_subsequence succeeds for every small composition") {
  for (int s = 0; s <= 4; ++s) {
    const std::uint64_t budget = std::uint64_t{1} << s;
    std::vector<std::uint64_t> demands;
    std::size_t checked = 0;
    std::function<void(std::uint64_t)> grow = [&](std::uint64_t left) {
      auto picks = dominating_subsequence(s, demands);
      REQUIRE(picks.has_value());
      for (std::size_t j = 0; j < demands.size(); ++j) {
        CHECK(useq_element(s, (*picks)[j]) >= demands[j]);
        if (j > 0) CHECK((*picks)[j] > (*picks)[j - 1]);
      }
      ++checked;
      for (std::uint64_t next = 1; next <= left; ++next) {
        demands.push_back(next);
        grow(left - next);
        demands.pop_back();
      }
    };
    grow(budget);
    CHECK(checked == std::uint64_t{1} << budget);  // all compositions of every m <= 2^s
  }
}

TEST_CASE("lseq_length values") {
  CHECK(lseq_length(0, 4) == 4);
  CHECK(lseq_length(1, 2) == 8);
  CHECK(lseq_length(2, 2) == 24);
  CHECK(oracle::lseq_recurrence(1, 2) == 8);
  CHECK(oracle::lseq_recurrence(2, 2) == 24);
  CHECK_THROWS_AS(lseq_length(2, 3), PreconditionError);
  CHECK(lseq_length(20, std::uint64_t{1} << 10) == (std::uint64_t{1} << 30) * 30045015ULL);
  CHECK_THROWS_AS(lseq_length(40, std::uint64_t{1} << 40), OverflowError);
}

TEST_CASE("closed form, recurrence and materialization agree on complete trees") {
  for (int h = 0; h <= 6; ++h) {
    BalancedTD tree = oracle::complete_tree(h);
    for (std::uint64_t d : {1, 2, 4, 8, 16}) {
      const std::uint64_t closed = lseq_length(h, d);
      CHECK(closed == oracle::lseq_recurrence(h, d));
      CHECK(LeafSequence(tree, 1, d).length() == closed);
      if (closed <= 2'000'000) {
        std::vector<NodeId> full;
        oracle::lseq_materialize(tree, 1, d, full);
        CHECK(full.size() == closed);
      }
    }
  }
}

TEST_CASE("height one example") {
  BalancedTD tree = oracle::complete_tree(1);
  const NodeId l = 2;
  const NodeId r = 3;
  LeafSequence seq(tree, 1, 2);
  std::vector<NodeId> got;
  for (std::uint64_t i = 1; i <= seq.length(); ++i) got.push_back(seq.element(i));
  CHECK(got == std::vector<NodeId>{l, r, l, l, r, r, l, r});
  CHECK(lseq_element(tree, 1, 2, 5) == r);
  CHECK(lseq_element(tree, 2, 4, 3) == l);
  CHECK_THROWS_AS(seq.element(9), PreconditionError);
  CHECK_THROWS_AS(seq.element(0), PreconditionError);
}

TEST_CASE("element and streaming agree with materialization on complete trees") {
  for (int h = 0; h <= 4; ++h) {
    BalancedTD tree = oracle::complete_tree(h);
    for (std::uint64_t d : {1, 2, 4, 8}) {
      for (NodeId t : {NodeId{1}, NodeId{2}}) {
        if (!tree.decomposition().contains(t)) continue;
        std::vector<NodeId> full;
        oracle::lseq_materialize(tree, t, d, full);
        LeafSequence seq(tree, t, d);
        REQUIRE(seq.length() == full.size());
        std::vector<NodeId> streamed;
        seq.for_each([&](NodeId f) {
          streamed.push_back(f);
          return true;
        });
        CHECK(streamed == full);
        for (std::uint64_t r = 1; r <= full.size(); ++r) {
          REQUIRE(seq.element(r) == full[r - 1]);
          for (const auto& step : seq.trace(r)) CHECK(step.r <= seq.length());
        }
      }
    }
  }
}

TEST_CASE("irregular balanced trees, including single-child nodes") {
  for (int i = 0; i < 40; ++i) {
    KTreeInstance inst = gen_ktree({6 + i, 1 + i % 3, static_cast<std::uint64_t>(i), 0.5});
    BalancedTD tree = build_balanced(inst.graph, inst.decomposition);
    for (std::uint64_t d : {1, 2, 4}) {
      std::vector<NodeId> full;
      oracle::lseq_materialize(tree, tree.root(), d, full);
      LeafSequence seq(tree, tree.root(), d);
      REQUIRE(seq.length() == full.size());
      CHECK(seq.length() <= lseq_length(tree.depth(), d));
      for (std::uint64_t r = 1; r <= full.size(); r += 1 + full.size() / 500) CHECK(seq.element(r) == full[r - 1]);
    }
  }
}

TEST_CASE("streaming stops when asked") {
  BalancedTD tree = oracle::complete_tree(3);
  LeafSequence seq(tree, 1, 4);
  std::uint64_t seen = 0;
  CHECK(seq.for_each([&](NodeId) { return ++seen < 10; }) == 10);
}
