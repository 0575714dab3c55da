#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace twreach {

/// Graph vertex, 1-based.
using Vertex = std::int32_t;

/// Tree decomposition node, 1-based. `kNoNode` marks an absent node.
using NodeId = std::int32_t;
inline constexpr NodeId kNoNode = 0;

/// Sorted, duplicate-free list of vertices. Set equality is list equality.
class VertexSet {
 public:
  using const_iterator = std::vector<Vertex>::const_iterator;

  VertexSet() = default;
  VertexSet(std::initializer_list<Vertex> vs);
  explicit VertexSet(std::vector<Vertex> vs);

  /// Adopts `vs` without sorting; caller guarantees strict ascending order.
  static VertexSet from_sorted(std::vector<Vertex> vs);

  /// All vertices in [first, last].
  static VertexSet interval(Vertex first, Vertex last);

  bool contains(Vertex v) const;
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  Vertex operator[](std::size_t i) const { return items_[i]; }
  Vertex front() const { return items_.front(); }
  Vertex back() const { return items_.back(); }
  const_iterator begin() const noexcept { return items_.begin(); }
  const_iterator end() const noexcept { return items_.end(); }
  const std::vector<Vertex>& values() const noexcept { return items_; }

  friend bool operator==(const VertexSet&, const VertexSet&) = default;
  friend auto operator<=>(const VertexSet&, const VertexSet&) = default;

 private:
  std::vector<Vertex> items_;
};

VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
bool is_subset(const VertexSet& a, const VertexSet& b);
bool intersects(const VertexSet& a, const VertexSet& b);

/// "{1,2,3}".
std::string to_string(const VertexSet& s);

}  // namespace twreach
