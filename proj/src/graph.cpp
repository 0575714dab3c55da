#include "twreach/graph.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "twreach/errors.hpp"

namespace twreach {

namespace {

void build_csr(Vertex n, const std::vector<Arc>& arcs, std::vector<std::size_t>& offsets,
               std::vector<Vertex>& targets) {
  offsets.assign(static_cast<std::size_t>(n) + 2, 0);
  for (const Arc& a : arcs) ++offsets[a.from + 1];
  for (std::size_t i = 1; i < offsets.size(); ++i) offsets[i] += offsets[i - 1];
  targets.resize(arcs.size());
  std::vector<std::size_t> cursor(offsets.begin(), offsets.end() - 1);
  for (const Arc& a : arcs) targets[cursor[a.from]++] = a.to;
}

}  // namespace

DiGraph::DiGraph(Vertex n, std::vector<Arc> arcs) : n_(n), arcs_(std::move(arcs)) {
  if (n < 0) throw PreconditionError("vertex count must be non-negative");
  for (const Arc& a : arcs_) {
    if (!contains(a.from) || !contains(a.to)) {
      throw PreconditionError("arc (" + std::to_string(a.from) + "," + std::to_string(a.to) +
                              ") has an endpoint outside [1, " + std::to_string(n) + "]");
    }
  }
  std::sort(arcs_.begin(), arcs_.end());
  arcs_.erase(std::unique(arcs_.begin(), arcs_.end()), arcs_.end());
  build_csr(n_, arcs_, out_offsets_, out_targets_);

  std::vector<Arc> sym;
  sym.reserve(2 * arcs_.size());
  for (const Arc& a : arcs_) {
    if (a.from == a.to) continue;
    sym.push_back(a);
    sym.push_back({a.to, a.from});
  }
  std::sort(sym.begin(), sym.end());
  sym.erase(std::unique(sym.begin(), sym.end()), sym.end());
  build_csr(n_, sym, und_offsets_, und_targets_);
}

std::span<const Vertex> DiGraph::out_neighbors(Vertex v) const {
  return {out_targets_.data() + out_offsets_[v], out_offsets_[v + 1] - out_offsets_[v]};
}

std::span<const Vertex> DiGraph::neighbors(Vertex v) const {
  return {und_targets_.data() + und_offsets_[v], und_offsets_[v + 1] - und_offsets_[v]};
}

bool DiGraph::has_arc(Vertex from, Vertex to) const {
  auto out = out_neighbors(from);
  return std::binary_search(out.begin(), out.end(), to);
}

// ---------------------------------------------------------------------------
// IO

namespace {

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
    if (j > i) tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

long long parse_int(std::string_view token, std::size_t line) {
  long long value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ParseError("non-integer token '" + std::string(token) + "'", line);
  }
  return value;
}

}  // namespace

DiGraph parse_graph(std::istream& in) {
  std::optional<long long> n;
  long long m = 0;
  std::vector<Arc> arcs;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    auto tokens = split_ws(raw);
    if (tokens.empty() || tokens[0] == "c") continue;
    if (tokens[0] == "p") {
      if (n) throw ParseError("duplicate header", line);
      if (tokens.size() != 4 || tokens[1] != "dgr") {
        throw ParseError("malformed header, expected 'p dgr <n> <m>'", line);
      }
      n = parse_int(tokens[2], line);
      m = parse_int(tokens[3], line);
      if (*n < 0 || m < 0) throw ParseError("negative count in header", line);
      continue;
    }
    if (!n) throw ParseError("missing header before arcs", line);
    if (tokens.size() != 2) throw ParseError("expected two endpoints", line);
    long long u = parse_int(tokens[0], line);
    long long v = parse_int(tokens[1], line);
    if (u < 1 || u > *n || v < 1 || v > *n) throw ParseError("endpoint out of range", line);
    arcs.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v)});
  }
  if (!n) throw ParseError("missing header", line + 1);
  if (static_cast<long long>(arcs.size()) != m) {
    throw ParseError("header declares " + std::to_string(m) + " arcs but " +
                         std::to_string(arcs.size()) + " were listed",
                     line + 1);
  }
  return DiGraph(static_cast<Vertex>(*n), std::move(arcs));
}

DiGraph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_graph(in);
}

void write_graph(std::ostream& out, const DiGraph& g) {
  out << "p dgr " << g.vertex_count() << ' ' << g.arc_count() << '\n';
  for (const Arc& a : g.arcs()) out << a.from << ' ' << a.to << '\n';
}

std::string graph_to_text(const DiGraph& g) {
  std::ostringstream out;
  write_graph(out, g);
  return out.str();
}

// ---------------------------------------------------------------------------
// Connectivity

std::vector<VertexSet> undirected_components(const DiGraph& g, const VertexSet& removed) {
  const Vertex n = g.vertex_count();
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  for (Vertex v : removed) {
    if (g.contains(v)) seen[v] = 1;
  }
  std::vector<VertexSet> components;
  std::vector<Vertex> stack;
  for (Vertex s = 1; s <= n; ++s) {
    if (seen[s]) continue;
    std::vector<Vertex> members{s};
    seen[s] = 1;
    stack.push_back(s);
    while (!stack.empty()) {
      Vertex x = stack.back();
      stack.pop_back();
      for (Vertex y : g.neighbors(x)) {
        if (!seen[y]) {
          seen[y] = 1;
          members.push_back(y);
          stack.push_back(y);
        }
      }
    }
    components.push_back(VertexSet(std::move(members)));
  }
  return components;
}

VertexSet component_containing(const DiGraph& g, const VertexSet& z, Vertex r) {
  if (!g.contains(r)) throw PreconditionError("representative " + std::to_string(r) + " out of range");
  if (z.contains(r)) {
    throw PreconditionError("invalid representative: " + std::to_string(r) + " lies in " + to_string(z));
  }
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
  for (Vertex v : z) {
    if (g.contains(v)) seen[v] = 1;
  }
  std::vector<Vertex> members{r};
  seen[r] = 1;
  for (std::size_t head = 0; head < members.size(); ++head) {
    for (Vertex y : g.neighbors(members[head])) {
      if (!seen[y]) {
        seen[y] = 1;
        members.push_back(y);
      }
    }
  }
  return VertexSet(std::move(members));
}

bool bfs_reachable(const DiGraph& g, Vertex u, Vertex v) {
  if (!g.contains(u) || !g.contains(v)) throw PreconditionError("query vertex out of range");
  if (u == v) return true;
  std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()) + 1, 0);
  std::vector<Vertex> queue{u};
  seen[u] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (Vertex y : g.out_neighbors(queue[head])) {
      if (y == v) return true;
      if (!seen[y]) {
        seen[y] = 1;
        queue.push_back(y);
      }
    }
  }
  return false;
}

}  // namespace twreach
