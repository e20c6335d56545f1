#pragma once

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <queue>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace graphdca {

using Node = std::uint32_t;

inline constexpr Node kUnreachable = std::numeric_limits<Node>::max();

/// Undirected edge stored with u < v.
struct Edge {
  Node u = 0;
  Node v = 0;

  Edge() = default;
  Edge(Node a, Node b) : u(std::min(a, b)), v(std::max(a, b)) {}

  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Simple undirected graph over nodes 0..n-1. Immutable after construction.
class Graph {
public:
  Graph() = default;

  /// Builds from edges over nodes [0, n). Self-loops and duplicates are dropped.
  Graph(std::size_t n, std::vector<Edge> edges) : adjacency_(n)
  {
    std::erase_if(edges, [](const Edge& e) { return e.u == e.v; });
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    for (const auto& e : edges) {
      if (e.v >= n) throw std::invalid_argument("edge endpoint out of range");
      adjacency_[e.u].push_back(e.v);
      adjacency_[e.v].push_back(e.u);
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
    edges_ = std::move(edges);
  }

  std::size_t num_nodes() const noexcept { return adjacency_.size(); }
  std::size_t num_edges() const noexcept { return edges_.size(); }
  bool empty() const noexcept { return adjacency_.empty(); }

  std::span<const Node> neighbors(Node v) const { return adjacency_.at(v); }
  std::size_t degree(Node v) const { return adjacency_.at(v).size(); }

  bool has_edge(Node a, Node b) const
  {
    const auto& nbrs = adjacency_.at(a);
    return std::binary_search(nbrs.begin(), nbrs.end(), b);
  }

  /// Sorted lexicographically, u < v within each edge.
  const std::vector<Edge>& edges() const noexcept { return edges_; }

  std::vector<std::size_t> degrees() const
  {
    std::vector<std::size_t> d(num_nodes());
    for (std::size_t v = 0; v < d.size(); ++v) d[v] = adjacency_[v].size();
    return d;
  }

  friend bool operator==(const Graph& a, const Graph& b)
  {
    return a.num_nodes() == b.num_nodes() && a.edges_ == b.edges_;
  }

private:
  std::vector<std::vector<Node>> adjacency_;
  std::vector<Edge> edges_;
};

/// A set of node ids of a parent graph.
struct NodeSubset {
  std::vector<Node> members;  // sorted, unique
  std::size_t parent_size = 0;

  NodeSubset() = default;
  NodeSubset(std::vector<Node> m, std::size_t parent) : members(std::move(m)), parent_size(parent)
  {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    if (!members.empty() && members.back() >= parent_size) {
      throw std::invalid_argument("subset member outside parent graph");
    }
  }

  std::size_t size() const noexcept { return members.size(); }
  bool contains(Node v) const { return std::binary_search(members.begin(), members.end(), v); }
};

/// A graph together with the original id of each of its nodes.
struct RelabeledGraph {
  Graph graph;
  std::vector<std::uint64_t> original_ids;  // original_ids[new id]
};

/// Builds a simple graph from arbitrary nonnegative id pairs. Ids are
/// relabeled by order of first appearance; loops and duplicates are dropped.
inline RelabeledGraph from_edge_list(std::span<const std::pair<std::int64_t, std::int64_t>> pairs)
{
  std::unordered_map<std::int64_t, Node> index;
  std::vector<std::uint64_t> original;
  auto id_of = [&](std::int64_t raw) {
    if (raw < 0) throw std::invalid_argument("negative node id " + std::to_string(raw));
    auto [it, inserted] = index.try_emplace(raw, static_cast<Node>(original.size()));
    if (inserted) original.push_back(static_cast<std::uint64_t>(raw));
    return it->second;
  };
  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  for (const auto& [a, b] : pairs) {
    Node u = id_of(a);
    Node v = id_of(b);
    edges.emplace_back(u, v);
  }
  return {Graph(original.size(), std::move(edges)), std::move(original)};
}

/// Unweighted shortest-path distances from `source`; kUnreachable elsewhere.
/// With `max_depth`, the search stops expanding past that distance.
inline std::vector<Node> bfs_distances(const Graph& g, Node source,
                                       Node max_depth = kUnreachable)
{
  if (source >= g.num_nodes()) throw std::invalid_argument("bfs source out of range");
  std::vector<Node> dist(g.num_nodes(), kUnreachable);
  std::vector<Node> frontier{source};
  dist[source] = 0;
  std::size_t head = 0;
  while (head < frontier.size()) {
    Node u = frontier[head++];
    if (dist[u] >= max_depth) continue;
    for (Node w : g.neighbors(u)) {
      if (dist[w] == kUnreachable) {
        dist[w] = dist[u] + 1;
        frontier.push_back(w);
      }
    }
  }
  return dist;
}

/// Component index per node, components numbered by smallest member.
inline std::vector<std::size_t> connected_components(const Graph& g, std::size_t* count = nullptr)
{
  constexpr auto unset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> comp(g.num_nodes(), unset);
  std::size_t next = 0;
  std::vector<Node> stack;
  for (Node s = 0; s < g.num_nodes(); ++s) {
    if (comp[s] != unset) continue;
    comp[s] = next;
    stack.push_back(s);
    while (!stack.empty()) {
      Node u = stack.back();
      stack.pop_back();
      for (Node w : g.neighbors(u)) {
        if (comp[w] == unset) {
          comp[w] = next;
          stack.push_back(w);
        }
      }
    }
    ++next;
  }
  if (count) *count = next;
  return comp;
}

inline bool is_connected(const Graph& g)
{
  std::size_t count = 0;
  connected_components(g, &count);
  return count <= 1;
}

/// Induced subgraph on `members`; new ids follow ascending old ids.
/// `original_ids` holds the old id of each new node.
inline RelabeledGraph induced_subgraph(const Graph& g, std::vector<Node> members)
{
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::unordered_map<Node, Node> local;
  local.reserve(members.size());
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] >= g.num_nodes()) throw std::invalid_argument("member out of range");
    local.emplace(members[i], static_cast<Node>(i));
  }
  std::vector<Edge> edges;
  for (Node u : members) {
    for (Node w : g.neighbors(u)) {
      if (u < w) {
        if (auto it = local.find(w); it != local.end()) edges.emplace_back(local[u], it->second);
      }
    }
  }
  return {Graph(members.size(), std::move(edges)),
          std::vector<std::uint64_t>(members.begin(), members.end())};
}

/// Largest connected component, relabeled contiguously (ascending old ids).
/// Ties go to the component containing the smallest node id.
inline RelabeledGraph preprocess(const Graph& g)
{
  if (g.empty()) return {};
  std::size_t count = 0;
  auto comp = connected_components(g, &count);
  std::vector<std::size_t> sizes(count, 0);
  for (auto c : comp) ++sizes[c];
  // components are numbered by smallest member, so max_element picks the tie-break
  auto best = static_cast<std::size_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());
  std::vector<Node> members;
  members.reserve(sizes[best]);
  for (Node v = 0; v < g.num_nodes(); ++v) {
    if (comp[v] == best) members.push_back(v);
  }
  return induced_subgraph(g, std::move(members));
}

/// Induced subgraph on all nodes within distance `radius` of `center`.
inline RelabeledGraph egonet(const Graph& g, Node center, Node radius)
{
  if (center >= g.num_nodes()) throw std::invalid_argument("egonet center out of range");
  if (radius < 1) throw std::invalid_argument("egonet radius must be >= 1");
  auto dist = bfs_distances(g, center, radius);
  std::vector<Node> members;
  for (Node v = 0; v < g.num_nodes(); ++v) {
    if (dist[v] <= radius) members.push_back(v);
  }
  return induced_subgraph(g, std::move(members));
}

// ---------------------------------------------------------------------------
// Edge-list text format: "u v" per line, '#' comments and blank lines ignored.

inline std::vector<std::pair<std::int64_t, std::int64_t>> parse_edge_list(std::istream& in)
{
  std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::int64_t a = 0;
    std::int64_t b = 0;
    std::string rest;
    if (!(fields >> a >> b) || (fields >> rest)) {
      throw std::invalid_argument("malformed edge on line " + std::to_string(lineno) + ": " + line);
    }
    pairs.emplace_back(a, b);
  }
  return pairs;
}

/// Reads an edge list. If the ids are exactly 0..n-1 they are kept as is,
/// so files written by write_edge_list round-trip to the identical graph;
/// otherwise ids are relabeled by first appearance.
inline RelabeledGraph read_edge_list(std::istream& in)
{
  auto pairs = parse_edge_list(in);
  std::int64_t max_id = -1;
  std::vector<bool> seen;
  for (const auto& [a, b] : pairs) {
    if (a < 0 || b < 0) throw std::invalid_argument("negative node id in edge list");
    max_id = std::max({max_id, a, b});
  }
  if (max_id >= 0 && static_cast<std::uint64_t>(max_id) < 4 * pairs.size() + 4) {
    seen.assign(static_cast<std::size_t>(max_id) + 1, false);
    for (const auto& [a, b] : pairs) {
      seen[static_cast<std::size_t>(a)] = true;
      seen[static_cast<std::size_t>(b)] = true;
    }
    if (std::all_of(seen.begin(), seen.end(), [](bool s) { return s; })) {
      std::vector<Edge> edges;
      edges.reserve(pairs.size());
      for (const auto& [a, b] : pairs) edges.emplace_back(static_cast<Node>(a), static_cast<Node>(b));
      std::vector<std::uint64_t> ids(seen.size());
      std::iota(ids.begin(), ids.end(), 0);
      return {Graph(seen.size(), std::move(edges)), std::move(ids)};
    }
  }
  return from_edge_list(pairs);
}

inline RelabeledGraph read_edge_list_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open edge list: " + path);
  return read_edge_list(in);
}

/// One "min max" line per edge, sorted lexicographically.
inline void write_edge_list(std::ostream& out, const Graph& g)
{
  for (const auto& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

inline void write_edge_list_file(const std::string& path, const Graph& g)
{
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write edge list: " + path);
  write_edge_list(out, g);
}

} // namespace graphdca
