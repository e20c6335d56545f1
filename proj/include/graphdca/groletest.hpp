#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "graph.hpp"
#include "random.hpp"

namespace graphdca {

enum class MainKind { cycle, tree };
enum class SubgraphKind { star, wheel, diamond, friendship, random };

inline constexpr std::array<SubgraphKind, 5> kAllSubgraphKinds = {
    SubgraphKind::star, SubgraphKind::wheel, SubgraphKind::diamond,
    SubgraphKind::friendship, SubgraphKind::random};

inline std::string_view to_string(MainKind k) { return k == MainKind::cycle ? "cycle" : "tree"; }

inline std::string_view to_string(SubgraphKind k)
{
  switch (k) {
    case SubgraphKind::star: return "star";
    case SubgraphKind::wheel: return "wheel";
    case SubgraphKind::diamond: return "diamond";
    case SubgraphKind::friendship: return "friendship";
    case SubgraphKind::random: return "random";
  }
  return "?";
}

inline MainKind parse_main_kind(std::string_view s)
{
  if (s == "cycle") return MainKind::cycle;
  if (s == "tree") return MainKind::tree;
  throw std::invalid_argument("unknown main graph kind: " + std::string(s));
}

inline SubgraphKind parse_subgraph_kind(std::string_view s)
{
  for (auto k : kAllSubgraphKinds) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown subgraph kind: " + std::string(s));
}

struct GroletestConfig {
  MainKind main_kind = MainKind::cycle;
  std::size_t main_size = 1000;
  SubgraphKind sub_kind = SubgraphKind::star;
  std::size_t num_subgraphs = 20;
  std::size_t sub_size = 40;
  std::size_t central_degree = 4;
  std::size_t attach_edges = 4;
  std::size_t random_extra_edges = 46;
  std::uint64_t seed = 0;

  /// 1000-node main graph, 20 subgraphs of 40 nodes: 1800 nodes in total.
  static GroletestConfig full() { return {}; }

  /// Reduced size for quick runs: 200 + 8 x 20 nodes.
  static GroletestConfig desk()
  {
    GroletestConfig c;
    c.main_size = 200;
    c.num_subgraphs = 8;
    c.sub_size = 20;
    c.random_extra_edges = 22;
    return c;
  }

  std::size_t total_nodes() const { return main_size + num_subgraphs * sub_size; }

  void validate() const
  {
    if (main_size < 3) throw std::invalid_argument("main_size must be >= 3");
    if (num_subgraphs == 0 || sub_size == 0 || central_degree == 0 || attach_edges == 0) {
      throw std::invalid_argument("groletest counts must be positive");
    }
    if (sub_size < central_degree + 2) {
      throw std::invalid_argument("sub_size must be >= central_degree + 2");
    }
    if (attach_edges > sub_size * main_size) {
      throw std::invalid_argument("more attachment edges than node pairs");
    }
  }
};

struct LabeledGraph {
  Graph graph;
  NodeSubset central_nodes;
  std::vector<NodeSubset> subgraph_members;
  NodeSubset main_members;
};

inline Graph make_main(MainKind kind, std::size_t n, std::uint64_t seed)
{
  if (n < 3) throw std::invalid_argument("main graph needs at least 3 nodes");
  std::vector<Edge> edges;
  edges.reserve(n);
  if (kind == MainKind::cycle) {
    for (std::size_t i = 0; i < n; ++i) {
      edges.emplace_back(static_cast<Node>(i), static_cast<Node>((i + 1) % n));
    }
  } else {
    auto rng = make_rng(seed);
    for (std::size_t i = 1; i < n; ++i) {
      std::uniform_int_distribution<std::size_t> pick(0, i - 1);
      edges.emplace_back(static_cast<Node>(i), static_cast<Node>(pick(rng)));
    }
  }
  return Graph(n, std::move(edges));
}

struct Subgraph {
  Graph graph;
  Node center = 0;
};

namespace detail {

/// Node ids of `count` nodes starting at `first`, dealt round-robin into `chains`.
inline std::vector<std::vector<Node>> round_robin_chains(Node first, std::size_t count, std::size_t chains)
{
  std::vector<std::vector<Node>> out(chains);
  for (std::size_t i = 0; i < count; ++i) out[i % chains].push_back(static_cast<Node>(first + i));
  return out;
}

inline void link_chains(const std::vector<std::vector<Node>>& chains, std::vector<Edge>& edges)
{
  for (const auto& chain : chains) {
    if (chain.empty()) continue;
    edges.emplace_back(0, chain.front());
    for (std::size_t i = 1; i < chain.size(); ++i) edges.emplace_back(chain[i - 1], chain[i]);
  }
}

inline Subgraph random_subgraph(std::size_t n, std::size_t c, std::uint64_t seed, std::size_t extra)
{
  const std::size_t others = n - 1;
  const std::size_t capacity = others * (others - 1) / 2;
  if (extra > capacity) throw std::invalid_argument("random_extra_edges exceeds simple-graph capacity");
  auto rng = make_rng(seed);
  std::vector<Edge> edges;
  for (std::size_t i = 1; i <= c; ++i) edges.emplace_back(0, static_cast<Node>(i));

  // extra edges among nodes 1..n-1, without replacement
  if (2 * extra > capacity) {
    std::vector<Edge> all;
    all.reserve(capacity);
    for (Node a = 1; a < n; ++a) {
      for (Node b = a + 1; b < n; ++b) all.emplace_back(a, b);
    }
    for (std::size_t i = 0; i < extra; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, all.size() - 1);
      std::swap(all[i], all[pick(rng)]);
      edges.push_back(all[i]);
    }
  } else {
    std::unordered_set<std::uint64_t> taken;
    std::uniform_int_distribution<Node> pick(1, static_cast<Node>(n - 1));
    while (taken.size() < extra) {
      Node a = pick(rng);
      Node b = pick(rng);
      if (a == b) continue;
      Edge e(a, b);
      if (taken.insert((std::uint64_t{e.u} << 32) | e.v).second) edges.push_back(e);
    }
  }

  // join every component to the center's component through non-central nodes
  Graph partial(n, edges);
  std::size_t count = 0;
  auto comp = connected_components(partial, &count);
  std::vector<Node> joined;  // non-central members of the center's component
  for (Node v = 1; v < n; ++v) {
    if (comp[v] == comp[0]) joined.push_back(v);
  }
  for (std::size_t k = 0; k < count; ++k) {
    if (k == comp[0]) continue;
    std::vector<Node> members;
    for (Node v = 1; v < n; ++v) {
      if (comp[v] == k) members.push_back(v);
    }
    std::uniform_int_distribution<std::size_t> pick_member(0, members.size() - 1);
    std::uniform_int_distribution<std::size_t> pick_joined(0, joined.size() - 1);
    const Node from = members[pick_member(rng)];
    const Node to = joined[pick_joined(rng)];
    edges.emplace_back(from, to);
    joined.insert(joined.end(), members.begin(), members.end());
  }
  return {Graph(n, std::move(edges)), 0};
}

} // namespace detail

/// One subgraph of `n` nodes whose center (node 0) has degree `c`.
/// Only the random kind uses `seed` and `extra_edges`.
inline Subgraph make_subgraph(SubgraphKind kind, std::size_t n, std::size_t c,
                              std::uint64_t seed = 0, std::size_t extra_edges = 0)
{
  if (c == 0) throw std::invalid_argument("central degree must be positive");
  if (n < c + 2) throw std::invalid_argument("subgraph needs n >= c + 2");
  std::vector<Edge> edges;
  switch (kind) {
    case SubgraphKind::star: {
      detail::link_chains(detail::round_robin_chains(1, n - 1, c), edges);
      break;
    }
    case SubgraphKind::wheel: {
      auto chains = detail::round_robin_chains(1, n - 1, c);
      detail::link_chains(chains, edges);
      // ring i holds the i-th node of every chain
      for (std::size_t ring = 0; ring < chains.front().size(); ++ring) {
        std::vector<Node> members;
        for (const auto& chain : chains) {
          if (ring < chain.size()) members.push_back(chain[ring]);
        }
        for (std::size_t i = 1; i < members.size(); ++i) edges.emplace_back(members[i - 1], members[i]);
        if (members.size() == c && c >= 3) edges.emplace_back(members.back(), members.front());
      }
      break;
    }
    case SubgraphKind::diamond: {
      const auto terminal = static_cast<Node>(n - 1);
      auto chains = detail::round_robin_chains(1, n - 2, c);
      detail::link_chains(chains, edges);
      for (const auto& chain : chains) edges.emplace_back(chain.back(), terminal);
      break;
    }
    case SubgraphKind::friendship: {
      std::vector<Node> parents;  // queue of nodes that may still take children
      for (Node v = 1; v <= c; ++v) {
        edges.emplace_back(0, v);
        parents.push_back(v);
      }
      for (Node v = 1; v + 1 <= c; v += 2) edges.emplace_back(v, v + 1);
      std::size_t head = 0;
      Node next = static_cast<Node>(c + 1);
      while (next < n) {
        const Node parent = parents[head++];
        const Node first = next++;
        edges.emplace_back(parent, first);
        parents.push_back(first);
        if (next < n) {
          const Node second = next++;
          edges.emplace_back(parent, second);
          edges.emplace_back(first, second);
          parents.push_back(second);
        }
      }
      break;
    }
    case SubgraphKind::random:
      return detail::random_subgraph(n, c, seed, extra_edges);
  }
  return {Graph(n, std::move(edges)), 0};
}

/// Main graph plus `num_subgraphs` inserted subgraphs. Subgraph s occupies
/// ids [main_size + s*sub_size, main_size + (s+1)*sub_size).
inline LabeledGraph assemble(const GroletestConfig& cfg)
{
  cfg.validate();
  const std::size_t total = cfg.total_nodes();
  Graph main = make_main(cfg.main_kind, cfg.main_size, derive_seed(cfg.seed, {0}));
  std::vector<Edge> edges(main.edges().begin(), main.edges().end());

  auto rng = make_rng(derive_seed(cfg.seed, {2}));
  std::uniform_int_distribution<Node> pick_main(0, static_cast<Node>(cfg.main_size - 1));
  std::uniform_int_distribution<Node> pick_sub(0, static_cast<Node>(cfg.sub_size - 1));

  std::vector<Node> centers;
  std::vector<NodeSubset> members;
  for (std::size_t s = 0; s < cfg.num_subgraphs; ++s) {
    const auto offset = static_cast<Node>(cfg.main_size + s * cfg.sub_size);
    auto sub = make_subgraph(cfg.sub_kind, cfg.sub_size, cfg.central_degree,
                             derive_seed(cfg.seed, {1, s}), cfg.random_extra_edges);
    for (const auto& e : sub.graph.edges()) edges.emplace_back(e.u + offset, e.v + offset);
    centers.push_back(offset + sub.center);

    std::vector<Edge> attached;
    while (attached.size() < cfg.attach_edges) {
      const Node inside = offset + pick_sub(rng);
      const Node outside = pick_main(rng);
      Edge e(inside, outside);
      if (std::find(attached.begin(), attached.end(), e) == attached.end()) attached.push_back(e);
    }
    edges.insert(edges.end(), attached.begin(), attached.end());

    std::vector<Node> block(cfg.sub_size);
    std::iota(block.begin(), block.end(), offset);
    members.emplace_back(std::move(block), total);
  }

  std::vector<Node> main_ids(cfg.main_size);
  std::iota(main_ids.begin(), main_ids.end(), 0);
  return {Graph(total, std::move(edges)), NodeSubset(std::move(centers), total),
          std::move(members), NodeSubset(std::move(main_ids), total)};
}

/// Weight 1 on central nodes, 0 elsewhere.
inline std::vector<double> central_weighting(const LabeledGraph& lg)
{
  std::vector<double> w(lg.graph.num_nodes(), 0.0);
  for (Node c : lg.central_nodes.members) w[c] = 1.0;
  return w;
}

inline std::vector<double> uniform_weighting(std::size_t n) { return std::vector<double>(n, 1.0); }

} // namespace graphdca
