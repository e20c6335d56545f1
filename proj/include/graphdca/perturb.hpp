#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <span>
#include <string>
#include <stdexcept>
#include <unordered_set>
#include <vector>

#include "graph.hpp"
#include "random.hpp"

namespace graphdca {

struct PerturbReport {
  Graph graph;
  std::size_t changed_edges = 0;
  double requested_fraction = 0.0;
  std::uint64_t seed = 0;
};

namespace detail {

inline std::uint64_t edge_key(const Edge& e) { return (std::uint64_t{e.u} << 32) | e.v; }

inline void check_fraction(double f)
{
  if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("fraction must lie in [0, 1]");
}

} // namespace detail

/// Degree-preserving double-edge swaps. Edge slots are visited in a shuffled
/// cyclic order; each unrewired slot tries a swap with a uniformly chosen
/// other edge, rejected if it would create a loop or a duplicate. Stops once
/// floor(fraction * |E|) slots have been rewired.
inline PerturbReport configuration_rewire(const Graph& g, double fraction, std::uint64_t seed)
{
  detail::check_fraction(fraction);
  const std::size_t m = g.num_edges();
  if (m < 2) throw std::invalid_argument("configuration_rewire needs at least 2 edges");
  const auto target = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(m)));
  PerturbReport report{g, 0, fraction, seed};
  if (target == 0) return report;

  auto rng = make_rng(seed);
  std::vector<Edge> edges = g.edges();
  std::unordered_set<std::uint64_t> present;
  present.reserve(2 * m);
  for (const auto& e : edges) present.insert(detail::edge_key(e));
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<char> rewired(m, 0);
  std::size_t done = 0;
  std::size_t attempts = 0;
  const std::size_t max_attempts = 100 * m;
  std::uniform_int_distribution<std::size_t> pick_other(0, m - 2);
  std::bernoulli_distribution coin(0.5);
  for (std::size_t pos = 0; done < target; pos = (pos + 1) % m) {
    const std::size_t i = order[pos];
    if (rewired[i]) continue;
    if (++attempts > max_attempts) throw std::runtime_error("rewiring stalled");
    std::size_t j = pick_other(rng);
    if (j >= i) ++j;
    Node a = edges[i].u;
    Node b = edges[i].v;
    Node c = edges[j].u;
    Node d = edges[j].v;
    if (coin(rng)) std::swap(c, d);
    // (a,b),(c,d) -> (a,c),(b,d)
    if (a == c || b == d) continue;
    const Edge e1(a, c);
    const Edge e2(b, d);
    if (e1 == e2 || present.contains(detail::edge_key(e1)) || present.contains(detail::edge_key(e2))) continue;
    present.erase(detail::edge_key(edges[i]));
    present.erase(detail::edge_key(edges[j]));
    present.insert(detail::edge_key(e1));
    present.insert(detail::edge_key(e2));
    edges[i] = e1;
    edges[j] = e2;
    for (auto slot : {i, j}) {
      if (!rewired[slot]) {
        rewired[slot] = 1;
        ++done;
      }
    }
  }
  report.graph = Graph(g.num_nodes(), std::move(edges));
  report.changed_edges = done;
  return report;
}

/// Edge-count arithmetic of one subgraph rewiring.
struct SubgraphRewirePlan {
  std::size_t total = 0;    // m_pm = floor(eta |E_H|)
  std::size_t removed = 0;  // m_minus
  std::size_t added = 0;    // m_plus
};

inline SubgraphRewirePlan plan_subgraph_rewire(std::size_t nodes, std::size_t edges, double eta)
{
  detail::check_fraction(eta);
  SubgraphRewirePlan plan;
  plan.total = static_cast<std::size_t>(std::floor(eta * static_cast<double>(edges)));
  const std::size_t non_tree = nodes == 0 ? 0 : edges - (nodes - 1);
  plan.removed = std::min(plan.total / 2, non_tree);
  plan.added = plan.total - plan.removed;
  return plan;
}

/// Rewires the subgraph induced by `members` without disconnecting it: a
/// random spanning tree is protected, m_minus non-tree edges are removed and
/// m_plus previously absent intra-subgraph edges are added.
inline PerturbReport subgraph_rewire(const Graph& g, const NodeSubset& members, double eta, std::uint64_t seed)
{
  if (members.parent_size != g.num_nodes()) throw std::invalid_argument("subset belongs to another graph");
  auto induced = induced_subgraph(g, members.members);
  const Graph& h = induced.graph;
  if (!is_connected(h)) throw std::invalid_argument("induced subgraph must be connected");
  const auto plan = plan_subgraph_rewire(h.num_nodes(), h.num_edges(), eta);
  PerturbReport report{g, 0, eta, seed};
  if (plan.total == 0) return report;

  const std::size_t n = h.num_nodes();
  const std::size_t absent = n * (n - 1) / 2 - h.num_edges();
  if (absent < plan.added) {
    throw std::runtime_error("subgraph too dense to add " + std::to_string(plan.added) + " edges");
  }

  auto rng = make_rng(seed);
  // random spanning tree: Kruskal over a shuffled edge order
  std::vector<Edge> local = h.edges();
  std::shuffle(local.begin(), local.end(), rng);
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<Edge> non_tree;
  for (const auto& e : local) {
    const auto ru = find(e.u);
    const auto rv = find(e.v);
    if (ru == rv) {
      non_tree.push_back(e);
    } else {
      parent[ru] = rv;
    }
  }
  for (std::size_t i = 0; i < plan.removed; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, non_tree.size() - 1);
    std::swap(non_tree[i], non_tree[pick(rng)]);
  }

  std::unordered_set<std::uint64_t> existing;
  for (const auto& e : h.edges()) existing.insert(detail::edge_key(e));
  std::vector<Edge> added;
  if (2 * plan.added > absent) {
    std::vector<Edge> candidates;
    for (Node a = 0; a < n; ++a) {
      for (Node b = a + 1; b < n; ++b) {
        if (!existing.contains(detail::edge_key(Edge(a, b)))) candidates.emplace_back(a, b);
      }
    }
    for (std::size_t i = 0; i < plan.added; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, candidates.size() - 1);
      std::swap(candidates[i], candidates[pick(rng)]);
      added.push_back(candidates[i]);
    }
  } else {
    std::uniform_int_distribution<Node> pick(0, static_cast<Node>(n - 1));
    while (added.size() < plan.added) {
      const Node a = pick(rng);
      const Node b = pick(rng);
      if (a == b) continue;
      const Edge e(a, b);
      if (existing.insert(detail::edge_key(e)).second) added.push_back(e);
    }
  }

  auto to_global = [&](const Edge& e) {
    return Edge(static_cast<Node>(induced.original_ids[e.u]), static_cast<Node>(induced.original_ids[e.v]));
  };
  std::unordered_set<std::uint64_t> removed;
  for (std::size_t i = 0; i < plan.removed; ++i) removed.insert(detail::edge_key(to_global(non_tree[i])));
  std::vector<Edge> edges;
  edges.reserve(g.num_edges() + plan.added);
  for (const auto& e : g.edges()) {
    if (!removed.contains(detail::edge_key(e))) edges.push_back(e);
  }
  for (const auto& e : added) edges.push_back(to_global(e));
  report.graph = Graph(g.num_nodes(), std::move(edges));
  report.changed_edges = plan.total;
  return report;
}

/// Applies subgraph_rewire to each subset in turn with derived seeds.
inline PerturbReport subgraph_rewire_all(const Graph& g, std::span<const NodeSubset> subsets, double eta,
                                         std::uint64_t seed)
{
  PerturbReport report{g, 0, eta, seed};
  for (std::size_t s = 0; s < subsets.size(); ++s) {
    auto step = subgraph_rewire(report.graph, subsets[s], eta, derive_seed(seed, {s}));
    report.graph = std::move(step.graph);
    report.changed_edges += step.changed_edges;
  }
  return report;
}

} // namespace graphdca
