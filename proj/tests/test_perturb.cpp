#include <random>

#include <gtest/gtest.h>

#include <graphdca/global_stats.hpp>
#include <graphdca/groletest.hpp>
#include <graphdca/perturb.hpp>

#include "oracles.hpp"

using namespace graphdca;

namespace {

Graph cycle(std::size_t n)
{
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(static_cast<Node>(i), static_cast<Node>((i + 1) % n));
  return Graph(n, e);
}

std::vector<std::size_t> degrees(const Graph& g)
{
  std::vector<std::size_t> d(g.num_nodes());
  for (Node v = 0; v < g.num_nodes(); ++v) d[v] = g.degree(v);
  return d;
}

NodeSubset all_nodes(const Graph& g)
{
  std::vector<Node> m(g.num_nodes());
  std::iota(m.begin(), m.end(), 0);
  return NodeSubset(m, g.num_nodes());
}

} // namespace

TEST(ConfigurationRewire, FractionZeroIsIdentity)
{
  auto g = cycle(10);
  auto r = configuration_rewire(g, 0.0, 1);
  EXPECT_EQ(r.graph, g);
  EXPECT_EQ(r.changed_edges, 0u);
}

TEST(ConfigurationRewire, PreservesEveryDegree)
{
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = oracle::random_connected_graph(40, 0.08, rng);
    for (double f : {0.1, 0.5, 1.0}) {
      auto r = configuration_rewire(g, f, static_cast<std::uint64_t>(trial));
      EXPECT_EQ(degrees(r.graph), degrees(g));
      EXPECT_EQ(r.graph.num_edges(), g.num_edges());
      EXPECT_GE(r.changed_edges, static_cast<std::size_t>(std::floor(f * static_cast<double>(g.num_edges()))));
      for (Node v = 0; v < r.graph.num_nodes(); ++v) {
        for (Node w : r.graph.neighbors(v)) EXPECT_NE(v, w);
      }
    }
  }
}

TEST(ConfigurationRewire, CycleFullyRewired)
{
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto r = configuration_rewire(cycle(6), 1.0, seed);
    EXPECT_EQ(r.graph.num_edges(), 6u);
    EXPECT_EQ(degrees(r.graph), std::vector<std::size_t>(6, 2));
  }
}

TEST(ConfigurationRewire, Deterministic)
{
  auto lg = assemble(GroletestConfig::desk());
  EXPECT_EQ(configuration_rewire(lg.graph, 0.3, 5).graph, configuration_rewire(lg.graph, 0.3, 5).graph);
}

TEST(ConfigurationRewire, Errors)
{
  EXPECT_THROW(configuration_rewire(Graph(2, {Edge(0, 1)}), 0.5, 0), std::invalid_argument);
  EXPECT_THROW(configuration_rewire(cycle(5), 1.5, 0), std::invalid_argument);
  EXPECT_THROW(configuration_rewire(cycle(5), -0.1, 0), std::invalid_argument);
  // K4 admits no degree-preserving swap
  Graph k4(4, {Edge(0, 1), Edge(0, 2), Edge(0, 3), Edge(1, 2), Edge(1, 3), Edge(2, 3)});
  EXPECT_THROW(configuration_rewire(k4, 0.5, 0), std::runtime_error);
}

TEST(ConfigurationRewire, DegreeStatisticsUnchanged)
{
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 5; ++trial) {
    auto g = oracle::random_connected_graph(30, 0.1, rng);
    auto r = configuration_rewire(g, 0.5, static_cast<std::uint64_t>(trial));
    auto t = gstats_terms(compute_stats(g), compute_stats(r.graph));
    EXPECT_EQ(t[0], 1.0);
    EXPECT_EQ(t[4], 1.0);
  }
}

TEST(SubgraphRewire, PlanArithmetic)
{
  auto p = plan_subgraph_rewire(12, 14, 0.5);
  EXPECT_EQ(p.total, 7u);
  EXPECT_EQ(p.removed, 3u);
  EXPECT_EQ(p.added, 4u);
  // a tree has no removable edges
  p = plan_subgraph_rewire(12, 11, 1.0);
  EXPECT_EQ(p.removed, 0u);
  EXPECT_EQ(p.added, 11u);
}

TEST(SubgraphRewire, ZeroChangesIsIdentity)
{
  auto g = cycle(8);
  auto r = subgraph_rewire(g, all_nodes(g), 0.1, 3);
  EXPECT_EQ(r.graph, g);
  EXPECT_EQ(r.changed_edges, 0u);
}

TEST(SubgraphRewire, TriangleTooDense)
{
  Graph tri(3, {Edge(0, 1), Edge(1, 2), Edge(0, 2)});
  EXPECT_THROW(subgraph_rewire(tri, all_nodes(tri), 1.0, 0), std::runtime_error);
}

TEST(SubgraphRewire, DisconnectedSubsetRejected)
{
  Graph g(4, {Edge(0, 1), Edge(1, 2), Edge(2, 3)});
  EXPECT_THROW(subgraph_rewire(g, NodeSubset({0, 3}, 4), 0.5, 0), std::invalid_argument);
}

TEST(SubgraphRewire, EditsStayInsideAndKeepConnectivity)
{
  auto cfg = GroletestConfig::desk();
  for (auto kind : {SubgraphKind::diamond, SubgraphKind::wheel, SubgraphKind::random}) {
    cfg.sub_kind = kind;
    auto lg = assemble(cfg);
    for (double eta : {0.05, 0.25, 1.0}) {
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const auto& h = lg.subgraph_members[seed];
        const auto before = induced_subgraph(lg.graph, h.members).graph;
        const auto plan = plan_subgraph_rewire(before.num_nodes(), before.num_edges(), eta);
        auto r = subgraph_rewire(lg.graph, h, eta, seed);
        EXPECT_EQ(r.graph.num_edges(), lg.graph.num_edges() - plan.removed + plan.added);
        EXPECT_EQ(r.changed_edges, plan.total);
        EXPECT_TRUE(is_connected(induced_subgraph(r.graph, h.members).graph));
        std::vector<char> inside(lg.graph.num_nodes(), 0);
        for (Node v : h.members) inside[v] = 1;
        for (const auto& e : lg.graph.edges()) {
          if (!(inside[e.u] && inside[e.v])) {
            EXPECT_TRUE(r.graph.has_edge(e.u, e.v));
          }
        }
        for (const auto& e : r.graph.edges()) {
          if (!(inside[e.u] && inside[e.v])) {
            EXPECT_TRUE(lg.graph.has_edge(e.u, e.v));
          }
        }
        EXPECT_EQ(subgraph_rewire(lg.graph, h, eta, seed).graph, r.graph);
      }
    }
  }
}

TEST(SubgraphRewire, AllSubgraphs)
{
  auto lg = assemble(GroletestConfig::desk());
  auto r = subgraph_rewire_all(lg.graph, lg.subgraph_members, 0.25, 9);
  std::size_t expected = 0;
  for (const auto& h : lg.subgraph_members) {
    auto sub = induced_subgraph(lg.graph, h.members).graph;
    expected += plan_subgraph_rewire(sub.num_nodes(), sub.num_edges(), 0.25).total;
  }
  EXPECT_EQ(r.changed_edges, expected);
  EXPECT_NE(r.graph, lg.graph);
}
