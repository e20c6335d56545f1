#include <sstream>

#include <gtest/gtest.h>

#include <graphdca/groletest.hpp>

#include "oracles.hpp"

using namespace graphdca;

namespace {

std::string edge_text(const Graph& g)
{
  std::ostringstream s;
  write_edge_list(s, g);
  return s.str();
}

} // namespace

TEST(MakeMain, Cycle)
{
  auto g = make_main(MainKind::cycle, 1000, 7);
  EXPECT_EQ(g.num_nodes(), 1000u);
  EXPECT_EQ(g.num_edges(), 1000u);
  for (Node v = 0; v < 1000; ++v) EXPECT_EQ(g.degree(v), 2u);
}

TEST(MakeMain, TreeIsAcyclicAndConnected)
{
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = make_main(MainKind::tree, 5, seed);
    EXPECT_EQ(g.num_nodes(), 5u);
    EXPECT_EQ(g.num_edges(), 4u);
    EXPECT_TRUE(is_connected(g));
  }
}

TEST(MakeMain, TreeDeterministic)
{
  EXPECT_EQ(make_main(MainKind::tree, 50, 11), make_main(MainKind::tree, 50, 11));
  EXPECT_NE(make_main(MainKind::tree, 50, 11), make_main(MainKind::tree, 50, 12));
}

TEST(MakeMain, TooSmall) { EXPECT_THROW(make_main(MainKind::cycle, 2, 0), std::invalid_argument); }

TEST(MakeSubgraph, Star)
{
  auto s = make_subgraph(SubgraphKind::star, 12, 4);
  EXPECT_EQ(s.graph.num_nodes(), 12u);
  EXPECT_EQ(s.graph.num_edges(), 11u);
  EXPECT_EQ(s.graph.degree(s.center), 4u);
  EXPECT_EQ(oracle::triangles(s.graph), 0u);
}

TEST(MakeSubgraph, Diamond)
{
  auto s = make_subgraph(SubgraphKind::diamond, 12, 4);
  EXPECT_EQ(s.graph.num_edges(), 14u);
  EXPECT_EQ(s.graph.degree(0), 4u);
  EXPECT_EQ(s.graph.degree(11), 4u);
  EXPECT_EQ(oracle::triangles(s.graph), 0u);
}

TEST(MakeSubgraph, WheelRings)
{
  // 11 non-central nodes in 4 chains: rings of 4, 4 and 3 nodes
  auto s = make_subgraph(SubgraphKind::wheel, 12, 4);
  EXPECT_EQ(s.graph.degree(0), 4u);
  EXPECT_EQ(s.graph.num_edges(), 11u + 4u + 4u + 2u);
  EXPECT_TRUE(s.graph.has_edge(1, 4));
  EXPECT_TRUE(s.graph.has_edge(9, 10));
  EXPECT_TRUE(s.graph.has_edge(10, 11));
  EXPECT_FALSE(s.graph.has_edge(9, 11));  // incomplete ring stays a path
}

TEST(MakeSubgraph, FriendshipTriangles)
{
  for (std::size_t n : {12, 20, 40}) {
    for (std::size_t c : {2, 3, 4}) {
      auto s = make_subgraph(SubgraphKind::friendship, n, c);
      EXPECT_EQ(s.graph.degree(0), c);
      // ring-0 pairs plus parents holding two children
      const std::uint64_t expected = c / 2 + (n - 1 - c) / 2;
      EXPECT_EQ(oracle::triangles(s.graph), expected) << "n=" << n << " c=" << c;
    }
  }
}

TEST(MakeSubgraph, RandomKind)
{
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto s = make_subgraph(SubgraphKind::random, 40, 4, seed, 46);
    EXPECT_EQ(s.graph.num_nodes(), 40u);
    EXPECT_TRUE(is_connected(s.graph));
    EXPECT_EQ(s.graph.degree(0), 4u);
  }
  EXPECT_EQ(make_subgraph(SubgraphKind::random, 40, 4, 3, 46).graph,
            make_subgraph(SubgraphKind::random, 40, 4, 3, 46).graph);
}

TEST(MakeSubgraph, RandomCapacity)
{
  // 5 non-central nodes hold at most 10 edges
  EXPECT_NO_THROW(make_subgraph(SubgraphKind::random, 6, 2, 0, 10));
  EXPECT_THROW(make_subgraph(SubgraphKind::random, 6, 2, 0, 11), std::invalid_argument);
}

TEST(MakeSubgraph, TooFewNodes) { EXPECT_THROW(make_subgraph(SubgraphKind::star, 5, 4), std::invalid_argument); }

TEST(MakeSubgraph, ContractOverKindsAndSizes)
{
  for (auto kind : kAllSubgraphKinds) {
    for (std::size_t c = 1; c <= 5; ++c) {
      for (std::size_t n = c + 2; n <= 30; n += 3) {
        auto s = make_subgraph(kind, n, c, n * 31 + c, std::min<std::size_t>(5, (n - 1) * (n - 2) / 2));
        EXPECT_EQ(s.graph.num_nodes(), n);
        EXPECT_EQ(s.graph.degree(0), c) << to_string(kind) << " n=" << n << " c=" << c;
        EXPECT_TRUE(is_connected(s.graph));
      }
    }
  }
}

TEST(Assemble, FullPreset)
{
  auto cfg = GroletestConfig::full();
  for (auto kind : kAllSubgraphKinds) {
    cfg.sub_kind = kind;
    auto lg = assemble(cfg);
    EXPECT_EQ(lg.graph.num_nodes(), 1800u);
    EXPECT_TRUE(is_connected(lg.graph));
    EXPECT_EQ(lg.central_nodes.size(), 20u);
    EXPECT_EQ(lg.subgraph_members.size(), 20u);
    EXPECT_EQ(lg.main_members.size(), 1000u);
  }
}

TEST(Assemble, SubgraphEdgesPreservedAndPartition)
{
  auto cfg = GroletestConfig::desk();
  cfg.seed = 9;
  for (auto kind : kAllSubgraphKinds) {
    cfg.sub_kind = kind;
    auto lg = assemble(cfg);
    std::vector<int> owner(lg.graph.num_nodes(), 0);
    for (Node v : lg.main_members.members) ++owner[v];
    for (std::size_t s = 0; s < lg.subgraph_members.size(); ++s) {
      const auto& members = lg.subgraph_members[s].members;
      for (Node v : members) ++owner[v];
      auto sub = make_subgraph(kind, cfg.sub_size, cfg.central_degree, derive_seed(cfg.seed, {1, s}),
                               cfg.random_extra_edges);
      for (const auto& e : sub.graph.edges()) {
        EXPECT_TRUE(lg.graph.has_edge(members[e.u], members[e.v]));
      }
      EXPECT_EQ(lg.central_nodes.members[s], members[sub.center]);
      // center degree before insertion
      EXPECT_EQ(sub.graph.degree(sub.center), cfg.central_degree);
    }
    for (int o : owner) EXPECT_EQ(o, 1);
  }
}

TEST(Assemble, AttachmentEdgeCount)
{
  auto cfg = GroletestConfig::desk();
  cfg.sub_kind = SubgraphKind::star;
  auto lg = assemble(cfg);
  // main cycle + star subgraphs + distinct attachments
  EXPECT_EQ(lg.graph.num_edges(), cfg.main_size + cfg.num_subgraphs * (cfg.sub_size - 1 + cfg.attach_edges));
}

TEST(Assemble, Deterministic)
{
  auto cfg = GroletestConfig::desk();
  cfg.sub_kind = SubgraphKind::random;
  cfg.main_kind = MainKind::tree;
  cfg.seed = 1234;
  EXPECT_EQ(edge_text(assemble(cfg).graph), edge_text(assemble(cfg).graph));
  auto other = cfg;
  other.seed = 1235;
  EXPECT_NE(edge_text(assemble(cfg).graph), edge_text(assemble(other).graph));
}

TEST(Assemble, InvalidConfig)
{
  auto cfg = GroletestConfig::desk();
  cfg.sub_size = 5;
  EXPECT_THROW(assemble(cfg), std::invalid_argument);
  cfg = GroletestConfig::desk();
  cfg.num_subgraphs = 0;
  EXPECT_THROW(assemble(cfg), std::invalid_argument);
}

TEST(Weighting, Central)
{
  auto lg = assemble(GroletestConfig::full());
  auto w = central_weighting(lg);
  EXPECT_EQ(w.size(), 1800u);
  EXPECT_EQ(std::count(w.begin(), w.end(), 1.0), 20);
  EXPECT_EQ(std::count(w.begin(), w.end(), 0.0), 1780);
}

TEST(Weighting, UniformAndEmptyCentral)
{
  auto w = uniform_weighting(7);
  EXPECT_EQ(w, std::vector<double>(7, 1.0));
  LabeledGraph lg{Graph(4, {}), NodeSubset({}, 4), {}, NodeSubset({}, 4)};
  EXPECT_EQ(central_weighting(lg), std::vector<double>(4, 0.0));
}
