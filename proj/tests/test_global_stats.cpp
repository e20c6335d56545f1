#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include <graphdca/global_stats.hpp>

#include "oracles.hpp"

using namespace graphdca;

namespace {

Graph complete(std::size_t n)
{
  std::vector<Edge> e;
  for (Node a = 0; a < n; ++a)
    for (Node b = a + 1; b < n; ++b) e.emplace_back(a, b);
  return Graph(n, e);
}

Graph cycle(std::size_t n)
{
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(static_cast<Node>(i), static_cast<Node>((i + 1) % n));
  return Graph(n, e);
}

Graph path(std::size_t n)
{
  std::vector<Edge> e;
  for (Node i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

Graph star(std::size_t leaves)
{
  std::vector<Edge> e;
  for (Node i = 1; i <= leaves; ++i) e.emplace_back(0, i);
  return Graph(leaves + 1, e);
}

StatVector some_stats()
{
  StatVector s;
  s.max_degree = 5;
  s.assortativity = -0.2;
  s.triangle_count = 4;
  s.square_count = 2;
  s.power_law_exp = 2.5;
  s.clustering_coeff = 0.3;
  s.char_path_len = 3.1;
  return s;
}

} // namespace

TEST(MaxDegree, Examples)
{
  EXPECT_EQ(max_degree(star(5)), 5u);
  EXPECT_EQ(max_degree(cycle(6)), 2u);
  EXPECT_THROW(max_degree(Graph()), std::invalid_argument);
}

TEST(Assortativity, Examples)
{
  EXPECT_DOUBLE_EQ(assortativity(star(3)).value, -1.0);
  auto c5 = assortativity(cycle(5));
  EXPECT_EQ(c5.value, 0.0);
  EXPECT_TRUE(c5.degenerate);
  EXPECT_NEAR(assortativity(path(4)).value, -0.5, 1e-12);
  EXPECT_FALSE(assortativity(path(4)).degenerate);
  EXPECT_THROW(assortativity(Graph(3, {})), std::invalid_argument);
}

TEST(Motifs, Examples)
{
  EXPECT_EQ(triangle_count(complete(4)), 4u);
  EXPECT_EQ(square_count(complete(4)), 3u);
  EXPECT_EQ(triangle_count(cycle(6)), 0u);
  EXPECT_EQ(square_count(cycle(6)), 0u);
  Graph chorded(4, {Edge(0, 1), Edge(1, 2), Edge(2, 3), Edge(3, 0), Edge(0, 2)});
  EXPECT_EQ(triangle_count(chorded), 2u);
  EXPECT_EQ(square_count(chorded), 1u);
  EXPECT_EQ(oracle::triangles(chorded), 2u);
  EXPECT_EQ(oracle::squares(chorded), 1u);
  EXPECT_EQ(square_count(complete(5)), 15u);
}

TEST(Clustering, Examples)
{
  EXPECT_DOUBLE_EQ(clustering_coeff(complete(3)), 1.0);
  EXPECT_DOUBLE_EQ(clustering_coeff(path(3)), 0.0);
  Graph paw(4, {Edge(0, 1), Edge(1, 2), Edge(0, 2), Edge(2, 3)});
  EXPECT_NEAR(clustering_coeff(paw), 0.6, 1e-15);
  EXPECT_NEAR(oracle::clustering(paw), 0.6, 1e-15);
  EXPECT_EQ(clustering_coeff(Graph(3, {})), 0.0);
}

TEST(PowerLaw, Examples)
{
  // degrees {1, 1, 2}
  EXPECT_NEAR(power_law_exp(path(3)), 1.0 + 3.0 / std::log(2.0), 1e-12);
  // degrees {1, 1, 2, 2}
  EXPECT_NEAR(power_law_exp(path(4)), 1.0 + 4.0 / (2.0 * std::log(2.0)), 1e-12);
  EXPECT_THROW(power_law_exp(cycle(6)), std::invalid_argument);
}

TEST(CharPathLength, Examples)
{
  EXPECT_NEAR(char_path_len(path(3)), 4.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(char_path_len(complete(4)), 1.0);
  EXPECT_NEAR(char_path_len(cycle(6)), 1.8, 1e-15);
  EXPECT_THROW(char_path_len(Graph(4, {Edge(0, 1), Edge(2, 3)})), std::invalid_argument);
  EXPECT_THROW(char_path_len(Graph(1, {})), std::invalid_argument);
}

TEST(GlobalStats, MatchOraclesOnSmallRandomGraphs)
{
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::size_t> size(2, 8);
  std::uniform_real_distribution<double> density(0.1, 0.9);
  for (int trial = 0; trial < 200; ++trial) {
    auto g = oracle::random_graph(size(rng), density(rng), rng);
    EXPECT_EQ(triangle_count(g), oracle::triangles(g));
    EXPECT_EQ(square_count(g), oracle::squares(g));
    EXPECT_NEAR(clustering_coeff(g), oracle::clustering(g), 1e-12);
    if (g.num_edges() > 0) {
      const double p = oracle::pearson_assortativity(g);
      const auto a = assortativity(g);
      if (std::isnan(p)) {
        EXPECT_TRUE(a.degenerate);
        EXPECT_EQ(a.value, 0.0);
      } else {
        EXPECT_NEAR(a.value, p, 1e-12);
      }
    }
    if (is_connected(g)) {
      EXPECT_NEAR(char_path_len(g), oracle::char_path(g), 1e-12);
    }
  }
}

TEST(GlobalStats, InvariantUnderRelabeling)
{
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    auto g = oracle::random_connected_graph(10, 0.3, rng);
    std::vector<Node> perm(g.num_nodes());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<Edge> moved;
    for (const auto& e : g.edges()) moved.emplace_back(perm[e.u], perm[e.v]);
    Graph h(g.num_nodes(), moved);
    bool regular = true;
    for (Node v = 0; v < g.num_nodes(); ++v) regular = regular && g.degree(v) == g.degree(0);
    if (regular) continue;
    auto a = compute_stats(g).values();
    auto b = compute_stats(h).values();
    for (std::size_t j = 0; j < a.size(); ++j) EXPECT_NEAR(a[j], b[j], 1e-12) << kStatNames[j];
  }
}

TEST(GlobalStats, DisconnectedUsesLargestComponentPathLength)
{
  Graph g(7, {Edge(0, 1), Edge(1, 2), Edge(3, 4), Edge(4, 5), Edge(5, 6), Edge(3, 5)});
  auto s = compute_stats(g);
  auto lcc = preprocess(g).graph;
  EXPECT_DOUBLE_EQ(s.char_path_len, oracle::char_path(lcc));
}

TEST(SGstats, Identical) { EXPECT_DOUBLE_EQ(s_gstats(some_stats(), some_stats()), 1.0); }

TEST(SGstats, ZeroAgainstNonzero)
{
  auto a = some_stats();
  auto b = some_stats();
  a.triangle_count = 0;
  EXPECT_EQ(s_gstats(a, b), 0.0);
}

TEST(SGstats, SignCancellation)
{
  auto a = some_stats();
  auto b = some_stats();
  a.assortativity = -0.1;
  b.assortativity = 0.1;
  EXPECT_EQ(gstats_terms(a, b)[1], 0.0);
  EXPECT_EQ(s_gstats(a, b), 0.0);
}

TEST(SGstats, BothZeroTermIsOne)
{
  auto a = some_stats();
  auto b = some_stats();
  a.square_count = b.square_count = 0;
  EXPECT_EQ(gstats_terms(a, b)[3], 1.0);
  EXPECT_DOUBLE_EQ(s_gstats(a, b), 1.0);
}

TEST(SGstats, TermFormula)
{
  auto a = some_stats();
  auto b = some_stats();
  b.max_degree = 15;
  const auto t = gstats_terms(a, b);
  EXPECT_DOUBLE_EQ(t[0], 1.0 - 10.0 / 20.0);
  EXPECT_DOUBLE_EQ(s_gstats(a, b), 7.0 / (6.0 + 2.0));
}
