#include <cstdio>
#include <filesystem>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include <graphdca/features.hpp>
#include <graphdca/groletest.hpp>

#include "oracles.hpp"

using namespace graphdca;

namespace {

Graph cycle(std::size_t n)
{
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i) e.emplace_back(static_cast<Node>(i), static_cast<Node>((i + 1) % n));
  return Graph(n, e);
}

Graph complete(std::size_t n)
{
  std::vector<Edge> e;
  for (Node a = 0; a < n; ++a)
    for (Node b = a + 1; b < n; ++b) e.emplace_back(a, b);
  return Graph(n, e);
}

using Stats = std::array<double, kEgonetStatCount>;

} // namespace

TEST(EgonetStats, Triangle)
{
  EXPECT_EQ(egonet_stats(complete(3)), (Stats{3, 2, 2, 1, 1, 0}));
}

TEST(EgonetStats, SingleNode) { EXPECT_EQ(egonet_stats(Graph(1, {})), (Stats{1, 0, 0, 0, 0, 0})); }

TEST(EgonetStats, K4) { EXPECT_EQ(egonet_stats(complete(4)), (Stats{4, 3, 3, 4, 1, 0})); }

TEST(EgonetStats, EmptyGraphRejected) { EXPECT_THROW(egonet_stats(Graph()), std::invalid_argument); }

TEST(ManualFeatures, Dimension)
{
  auto f = manual_features(cycle(9));
  EXPECT_EQ(f.dim(), 24u);
  EXPECT_EQ(f.num_rows(), 9u);
  EXPECT_EQ(f.extractor_id, "manual");
}

TEST(ManualFeatures, CycleFirstBlock)
{
  auto f = manual_features(cycle(6));
  for (Eigen::Index v = 0; v < 6; ++v) {
    EXPECT_DOUBLE_EQ(f.rows(v, 0), 3.0);
    EXPECT_DOUBLE_EQ(f.rows(v, 1), 4.0 / 3.0);
    EXPECT_DOUBLE_EQ(f.rows(v, 2), 2.0);
    EXPECT_DOUBLE_EQ(f.rows(v, 3), 0.0);
    EXPECT_DOUBLE_EQ(f.rows(v, 4), 0.0);
    // the 3-path is a 2-leaf star: degree pairs (1,2),(2,1) have variance, correlation -1
    EXPECT_DOUBLE_EQ(f.rows(v, 5), -1.0);
    EXPECT_DOUBLE_EQ(oracle::pearson_assortativity(Graph(3, {Edge(0, 1), Edge(1, 2)})), -1.0);
  }
}

TEST(ManualFeatures, EmptyGraphRejected) { EXPECT_THROW(manual_features(Graph()), std::invalid_argument); }

TEST(ManualFeatures, SymmetricLeavesHaveEqualRows)
{
  std::vector<Edge> e;
  for (Node i = 1; i <= 4; ++i) e.emplace_back(0, i);
  auto f = manual_features(Graph(5, e));
  EXPECT_EQ(f.rows.row(1), f.rows.row(2));
  EXPECT_EQ(f.rows.row(3), f.rows.row(4));
}

TEST(ManualFeatures, MatchesEgonetOracle)
{
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 5; ++trial) {
    auto g = oracle::random_graph(14, 0.2, rng);
    auto f = manual_features(g);
    auto d = oracle::all_pairs(g);
    for (Node v = 0; v < g.num_nodes(); ++v) {
      for (std::size_t r = 0; r < kEgonetRadii.size(); ++r) {
        std::vector<Node> ball;
        for (Node u = 0; u < g.num_nodes(); ++u) {
          if (d[v][u] <= kEgonetRadii[r]) ball.push_back(u);
        }
        auto h = induced_subgraph(g, ball).graph;
        const double n = static_cast<double>(h.num_nodes());
        const double assort = h.num_edges() == 0 ? 0.0 : oracle::pearson_assortativity(h);
        const Stats expected = {n,
                                2.0 * static_cast<double>(h.num_edges()) / n,
                                static_cast<double>(max_degree(h)),
                                static_cast<double>(oracle::triangles(h)),
                                oracle::clustering(h),
                                std::isnan(assort) ? 0.0 : assort};
        for (std::size_t k = 0; k < kEgonetStatCount; ++k) {
          EXPECT_NEAR(f.rows(v, static_cast<Eigen::Index>(r * kEgonetStatCount + k)), expected[k], 1e-12);
        }
      }
    }
  }
}

TEST(ManualFeatures, LargeRadiusGivesComponentStatistics)
{
  // diameter 3 <= 4: the radius-4 block is the whole graph for every node
  auto g = cycle(6);
  auto f = manual_features(g);
  for (Eigen::Index v = 0; v < 6; ++v) {
    EXPECT_DOUBLE_EQ(f.rows(v, 18), 6.0);
    EXPECT_DOUBLE_EQ(f.rows(v, 19), 2.0);
    EXPECT_DOUBLE_EQ(f.rows(v, 23), 0.0);
  }
}

TEST(ManualFeatures, PermutationEquivariant)
{
  std::mt19937_64 rng(12);
  auto g = oracle::random_connected_graph(20, 0.1, rng);
  std::vector<Node> perm(g.num_nodes());
  std::iota(perm.begin(), perm.end(), 0);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<Edge> moved;
  for (const auto& e : g.edges()) moved.emplace_back(perm[e.u], perm[e.v]);
  auto f = manual_features(g);
  auto h = manual_features(Graph(g.num_nodes(), moved));
  for (Node v = 0; v < g.num_nodes(); ++v) {
    for (Eigen::Index c = 0; c < f.rows.cols(); ++c) EXPECT_NEAR(f.rows(v, c), h.rows(perm[v], c), 1e-12);
  }
}

TEST(ManualFeatures, DeterministicAcrossThreadCounts)
{
  auto lg = assemble(GroletestConfig::desk());
  auto a = manual_features(lg.graph, 1);
  auto b = manual_features(lg.graph, 3);
  EXPECT_EQ(a.rows, b.rows);
}

TEST(FeatureFiles, CsvAndBinaryRoundTrip)
{
  FeatureMatrix fm{Eigen::MatrixXd::Random(7, 5), "graphwave", "cheb_order=30;samples=25"};
  fm.rows(0, 0) = 1.0 / 3.0;
  const auto dir = std::filesystem::temp_directory_path() / "graphdca_feature_io";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "f.csv").string();
  save_features(path, fm);
  auto back = load_features(path);
  EXPECT_EQ(back.rows, fm.rows);
  EXPECT_EQ(back.extractor_id, "graphwave");
  EXPECT_EQ(back.params_digest, fm.params_digest);
  // CSV alone carries 17 significant digits
  std::filesystem::remove(path + ".bin");
  auto csv_only = load_features(path);
  EXPECT_EQ(csv_only.rows, fm.rows);
  std::filesystem::remove_all(dir);
}

TEST(FeatureFiles, HeaderlessCsvIsExternal)
{
  std::istringstream in("1,2\n3,4\n");
  auto fm = read_features_csv(in);
  EXPECT_EQ(fm.extractor_id, "external");
  EXPECT_EQ(fm.rows.rows(), 2);
  EXPECT_DOUBLE_EQ(fm.rows(1, 0), 3.0);
}

TEST(FeatureFiles, RejectsBadInput)
{
  std::istringstream ragged("1,2\n3\n");
  EXPECT_THROW(read_features_csv(ragged), std::invalid_argument);
  std::istringstream text("1,abc\n");
  EXPECT_THROW(read_features_csv(text), std::invalid_argument);
  std::istringstream nan("1,nan\n");
  EXPECT_THROW(read_features_csv(nan), std::runtime_error);
}

TEST(Standardize, PooledZScores)
{
  FeatureMatrix a{Eigen::MatrixXd(2, 2), "x", ""};
  FeatureMatrix b{Eigen::MatrixXd(2, 2), "x", ""};
  a.rows << 1, 5, 3, 5;
  b.rows << 5, 5, 7, 5;
  standardize_jointly(a, b);
  // column 0: mean 4, population sd sqrt(5)
  EXPECT_NEAR(a.rows(0, 0), -3.0 / std::sqrt(5.0), 1e-15);
  EXPECT_NEAR(b.rows(1, 0), 3.0 / std::sqrt(5.0), 1e-15);
  // constant column is centered only
  EXPECT_EQ(a.rows(0, 1), 0.0);
  FeatureMatrix c{Eigen::MatrixXd(2, 3), "x", ""};
  EXPECT_THROW(standardize_jointly(a, c), std::invalid_argument);
}
