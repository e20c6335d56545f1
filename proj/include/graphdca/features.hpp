#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "global_stats.hpp"
#include "graph.hpp"
#include "parallel.hpp"

namespace graphdca {

/// N x d node representations; row i belongs to node i.
struct FeatureMatrix {
  Eigen::MatrixXd rows;
  std::string extractor_id;
  std::string params_digest;

  std::size_t num_rows() const { return static_cast<std::size_t>(rows.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(rows.cols()); }

  void check_finite() const
  {
    if (!rows.allFinite()) throw std::runtime_error("feature matrix contains NaN/Inf");
  }
};

inline constexpr std::array<Node, 4> kEgonetRadii = {1, 2, 3, 4};
inline constexpr std::size_t kEgonetStatCount = 6;

/// [node count, average degree, max degree, triangles, clustering, assortativity].
/// Degenerate values (no edges, zero degree variance, no triplets) are 0.
inline std::array<double, kEgonetStatCount> egonet_stats(const Graph& h)
{
  if (h.empty()) throw std::invalid_argument("egonet_stats of empty graph");
  const double n = static_cast<double>(h.num_nodes());
  const double m = static_cast<double>(h.num_edges());
  const double assort = h.num_edges() == 0 ? 0.0 : assortativity(h).value;
  return {n,
          2.0 * m / n,
          static_cast<double>(max_degree(h)),
          static_cast<double>(triangle_count(h)),
          clustering_coeff(h),
          assort};
}

/// Egonet statistics for radii 1..4, concatenated: 24 columns.
inline FeatureMatrix manual_features(const Graph& g, std::size_t threads = 0)
{
  if (g.empty()) throw std::invalid_argument("manual_features of empty graph");
  const std::size_t n = g.num_nodes();
  const auto width = static_cast<Eigen::Index>(kEgonetRadii.size() * kEgonetStatCount);
  Eigen::MatrixXd out(static_cast<Eigen::Index>(n), width);
  const Node max_radius = kEgonetRadii.back();
  parallel_for(n, threads, [&](std::size_t v) {
    auto dist = bfs_distances(g, static_cast<Node>(v), max_radius);
    std::vector<Node> reached;
    for (Node u = 0; u < n; ++u) {
      if (dist[u] <= max_radius) reached.push_back(u);
    }
    Eigen::Index col = 0;
    for (Node radius : kEgonetRadii) {
      std::vector<Node> members;
      for (Node u : reached) {
        if (dist[u] <= radius) members.push_back(u);
      }
      auto ego = induced_subgraph(g, std::move(members));
      for (double s : egonet_stats(ego.graph)) out(static_cast<Eigen::Index>(v), col++) = s;
    }
  });
  FeatureMatrix fm{std::move(out), "manual", "radii=1,2,3,4;stats=nodes,avg_deg,max_deg,triangles,clustering,assortativity"};
  fm.check_finite();
  return fm;
}

/// Column-wise z-scoring with statistics pooled over both matrices.
/// Constant columns are centered only.
inline void standardize_jointly(FeatureMatrix& a, FeatureMatrix& b)
{
  if (a.dim() != b.dim()) throw std::invalid_argument("feature dimension mismatch");
  const double count = static_cast<double>(a.num_rows() + b.num_rows());
  for (Eigen::Index c = 0; c < a.rows.cols(); ++c) {
    const double mean = (a.rows.col(c).sum() + b.rows.col(c).sum()) / count;
    const double var = ((a.rows.col(c).array() - mean).square().sum() +
                        (b.rows.col(c).array() - mean).square().sum()) / count;
    const double scale = var > 0.0 ? 1.0 / std::sqrt(var) : 1.0;
    a.rows.col(c) = (a.rows.col(c).array() - mean) * scale;
    b.rows.col(c) = (b.rows.col(c).array() - mean) * scale;
  }
}

// ---------------------------------------------------------------------------
// Feature files.
//
// CSV: first line "extractor,<id>,params,<digest>", then one comma-separated
// row per node (%.17g). Binary sidecar: uint64 rows, uint64 cols, then
// rows*cols float64 values in column-major order, all little-endian.

inline void write_features_csv(std::ostream& out, const FeatureMatrix& fm)
{
  out << "extractor," << fm.extractor_id << ",params," << fm.params_digest << '\n';
  out << std::setprecision(17);
  for (Eigen::Index r = 0; r < fm.rows.rows(); ++r) {
    for (Eigen::Index c = 0; c < fm.rows.cols(); ++c) {
      if (c) out << ',';
      out << fm.rows(r, c);
    }
    out << '\n';
  }
}

inline FeatureMatrix read_features_csv(std::istream& in)
{
  FeatureMatrix fm;
  fm.extractor_id = "external";
  std::string line;
  std::vector<std::vector<double>> data;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (first && line.rfind("extractor,", 0) == 0) {
      std::istringstream fields(line);
      std::string tag;
      std::getline(fields, tag, ',');
      std::getline(fields, fm.extractor_id, ',');
      std::getline(fields, tag, ',');
      std::getline(fields, fm.params_digest);
      first = false;
      continue;
    }
    first = false;
    std::vector<double> row;
    std::istringstream fields(line);
    std::string cell;
    while (std::getline(fields, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw std::invalid_argument("non-numeric feature value: " + cell);
      }
    }
    if (!data.empty() && row.size() != data.front().size()) {
      throw std::invalid_argument("ragged feature rows");
    }
    data.push_back(std::move(row));
  }
  const auto n = static_cast<Eigen::Index>(data.size());
  const auto d = static_cast<Eigen::Index>(data.empty() ? 0 : data.front().size());
  fm.rows.resize(n, d);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) fm.rows(r, c) = data[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  }
  fm.check_finite();
  return fm;
}

inline void write_features_binary(std::ostream& out, const Eigen::MatrixXd& m)
{
  const std::uint64_t dims[2] = {static_cast<std::uint64_t>(m.rows()), static_cast<std::uint64_t>(m.cols())};
  out.write(reinterpret_cast<const char*>(dims), sizeof(dims));
  out.write(reinterpret_cast<const char*>(m.data()),
            static_cast<std::streamsize>(sizeof(double) * static_cast<std::size_t>(m.size())));
}

inline Eigen::MatrixXd read_features_binary(std::istream& in)
{
  std::uint64_t dims[2] = {0, 0};
  if (!in.read(reinterpret_cast<char*>(dims), sizeof(dims))) {
    throw std::invalid_argument("truncated feature sidecar header");
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(dims[0]), static_cast<Eigen::Index>(dims[1]));
  if (!in.read(reinterpret_cast<char*>(m.data()),
               static_cast<std::streamsize>(sizeof(double) * static_cast<std::size_t>(m.size())))) {
    throw std::invalid_argument("truncated feature sidecar data");
  }
  return m;
}

/// Loads a CSV, preferring the exact values of "<path>.bin" when present.
inline FeatureMatrix load_features(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open features: " + path);
  FeatureMatrix fm = read_features_csv(in);
  std::ifstream bin(path + ".bin", std::ios::binary);
  if (bin) {
    Eigen::MatrixXd exact = read_features_binary(bin);
    if (exact.rows() == fm.rows.rows() && exact.cols() == fm.rows.cols()) fm.rows = std::move(exact);
  }
  return fm;
}

inline void save_features(const std::string& path, const FeatureMatrix& fm)
{
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write features: " + path);
  write_features_csv(out, fm);
  std::ofstream bin(path + ".bin", std::ios::binary);
  if (!bin) throw std::runtime_error("cannot write feature sidecar: " + path + ".bin");
  write_features_binary(bin, fm.rows);
}

} // namespace graphdca
