#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "graph.hpp"
#include "harmonic_mean.hpp"
#include "parallel.hpp"

namespace graphdca {

inline std::size_t max_degree(const Graph& g)
{
  if (g.empty()) throw std::invalid_argument("max_degree of empty graph");
  std::size_t best = 0;
  for (Node v = 0; v < g.num_nodes(); ++v) best = std::max(best, g.degree(v));
  return best;
}

struct Assortativity {
  double value = 0.0;
  bool degenerate = false;  // zero degree variance over edge endpoints
};

/// Pearson correlation of endpoint degrees over both orientations of every edge.
inline Assortativity assortativity(const Graph& g)
{
  if (g.num_edges() == 0) throw std::invalid_argument("assortativity needs at least one edge");
  const double count = 2.0 * static_cast<double>(g.num_edges());
  double sum = 0.0;
  for (const auto& e : g.edges()) {
    sum += static_cast<double>(g.degree(e.u) + g.degree(e.v));
  }
  const double mean = sum / count;
  double var = 0.0;
  double cov = 0.0;
  for (const auto& e : g.edges()) {
    const double a = static_cast<double>(g.degree(e.u)) - mean;
    const double b = static_cast<double>(g.degree(e.v)) - mean;
    var += a * a + b * b;
    cov += 2.0 * a * b;
  }
  if (var <= 0.0) return {0.0, true};
  return {cov / var, false};
}

/// Number of 3-cycles.
inline std::uint64_t triangle_count(const Graph& g)
{
  std::uint64_t total = 0;
  for (const auto& e : g.edges()) {
    auto a = g.neighbors(e.u);
    auto b = g.neighbors(e.v);
    // common neighbours w > v so each triangle u < v < w is counted once
    auto ia = std::upper_bound(a.begin(), a.end(), e.v);
    auto ib = std::upper_bound(b.begin(), b.end(), e.v);
    while (ia != a.end() && ib != b.end()) {
      if (*ia < *ib) {
        ++ia;
      } else if (*ib < *ia) {
        ++ib;
      } else {
        ++total;
        ++ia;
        ++ib;
      }
    }
  }
  return total;
}

/// Number of distinct 4-cycles, from the closed 4-walk count:
/// tr(A^4) = 8 C4 + 2 sum d^2 - 2 m.
inline std::uint64_t square_count(const Graph& g)
{
  const std::size_t n = g.num_nodes();
  std::vector<std::uint64_t> paths(n, 0);
  std::vector<Node> touched;
  std::uint64_t trace4 = 0;
  std::uint64_t sum_sq = 0;
  for (Node u = 0; u < n; ++u) {
    for (Node x : g.neighbors(u)) {
      for (Node w : g.neighbors(x)) {
        if (paths[w]++ == 0) touched.push_back(w);
      }
    }
    for (Node w : touched) {
      trace4 += paths[w] * paths[w];
      paths[w] = 0;
    }
    touched.clear();
    sum_sq += static_cast<std::uint64_t>(g.degree(u)) * g.degree(u);
  }
  const std::uint64_t m = g.num_edges();
  return (trace4 + 2 * m - 2 * sum_sq) / 8;
}

/// Closed triplets over all connected triplets; 0 when there are none.
inline double clustering_coeff(const Graph& g)
{
  double triplets = 0.0;
  for (Node v = 0; v < g.num_nodes(); ++v) {
    const double d = static_cast<double>(g.degree(v));
    triplets += d * (d - 1.0) / 2.0;
  }
  if (triplets == 0.0) return 0.0;
  return 3.0 * static_cast<double>(triangle_count(g)) / triplets;
}

/// 1 + N / sum_v ln(d(v) / d_min).
inline double power_law_exp(const Graph& g)
{
  if (g.empty()) throw std::invalid_argument("power_law_exp of empty graph");
  std::size_t dmin = g.degree(0);
  for (Node v = 1; v < g.num_nodes(); ++v) dmin = std::min(dmin, g.degree(v));
  if (dmin == 0) throw std::invalid_argument("power_law_exp undefined with isolated nodes");
  double sum = 0.0;
  for (Node v = 0; v < g.num_nodes(); ++v) {
    sum += std::log(static_cast<double>(g.degree(v)) / static_cast<double>(dmin));
  }
  if (sum <= 0.0) throw std::invalid_argument("degenerate degree distribution");
  return 1.0 + static_cast<double>(g.num_nodes()) / sum;
}

/// Mean shortest-path length over ordered pairs of distinct nodes.
inline double char_path_len(const Graph& g, std::size_t threads = 0)
{
  const std::size_t n = g.num_nodes();
  if (n < 2) throw std::invalid_argument("char_path_len needs at least two nodes");
  std::vector<std::uint64_t> row_sum(n, 0);
  std::vector<char> disconnected(n, 0);
  parallel_for(n, threads, [&](std::size_t s) {
    auto dist = bfs_distances(g, static_cast<Node>(s));
    std::uint64_t acc = 0;
    for (Node d : dist) {
      if (d == kUnreachable) {
        disconnected[s] = 1;
        return;
      }
      acc += d;
    }
    row_sum[s] = acc;
  });
  if (std::any_of(disconnected.begin(), disconnected.end(), [](char c) { return c != 0; })) {
    throw std::invalid_argument("char_path_len requires a connected graph (take the LCC)");
  }
  std::uint64_t total = 0;
  for (auto r : row_sum) total += r;
  return static_cast<double>(total) / (static_cast<double>(n) * static_cast<double>(n - 1));
}

/// The seven global statistics, in the order used by s_gstats.
struct StatVector {
  std::size_t max_degree = 0;
  double assortativity = 0.0;
  std::uint64_t triangle_count = 0;
  std::uint64_t square_count = 0;
  double power_law_exp = 0.0;
  double clustering_coeff = 0.0;
  double char_path_len = 0.0;

  static constexpr std::size_t size = 7;

  std::array<double, size> values() const
  {
    return {static_cast<double>(max_degree), assortativity,
            static_cast<double>(triangle_count), static_cast<double>(square_count),
            power_law_exp, clustering_coeff, char_path_len};
  }
};

inline constexpr std::array<const char*, StatVector::size> kStatNames = {
    "max_degree", "assortativity", "triangle_count", "square_count",
    "power_law_exp", "clustering_coeff", "char_path_len"};

/// All statistics of `g`. The characteristic path length is taken over the
/// largest connected component when `g` is disconnected.
inline StatVector compute_stats(const Graph& g, std::size_t threads = 0)
{
  StatVector s;
  s.max_degree = max_degree(g);
  s.assortativity = assortativity(g).value;
  s.triangle_count = triangle_count(g);
  s.square_count = square_count(g);
  s.power_law_exp = power_law_exp(g);
  s.clustering_coeff = clustering_coeff(g);
  s.char_path_len = is_connected(g) ? char_path_len(g, threads)
                                    : char_path_len(preprocess(g).graph, threads);
  return s;
}

/// Per-statistic similarity 1 - |a-b| / (|a|+|b|); both zero gives 1.
inline std::array<double, StatVector::size> gstats_terms(const StatVector& a, const StatVector& b)
{
  auto va = a.values();
  auto vb = b.values();
  std::array<double, StatVector::size> terms{};
  for (std::size_t j = 0; j < terms.size(); ++j) {
    const double denom = std::abs(va[j]) + std::abs(vb[j]);
    terms[j] = denom == 0.0 ? 1.0 : 1.0 - std::abs(va[j] - vb[j]) / denom;
  }
  return terms;
}

inline double s_gstats(const StatVector& a, const StatVector& b)
{
  auto terms = gstats_terms(a, b);
  return harmonic_mean(terms);
}

} // namespace graphdca
