#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "graph.hpp"
#include "harmonic_mean.hpp"
#include "parallel.hpp"
#include "random.hpp"

namespace graphdca {

using PointMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class SetLabel : std::uint8_t { R1 = 0, R2 = 1 };

struct DcaParams {
  std::size_t trials = 10000;         // T: number of line walks
  std::optional<double> edge_filter;  // B; filtering is off when empty
  std::size_t min_cluster_size = 2;   // mcs
  std::uint64_t seed = 0;
  std::size_t threads = 0;            // 0: default_thread_count()

  void validate() const
  {
    if (trials < 1) throw std::invalid_argument("T must be >= 1");
    if (min_cluster_size < 2) throw std::invalid_argument("mcs must be >= 2");
    if (edge_filter && !(*edge_filter > 0.0)) throw std::invalid_argument("B must be positive");
  }
};

/// Stacked representations of both sets.
struct PointSet {
  PointMatrix points;
  std::vector<SetLabel> labels;
  std::vector<double> weights;

  std::size_t size() const { return static_cast<std::size_t>(points.rows()); }
};

struct Component {
  std::vector<Node> members;  // sorted point indices
  std::vector<Edge> edges;    // Delaunay edges with both endpoints in members
};

struct ComponentDecomposition {
  std::vector<Component> components;
  std::vector<std::size_t> component_of;  // per point
  std::size_t cross_edges_removed = 0;
  std::size_t delaunay_edge_count = 0;
};

struct ComponentScore {
  std::size_t size = 0;
  double quality = 0.0;
  double weight_r1 = 0.0;
  double weight_r2 = 0.0;
};

struct ScoreReport {
  double q = 0.0;  // network quality
  double p_w = 0.0;
  double r_w = 0.0;
  double s_wdca = 0.0;
  std::vector<ComponentScore> per_component;
  std::size_t num_points_r1 = 0;
  std::size_t num_points_r2 = 0;
  std::size_t delaunay_edge_count = 0;
  std::size_t filtered_edge_count = 0;
  std::size_t distilled_edge_count = 0;
  DcaParams params;
};

// ---------------------------------------------------------------------------
// Duplicates

namespace detail {

inline bool row_less(const PointMatrix& p, Eigen::Index a, Eigen::Index b)
{
  for (Eigen::Index c = 0; c < p.cols(); ++c) {
    if (p(a, c) != p(b, c)) return p(a, c) < p(b, c);
  }
  return false;
}

inline bool row_equal(const PointMatrix& p, Eigen::Index a, Eigen::Index b)
{
  return (p.row(a).array() == p.row(b).array()).all();
}

/// Groups of indices of exactly coincident rows (only groups of size >= 2).
inline std::vector<std::vector<Node>> duplicate_groups(const PointMatrix& p)
{
  std::vector<Node> order(static_cast<std::size_t>(p.rows()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Node a, Node b) {
    return row_less(p, a, b) || (!row_less(p, b, a) && a < b);
  });
  std::vector<std::vector<Node>> groups;
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i + 1;
    while (j < order.size() && row_equal(p, order[i], order[j])) ++j;
    if (j - i > 1) groups.emplace_back(order.begin() + static_cast<std::ptrdiff_t>(i),
                                       order.begin() + static_cast<std::ptrdiff_t>(j));
    i = j;
  }
  std::sort(groups.begin(), groups.end());
  return groups;
}

} // namespace detail

inline bool has_duplicate_points(const PointMatrix& p) { return !detail::duplicate_groups(p).empty(); }

/// Largest per-column range, or 1 for a constant point set.
inline double feature_range(const PointMatrix& p)
{
  if (p.rows() == 0) return 1.0;
  const double r = (p.colwise().maxCoeff() - p.colwise().minCoeff()).maxCoeff();
  return r > 0.0 ? r : 1.0;
}

/// Separates exactly coincident points with a seeded jitter of magnitude
/// 1e-9 x feature_range. Within a group, the i-th R1 member and the i-th R2
/// member share a slot and stay 100x closer to each other than to any other
/// slot, so coincident cross-set points remain mutual nearest neighbours.
inline PointMatrix jitter_duplicates(const PointMatrix& points, std::span<const SetLabel> labels,
                                     std::uint64_t seed)
{
  if (labels.size() != static_cast<std::size_t>(points.rows())) {
    throw std::invalid_argument("label count does not match point count");
  }
  PointMatrix out = points;
  const auto groups = detail::duplicate_groups(points);
  if (groups.empty()) return out;
  const double slot_scale = 1e-9 * feature_range(points);
  const double pair_scale = 1e-2 * slot_scale;
  const Eigen::Index d = points.cols();
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  for (const auto& group : groups) {
    auto rng = make_rng(derive_seed(seed, {group.front()}));
    std::vector<Node> r1;
    std::vector<Node> r2;
    for (Node i : group) (labels[i] == SetLabel::R1 ? r1 : r2).push_back(i);
    const std::size_t slots = std::max(r1.size(), r2.size());
    for (std::size_t s = 0; s < slots; ++s) {
      Eigen::RowVectorXd offset(d);
      for (Eigen::Index c = 0; c < d; ++c) offset[c] = slot_scale * unit(rng);
      if (s < r1.size() && s < r2.size()) {
        Eigen::RowVectorXd split(d);
        for (Eigen::Index c = 0; c < d; ++c) split[c] = 0.5 * pair_scale * unit(rng);
        out.row(r1[s]) += offset - split;
        out.row(r2[s]) += offset + split;
      } else {
        out.row(s < r1.size() ? r1[s] : r2[s]) += offset;
      }
    }
  }
  if (has_duplicate_points(out)) throw std::runtime_error("jitter failed to separate duplicate points");
  return out;
}

// ---------------------------------------------------------------------------
// Approximate Delaunay graph

namespace detail {

/// Walks the ray source + t*dir (t >= 0) through consecutive Voronoi cells,
/// appending each crossed cell pair. With a_j = |x_j - x_s|^2 and
/// b_j = (x_j - x_s).dir, the bisector of cells c and j meets the line at
/// t = (a_j - a_c) / (2 (b_j - b_c)); the next cell is the j with b_j > b_c
/// whose crossing comes first.
inline void voronoi_walk(std::span<const double> a, std::span<const double> b, Node source,
                         std::vector<Edge>& out)
{
  const std::size_t m = a.size();
  Node cell = source;
  for (std::size_t step = 0; step < m; ++step) {
    const double ac = a[cell];
    const double bc = b[cell];
    double best_t = std::numeric_limits<double>::infinity();
    std::size_t best = m;
    for (std::size_t j = 0; j < m; ++j) {
      const double den = b[j] - bc;
      if (!(den > 0.0)) continue;
      const double cross = 0.5 * (a[j] - ac) / den;
      if (cross < best_t) {
        best_t = cross;
        best = j;
      }
    }
    if (best == m) return;  // unbounded cell: the ray leaves the point set
    out.emplace_back(cell, static_cast<Node>(best));
    cell = static_cast<Node>(best);
  }
}

} // namespace detail

/// Randomized Delaunay graph approximation. Each trial draws a source point
/// and a uniform direction and walks the full line through the Voronoi
/// diagram in both directions; the union of crossed cell pairs is returned
/// sorted. Trial i uses a generator derived from (seed, i).
inline std::vector<Edge> approx_delaunay(const PointMatrix& points, std::size_t trials, std::uint64_t seed,
                                         std::size_t threads = 0)
{
  const auto m = static_cast<std::size_t>(points.rows());
  if (m < 2) throw std::invalid_argument("approx_delaunay needs at least 2 points");
  if (!points.allFinite()) throw std::invalid_argument("points must be finite");
  if (has_duplicate_points(points)) {
    throw std::invalid_argument("duplicate points; apply jitter_duplicates first");
  }
  if (threads == 0) threads = default_thread_count();
  threads = std::max<std::size_t>(1, std::min(threads, trials));
  const std::size_t chunk = (trials + threads - 1) / threads;

  std::vector<std::vector<Edge>> found(threads);
  parallel_for(threads, threads, [&](std::size_t w) {
    std::vector<double> dist(m);
    std::vector<double> proj(m);
    std::vector<Edge>& local = found[w];
    std::size_t compact_at = 8 * m;
    Eigen::VectorXd dir(points.cols());
    std::normal_distribution<double> gauss(0.0, 1.0);
    const std::size_t end = std::min(trials, (w + 1) * chunk);
    for (std::size_t i = w * chunk; i < end; ++i) {
      auto rng = make_rng(derive_seed(seed, {i}));
      std::uniform_int_distribution<std::size_t> pick(0, m - 1);
      const auto source = static_cast<Node>(pick(rng));
      do {
        for (Eigen::Index c = 0; c < dir.size(); ++c) dir[c] = gauss(rng);
      } while (dir.norm() == 0.0);
      dir.normalize();
      const auto origin = points.row(source);
      for (std::size_t j = 0; j < m; ++j) {
        const auto offset = points.row(static_cast<Eigen::Index>(j)) - origin;
        dist[j] = offset.squaredNorm();
        proj[j] = offset.dot(dir.transpose());
      }
      detail::voronoi_walk(dist, proj, source, local);
      for (auto& p : proj) p = -p;
      detail::voronoi_walk(dist, proj, source, local);
      if (local.size() > compact_at) {
        std::sort(local.begin(), local.end());
        local.erase(std::unique(local.begin(), local.end()), local.end());
        compact_at = 2 * local.size() + 8 * m;
      }
    }
  });
  std::vector<Edge> edges;
  for (auto& f : found) edges.insert(edges.end(), f.begin(), f.end());
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

inline double edge_length(const PointMatrix& points, const Edge& e)
{
  return (points.row(e.u) - points.row(e.v)).norm();
}

/// Keeps (u,v) iff its length is within mean + B*stddev of the edges at u
/// or of the edges at v.
inline std::vector<Edge> filter_edges(std::span<const Edge> edges, const PointMatrix& points, double b)
{
  if (!(b > 0.0)) throw std::invalid_argument("B must be positive");
  const auto m = static_cast<std::size_t>(points.rows());
  std::vector<double> sum(m, 0.0);
  std::vector<double> sum_sq(m, 0.0);
  std::vector<std::size_t> count(m, 0);
  std::vector<double> length(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const double len = edge_length(points, edges[i]);
    length[i] = len;
    for (Node x : {edges[i].u, edges[i].v}) {
      sum[x] += len;
      ++count[x];
    }
  }
  std::vector<double> mean(m, 0.0);
  std::vector<double> sd(m, 0.0);
  for (std::size_t x = 0; x < m; ++x) {
    if (count[x] == 0) continue;
    mean[x] = sum[x] / static_cast<double>(count[x]);
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    for (Node x : {edges[i].u, edges[i].v}) sum_sq[x] += (length[i] - mean[x]) * (length[i] - mean[x]);
  }
  for (std::size_t x = 0; x < m; ++x) {
    if (count[x] > 0) sd[x] = std::sqrt(sum_sq[x] / static_cast<double>(count[x]));
  }
  std::vector<Edge> kept;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    if (length[i] <= mean[e.u] + b * sd[e.u] || length[i] <= mean[e.v] + b * sd[e.v]) kept.push_back(e);
  }
  return kept;
}

// ---------------------------------------------------------------------------
// Distillation

struct WeightedEdge {
  Node u = 0;
  Node v = 0;
  double length = 0.0;
};

/// Cluster label per point (-1 for noise) from a weighted graph.
using ClusteringFn =
    std::function<std::vector<std::int64_t>(std::size_t, std::span<const WeightedEdge>, std::size_t)>;

namespace detail {

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t x)
  {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
};

} // namespace detail

/// Single-linkage hierarchy over the minimum spanning forest of the graph,
/// condensed with minimum cluster size `mcs`, clusters chosen by excess of
/// mass. Each connected piece is its own hierarchy root and may be selected
/// whole.
inline std::vector<std::int64_t> eom_cluster_labels(std::size_t n, std::span<const WeightedEdge> edges,
                                                    std::size_t mcs)
{
  std::vector<WeightedEdge> sorted(edges.begin(), edges.end());
  std::sort(sorted.begin(), sorted.end(), [](const WeightedEdge& a, const WeightedEdge& b) {
    if (a.length != b.length) return a.length < b.length;
    if (a.u != b.u) return a.u < b.u;
    return a.v < b.v;
  });

  // single-linkage tree: nodes [0, n) are points, merges follow
  std::vector<std::size_t> left;
  std::vector<std::size_t> right;
  std::vector<double> height;
  std::vector<std::size_t> size(n, 1);
  detail::DisjointSets sets(n);
  std::vector<std::size_t> tree_node(n);
  std::iota(tree_node.begin(), tree_node.end(), 0);
  for (const auto& e : sorted) {
    const auto ru = sets.find(e.u);
    const auto rv = sets.find(e.v);
    if (ru == rv) continue;
    const std::size_t id = n + left.size();
    left.push_back(tree_node[ru]);
    right.push_back(tree_node[rv]);
    height.push_back(e.length);
    size.push_back(size[tree_node[ru]] + size[tree_node[rv]]);
    sets.parent[rv] = ru;
    tree_node[ru] = id;
  }

  struct Cluster {
    std::int64_t parent = -1;
    double birth = 0.0;
    double stability = 0.0;
    std::vector<std::size_t> children;
  };
  std::vector<Cluster> clusters;
  std::vector<std::int64_t> fell_from(n, -1);

  auto lambda_of = [&](std::size_t node) {
    const double h = height[node - n];
    return h > 0.0 ? 1.0 / h : std::numeric_limits<double>::max();
  };
  auto drop_subtree = [&](std::size_t node, std::size_t cluster, double lambda) {
    std::vector<std::size_t> stack{node};
    while (!stack.empty()) {
      const auto x = stack.back();
      stack.pop_back();
      if (x < n) {
        fell_from[x] = static_cast<std::int64_t>(cluster);
        clusters[cluster].stability += lambda - clusters[cluster].birth;
      } else {
        stack.push_back(left[x - n]);
        stack.push_back(right[x - n]);
      }
    }
  };

  std::vector<std::pair<std::size_t, std::size_t>> work;  // (tree node, cluster)
  for (std::size_t p = 0; p < n; ++p) {
    if (sets.find(p) != p) continue;
    const auto root = tree_node[p];
    if (size[root] < mcs) continue;  // too small to form a cluster: noise
    clusters.push_back({});
    work.emplace_back(root, clusters.size() - 1);
  }
  while (!work.empty()) {
    const auto [node, cluster] = work.back();
    work.pop_back();
    if (node < n) {
      fell_from[node] = static_cast<std::int64_t>(cluster);
      continue;
    }
    const double lambda = lambda_of(node);
    const auto l = left[node - n];
    const auto r = right[node - n];
    const bool big_l = size[l] >= mcs;
    const bool big_r = size[r] >= mcs;
    if (big_l && big_r) {
      clusters[cluster].stability +=
          static_cast<double>(size[l] + size[r]) * (lambda - clusters[cluster].birth);
      for (auto child : {l, r}) {
        Cluster c;
        c.parent = static_cast<std::int64_t>(cluster);
        c.birth = lambda;
        clusters.push_back(std::move(c));
        clusters[cluster].children.push_back(clusters.size() - 1);
        work.emplace_back(child, clusters.size() - 1);
      }
    } else if (big_l) {
      drop_subtree(r, cluster, lambda);
      work.emplace_back(l, cluster);
    } else if (big_r) {
      drop_subtree(l, cluster, lambda);
      work.emplace_back(r, cluster);
    } else {
      drop_subtree(l, cluster, lambda);
      drop_subtree(r, cluster, lambda);
    }
  }

  // excess of mass, bottom-up; children always have larger ids than parents
  const std::size_t k = clusters.size();
  std::vector<double> best(k, 0.0);
  std::vector<char> selected(k, 0);
  for (std::size_t c = k; c-- > 0;) {
    double children = 0.0;
    for (auto ch : clusters[c].children) children += best[ch];
    if (!clusters[c].children.empty() && children > clusters[c].stability) {
      best[c] = children;
    } else {
      best[c] = clusters[c].stability;
      selected[c] = 1;
    }
  }
  std::vector<std::int64_t> owner(k, -1);  // selected cluster at or above c
  for (std::size_t c = 0; c < k; ++c) {
    const auto parent = clusters[c].parent;
    if (parent >= 0 && owner[static_cast<std::size_t>(parent)] >= 0) {
      owner[c] = owner[static_cast<std::size_t>(parent)];
    } else if (selected[c]) {
      owner[c] = static_cast<std::int64_t>(c);
    }
  }
  std::vector<std::int64_t> labels(n, -1);
  for (std::size_t p = 0; p < n; ++p) {
    if (fell_from[p] >= 0) labels[p] = owner[static_cast<std::size_t>(fell_from[p])];
  }
  return labels;
}

/// Partitions the points into components with `cluster`; noise points
/// become singletons. Each component keeps the graph edges internal to it.
/// Components are ordered by smallest member.
inline ComponentDecomposition distill(std::span<const Edge> edges, const PointMatrix& points,
                                      std::size_t mcs, const ClusteringFn& cluster = eom_cluster_labels)
{
  if (mcs < 2) throw std::invalid_argument("mcs must be >= 2");
  const auto n = static_cast<std::size_t>(points.rows());
  std::vector<WeightedEdge> weighted;
  weighted.reserve(edges.size());
  for (const auto& e : edges) {
    if (e.v >= n) throw std::invalid_argument("edge endpoint out of range");
    weighted.push_back({e.u, e.v, edge_length(points, e)});
  }
  const auto labels = cluster(n, weighted, mcs);

  ComponentDecomposition out;
  out.delaunay_edge_count = edges.size();
  out.component_of.assign(n, 0);
  std::vector<std::int64_t> label_to_component;
  auto cluster_slot = [&](std::int64_t label) -> std::int64_t& {
    if (static_cast<std::size_t>(label) >= label_to_component.size()) {
      label_to_component.resize(static_cast<std::size_t>(label) + 1, -1);
    }
    return label_to_component[static_cast<std::size_t>(label)];
  };
  for (std::size_t p = 0; p < n; ++p) {
    std::size_t c = 0;
    if (labels[p] < 0) {
      c = out.components.size();
      out.components.emplace_back();
    } else {
      auto& slot = cluster_slot(labels[p]);
      if (slot < 0) {
        slot = static_cast<std::int64_t>(out.components.size());
        out.components.emplace_back();
      }
      c = static_cast<std::size_t>(slot);
    }
    out.component_of[p] = c;
    out.components[c].members.push_back(static_cast<Node>(p));
  }
  for (const auto& e : edges) {
    const auto cu = out.component_of[e.u];
    if (cu == out.component_of[e.v]) {
      out.components[cu].edges.push_back(e);
    } else {
      ++out.cross_edges_removed;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scores

inline std::size_t within_set_edges(std::span<const Edge> edges, std::span<const SetLabel> labels)
{
  std::size_t within = 0;
  for (const auto& e : edges) within += labels[e.u] == labels[e.v] ? 1 : 0;
  return within;
}

/// 1 - (edges inside R1 + edges inside R2) / edges; 0 for an edgeless component.
inline double component_quality(const Component& component, std::span<const SetLabel> labels)
{
  if (component.edges.empty()) return 0.0;
  const double within = static_cast<double>(within_set_edges(component.edges, labels));
  return 1.0 - within / static_cast<double>(component.edges.size());
}

/// Component quality over the union of all components' edges.
inline double network_quality(const ComponentDecomposition& dec, std::span<const SetLabel> labels)
{
  std::size_t total = 0;
  std::size_t within = 0;
  for (const auto& c : dec.components) {
    total += c.edges.size();
    within += within_set_edges(c.edges, labels);
  }
  if (total == 0) return 0.0;
  return 1.0 - static_cast<double>(within) / static_cast<double>(total);
}

struct PrecisionRecall {
  double precision = 0.0;  // weight share of R2 inside components with q > 0
  double recall = 0.0;     // same for R1
};

inline PrecisionRecall weighted_pr(const ComponentDecomposition& dec, std::span<const SetLabel> labels,
                                   std::span<const double> weights)
{
  if (labels.size() != weights.size()) throw std::invalid_argument("weight count does not match labels");
  double total[2] = {0.0, 0.0};
  double fundamental[2] = {0.0, 0.0};
  for (std::size_t i = 0; i < labels.size(); ++i) total[static_cast<int>(labels[i])] += weights[i];
  if (!(total[0] > 0.0) || !(total[1] > 0.0)) throw std::invalid_argument("no weighted points in set");
  for (const auto& c : dec.components) {
    if (!(component_quality(c, labels) > 0.0)) continue;
    for (Node p : c.members) fundamental[static_cast<int>(labels[p])] += weights[p];
  }
  return {fundamental[1] / total[1], fundamental[0] / total[0]};
}

inline PointSet stack_point_sets(const Eigen::Ref<const Eigen::MatrixXd>& r1, const Eigen::Ref<const Eigen::MatrixXd>& r2,
                                 std::span<const double> w1, std::span<const double> w2)
{
  if (r1.cols() != r2.cols()) throw std::invalid_argument("feature dimension mismatch");
  if (w1.size() != static_cast<std::size_t>(r1.rows()) || w2.size() != static_cast<std::size_t>(r2.rows())) {
    throw std::invalid_argument("weight vector length does not match feature rows");
  }
  PointSet ps;
  ps.points.resize(r1.rows() + r2.rows(), r1.cols());
  ps.points.topRows(r1.rows()) = r1;
  ps.points.bottomRows(r2.rows()) = r2;
  ps.labels.assign(static_cast<std::size_t>(r1.rows()), SetLabel::R1);
  ps.labels.resize(ps.size(), SetLabel::R2);
  ps.weights.assign(w1.begin(), w1.end());
  ps.weights.insert(ps.weights.end(), w2.begin(), w2.end());
  for (double w : ps.weights) {
    if (!std::isfinite(w) || w < 0.0) throw std::invalid_argument("weights must be finite and nonnegative");
  }
  return ps;
}

namespace detail {

/// Point order that depends only on coordinates and set labels: rows sorted
/// lexicographically; coincident rows interleave R1 and R2 by their rank
/// within their own set. Swapping R1 and R2 keeps every position.
inline std::vector<Node> canonical_order(const PointMatrix& p, std::span<const SetLabel> labels)
{
  std::vector<Node> order(static_cast<std::size_t>(p.rows()));
  std::iota(order.begin(), order.end(), 0);
  auto by_row = [&](Node a, Node b) {
    if (row_less(p, a, b)) return true;
    if (row_less(p, b, a)) return false;
    if (labels[a] != labels[b]) return labels[a] < labels[b];
    return a < b;
  };
  std::sort(order.begin(), order.end(), by_row);
  std::vector<std::size_t> rank(order.size(), 0);
  for (std::size_t i = 1; i < order.size(); ++i) {
    const Node a = order[i - 1];
    const Node b = order[i];
    if (row_equal(p, a, b) && labels[a] == labels[b]) rank[b] = rank[a] + 1;
  }
  std::sort(order.begin(), order.end(), [&](Node a, Node b) {
    if (row_less(p, a, b)) return true;
    if (row_less(p, b, a)) return false;
    if (rank[a] != rank[b]) return rank[a] < rank[b];
    if (labels[a] != labels[b]) return labels[a] < labels[b];
    return a < b;
  });
  return order;
}

} // namespace detail

/// Weighted DCA score of R2 against R1: harmonic mean of p_w, r_w and the
/// network quality of the distilled Delaunay graph.
inline ScoreReport s_wdca(const Eigen::Ref<const Eigen::MatrixXd>& r1, const Eigen::Ref<const Eigen::MatrixXd>& r2,
                          std::span<const double> w1, std::span<const double> w2, const DcaParams& params = {})
{
  params.validate();
  const PointSet stacked = stack_point_sets(r1, r2, w1, w2);
  if (!stacked.points.allFinite()) throw std::invalid_argument("features must be finite");
  // reject zero-weight sets before the expensive part
  const double total1 = std::accumulate(w1.begin(), w1.end(), 0.0);
  const double total2 = std::accumulate(w2.begin(), w2.end(), 0.0);
  if (!(total1 > 0.0) || !(total2 > 0.0)) throw std::invalid_argument("no weighted points in set");

  const auto order = detail::canonical_order(stacked.points, stacked.labels);
  PointSet ps;
  ps.points.resize(stacked.points.rows(), stacked.points.cols());
  for (std::size_t i = 0; i < order.size(); ++i) {
    ps.points.row(static_cast<Eigen::Index>(i)) = stacked.points.row(order[i]);
    ps.labels.push_back(stacked.labels[order[i]]);
    ps.weights.push_back(stacked.weights[order[i]]);
  }
  const PointMatrix points = jitter_duplicates(ps.points, ps.labels, derive_seed(params.seed, {1}));
  const auto delaunay = approx_delaunay(points, params.trials, derive_seed(params.seed, {2}), params.threads);
  const auto edges = params.edge_filter ? filter_edges(delaunay, points, *params.edge_filter) : delaunay;
  const auto dec = distill(edges, points, params.min_cluster_size);

  ScoreReport report;
  report.params = params;
  report.num_points_r1 = static_cast<std::size_t>(r1.rows());
  report.num_points_r2 = static_cast<std::size_t>(r2.rows());
  report.delaunay_edge_count = delaunay.size();
  report.filtered_edge_count = edges.size();
  report.distilled_edge_count = edges.size() - dec.cross_edges_removed;
  report.q = network_quality(dec, ps.labels);
  const auto pr = weighted_pr(dec, ps.labels, ps.weights);
  report.p_w = pr.precision;
  report.r_w = pr.recall;
  const double parts[3] = {report.p_w, report.r_w, report.q};
  report.s_wdca = harmonic_mean(parts);
  for (const auto& c : dec.components) {
    ComponentScore cs;
    cs.size = c.members.size();
    cs.quality = component_quality(c, ps.labels);
    for (Node p : c.members) (ps.labels[p] == SetLabel::R1 ? cs.weight_r1 : cs.weight_r2) += ps.weights[p];
    report.per_component.push_back(cs);
  }
  return report;
}

} // namespace graphdca
