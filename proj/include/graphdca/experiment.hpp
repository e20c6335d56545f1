#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <iomanip>
#include <iterator>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dca.hpp"
#include "features.hpp"
#include "global_stats.hpp"
#include "graph.hpp"
#include "graphwave.hpp"
#include "groletest.hpp"
#include "parallel.hpp"
#include "perturb.hpp"
#include "random.hpp"

namespace graphdca {

inline constexpr std::string_view kVersion = "0.1.0";

enum class ExperimentKind { confusion_matrix, main_robustness, rewire_curve };
enum class ExtractorKind { manual, graphwave, external };
enum class Weighting { central, uniform };
enum class PerturbMode { subgraph, config };

inline std::string_view to_string(ExperimentKind k)
{
  switch (k) {
    case ExperimentKind::confusion_matrix: return "confusion_matrix";
    case ExperimentKind::main_robustness: return "main_robustness";
    case ExperimentKind::rewire_curve: return "rewire_curve";
  }
  return "?";
}

inline std::string_view to_string(ExtractorKind k)
{
  switch (k) {
    case ExtractorKind::manual: return "manual";
    case ExtractorKind::graphwave: return "graphwave";
    case ExtractorKind::external: return "external";
  }
  return "?";
}

inline std::string_view to_string(Weighting w) { return w == Weighting::central ? "central" : "uniform"; }
inline std::string_view to_string(PerturbMode m) { return m == PerturbMode::subgraph ? "subgraph" : "config"; }

inline ExperimentKind parse_experiment_kind(std::string_view s)
{
  for (auto k : {ExperimentKind::confusion_matrix, ExperimentKind::main_robustness, ExperimentKind::rewire_curve}) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown experiment: " + std::string(s));
}

inline ExtractorKind parse_extractor_kind(std::string_view s)
{
  for (auto k : {ExtractorKind::manual, ExtractorKind::graphwave, ExtractorKind::external}) {
    if (to_string(k) == s) return k;
  }
  throw std::invalid_argument("unknown extractor: " + std::string(s));
}

inline Weighting parse_weighting(std::string_view s)
{
  if (s == "central") return Weighting::central;
  if (s == "uniform") return Weighting::uniform;
  throw std::invalid_argument("unknown weighting: " + std::string(s));
}

inline PerturbMode parse_perturb_mode(std::string_view s)
{
  if (s == "subgraph") return PerturbMode::subgraph;
  if (s == "config") return PerturbMode::config;
  throw std::invalid_argument("unknown perturbation mode: " + std::string(s));
}

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::confusion_matrix;
  GroletestConfig groletest = GroletestConfig::desk();
  ExtractorKind extractor = ExtractorKind::manual;
  GraphWaveParams graphwave;
  Weighting weighting = Weighting::central;
  DcaParams dca;
  std::size_t repeats = 3;
  std::vector<double> fractions = {0.0, 0.01, 0.05, 0.1, 0.25, 0.5, 1.0};
  std::uint64_t base_seed = 0;
  PerturbMode perturb = PerturbMode::subgraph;  // rewire_curve only
  bool pair_same_seed = false;                  // confusion_matrix: both graphs of a pair share a seed
  std::size_t threads = 0;                      // task pool size; 0: default_thread_count()

  void validate() const
  {
    if (repeats < 1) throw std::invalid_argument("repeats must be >= 1");
    if (extractor == ExtractorKind::external) {
      throw std::invalid_argument("experiments need a built-in extractor (manual or graphwave)");
    }
    for (double f : fractions) {
      if (!(f >= 0.0 && f <= 1.0)) throw std::invalid_argument("fractions must lie in [0, 1]");
    }
    if (!std::is_sorted(fractions.begin(), fractions.end())) {
      throw std::invalid_argument("fractions must be sorted ascending");
    }
    if (experiment == ExperimentKind::rewire_curve && fractions.empty()) {
      throw std::invalid_argument("rewire_curve needs at least one fraction");
    }
    groletest.validate();
    dca.validate();
    graphwave.validate();
  }
};

/// One (cell, repeat) result. s_gstats is NaN where not computed.
struct ExperimentRow {
  std::string experiment;
  std::string h;
  std::string t_or_fraction;
  std::string extractor;
  std::string weighting;
  std::size_t repeat = 0;
  std::uint64_t seed = 0;
  double q = 0.0;
  double p_w = 0.0;
  double r_w = 0.0;
  double s_wdca = 0.0;
  double s_gstats = std::numeric_limits<double>::quiet_NaN();
};

struct ExperimentCell {
  std::string h;
  std::string t_or_fraction;
  std::vector<double> s_wdca;  // per repeat
  std::vector<double> s_gstats;
  double mean_s_wdca = 0.0;
  double mean_s_gstats = std::numeric_limits<double>::quiet_NaN();
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ExperimentRow> rows;
  std::vector<ExperimentCell> cells;

  const ExperimentCell& cell(std::string_view h, std::string_view t) const
  {
    for (const auto& c : cells) {
      if (c.h == h && c.t_or_fraction == t) return c;
    }
    throw std::out_of_range("no cell " + std::string(h) + "/" + std::string(t));
  }
};

inline double mean_of(const std::vector<double>& v)
{
  if (v.empty()) return std::numeric_limits<double>::quiet_NaN();
  double s = 0.0;
  for (double x : v) s += x;
  return s / static_cast<double>(v.size());
}

inline std::string format_fraction(double f)
{
  std::ostringstream s;
  s << f;
  return s.str();
}

inline constexpr std::string_view kExperimentCsvHeader =
    "experiment,h,t_or_fraction,extractor,weighting,repeat,seed,q,p_w,r_w,s_wdca,s_gstats";

inline void write_experiment_csv(std::ostream& out, const ExperimentReport& report)
{
  out << kExperimentCsvHeader << '\n';
  out << std::setprecision(17);
  for (const auto& r : report.rows) {
    out << r.experiment << ',' << r.h << ',' << r.t_or_fraction << ',' << r.extractor << ',' << r.weighting
        << ',' << r.repeat << ',' << r.seed << ',' << r.q << ',' << r.p_w << ',' << r.r_w << ',' << r.s_wdca
        << ',';
    if (!std::isnan(r.s_gstats)) out << r.s_gstats;
    out << '\n';
  }
}

namespace detail {

/// Features and weights of one graph, aligned row by row.
struct Represented {
  Eigen::MatrixXd features;
  std::vector<double> weights;
};

/// GraphWave needs a connected graph, so it runs on the LCC and the weights
/// follow the surviving nodes.
inline Represented represent(const ExperimentConfig& cfg, const Graph& g, const std::vector<double>& weights,
                             std::size_t threads)
{
  if (cfg.extractor == ExtractorKind::manual) return {manual_features(g, threads).rows, weights};
  if (is_connected(g)) return {graphwave_features(g, cfg.graphwave, threads).rows, weights};
  auto lcc = preprocess(g);
  Represented out{graphwave_features(lcc.graph, cfg.graphwave, threads).rows, {}};
  out.weights.reserve(lcc.original_ids.size());
  for (auto id : lcc.original_ids) out.weights.push_back(weights[id]);
  return out;
}

inline std::vector<double> weights_for(const ExperimentConfig& cfg, const LabeledGraph& lg)
{
  return cfg.weighting == Weighting::central ? central_weighting(lg) : uniform_weighting(lg.graph.num_nodes());
}

struct Task {
  std::string h;
  std::string t;
  std::size_t repeat = 0;
  std::uint64_t seed = 0;
};

inline ExperimentRow score_row(const ExperimentConfig& cfg, const Task& task, const Represented& a,
                               const Represented& b, std::size_t threads)
{
  DcaParams dca = cfg.dca;
  dca.seed = derive_seed(task.seed, {3});
  dca.threads = threads;
  const auto score = s_wdca(a.features, b.features, a.weights, b.weights, dca);
  ExperimentRow row;
  row.experiment = std::string(to_string(cfg.experiment));
  row.h = task.h;
  row.t_or_fraction = task.t;
  row.extractor = std::string(to_string(cfg.extractor));
  row.weighting = std::string(to_string(cfg.weighting));
  row.repeat = task.repeat;
  row.seed = task.seed;
  row.q = score.q;
  row.p_w = score.p_w;
  row.r_w = score.r_w;
  row.s_wdca = score.s_wdca;
  return row;
}

/// Runs the tasks over a pool. With more than one outer worker, each DCA
/// run is single-threaded; results do not depend on thread counts.
template <typename Fn>
std::vector<ExperimentRow> run_tasks(const ExperimentConfig& cfg, const std::vector<Task>& tasks, Fn&& run)
{
  const std::size_t outer = std::min(cfg.threads == 0 ? default_thread_count() : cfg.threads, tasks.size());
  const std::size_t inner = outer > 1 ? 1 : cfg.dca.threads;
  std::vector<ExperimentRow> rows(tasks.size());
  parallel_for(tasks.size(), outer, [&](std::size_t i) { rows[i] = run(tasks[i], inner); });
  return rows;
}

/// Groups rows into cells in first-appearance order.
inline std::vector<ExperimentCell> collect_cells(const std::vector<ExperimentRow>& rows)
{
  std::vector<ExperimentCell> cells;
  for (const auto& r : rows) {
    auto it = std::find_if(cells.begin(), cells.end(), [&](const ExperimentCell& c) {
      return c.h == r.h && c.t_or_fraction == r.t_or_fraction;
    });
    if (it == cells.end()) {
      cells.push_back({r.h, r.t_or_fraction, {}, {}, 0.0, std::numeric_limits<double>::quiet_NaN()});
      it = std::prev(cells.end());
    }
    it->s_wdca.push_back(r.s_wdca);
    if (!std::isnan(r.s_gstats)) it->s_gstats.push_back(r.s_gstats);
  }
  for (auto& c : cells) {
    c.mean_s_wdca = mean_of(c.s_wdca);
    c.mean_s_gstats = mean_of(c.s_gstats);
  }
  return cells;
}

inline GroletestConfig groletest_with(const ExperimentConfig& cfg, MainKind main, SubgraphKind sub,
                                      std::uint64_t seed)
{
  GroletestConfig g = cfg.groletest;
  g.main_kind = main;
  g.sub_kind = sub;
  g.seed = seed;
  return g;
}

} // namespace detail

/// Mean s_wdca between cycle-main graphs with subgraph types h and t, for
/// all 5 x 5 pairs. Each repeat draws a fresh pair of graphs.
inline ExperimentReport run_confusion_matrix(const ExperimentConfig& cfg)
{
  cfg.validate();
  const auto exp = static_cast<std::uint64_t>(ExperimentKind::confusion_matrix);
  std::vector<detail::Task> tasks;
  for (std::size_t i = 0; i < kAllSubgraphKinds.size(); ++i) {
    for (std::size_t j = 0; j < kAllSubgraphKinds.size(); ++j) {
      for (std::size_t r = 0; r < cfg.repeats; ++r) {
        tasks.push_back({std::string(to_string(kAllSubgraphKinds[i])), std::string(to_string(kAllSubgraphKinds[j])),
                         r, derive_seed(cfg.base_seed, {exp, i, j, 0, r})});
      }
    }
  }
  auto rows = detail::run_tasks(cfg, tasks, [&](const detail::Task& task, std::size_t threads) {
    const auto h = parse_subgraph_kind(task.h);
    const auto t = parse_subgraph_kind(task.t);
    const auto seed1 = derive_seed(task.seed, {1});
    const auto seed2 = cfg.pair_same_seed ? seed1 : derive_seed(task.seed, {2});
    const auto g1 = assemble(detail::groletest_with(cfg, MainKind::cycle, h, seed1));
    const auto g2 = assemble(detail::groletest_with(cfg, MainKind::cycle, t, seed2));
    const auto a = detail::represent(cfg, g1.graph, detail::weights_for(cfg, g1), threads);
    const auto b = detail::represent(cfg, g2.graph, detail::weights_for(cfg, g2), threads);
    auto row = detail::score_row(cfg, task, a, b, threads);
    row.s_gstats = s_gstats(compute_stats(g1.graph, threads), compute_stats(g2.graph, threads));
    return row;
  });
  ExperimentReport report{cfg, std::move(rows), {}};
  report.cells = detail::collect_cells(report.rows);
  return report;
}

/// Per subgraph type, compares a cycle-main graph against another cycle-main
/// graph (t = "cycle") and against a tree-main graph (t = "tree").
inline ExperimentReport run_main_robustness(const ExperimentConfig& cfg)
{
  cfg.validate();
  const auto exp = static_cast<std::uint64_t>(ExperimentKind::main_robustness);
  std::vector<detail::Task> tasks;
  for (std::size_t i = 0; i < kAllSubgraphKinds.size(); ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      for (std::size_t r = 0; r < cfg.repeats; ++r) {
        // the reference graph depends only on (i, r) so both series share it
        tasks.push_back({std::string(to_string(kAllSubgraphKinds[i])), j == 0 ? "cycle" : "tree", r,
                         derive_seed(cfg.base_seed, {exp, i, j, 0, r})});
      }
    }
  }
  auto rows = detail::run_tasks(cfg, tasks, [&](const detail::Task& task, std::size_t threads) {
    const auto h = parse_subgraph_kind(task.h);
    const auto i = static_cast<std::uint64_t>(std::find(kAllSubgraphKinds.begin(), kAllSubgraphKinds.end(), h) -
                                              kAllSubgraphKinds.begin());
    const auto ref_seed = derive_seed(cfg.base_seed, {exp, i, 2, 0, task.repeat});
    const auto other = parse_main_kind(task.t);
    const auto g1 = assemble(detail::groletest_with(cfg, MainKind::cycle, h, ref_seed));
    const auto g2 = assemble(detail::groletest_with(cfg, other, h, derive_seed(task.seed, {2})));
    const auto a = detail::represent(cfg, g1.graph, detail::weights_for(cfg, g1), threads);
    const auto b = detail::represent(cfg, g2.graph, detail::weights_for(cfg, g2), threads);
    auto row = detail::score_row(cfg, task, a, b, threads);
    row.s_gstats = s_gstats(compute_stats(g1.graph, threads), compute_stats(g2.graph, threads));
    return row;
  });
  ExperimentReport report{cfg, std::move(rows), {}};
  report.cells = detail::collect_cells(report.rows);
  return report;
}

/// Scores perturbed copies of one base graph (built from cfg.groletest)
/// against the original, per fraction and repeat.
inline ExperimentReport run_rewire_curve(const ExperimentConfig& cfg)
{
  cfg.validate();
  const auto exp = static_cast<std::uint64_t>(ExperimentKind::rewire_curve);
  GroletestConfig base_cfg = cfg.groletest;
  base_cfg.seed = derive_seed(cfg.base_seed, {exp, 0, 0});
  const auto base = assemble(base_cfg);
  const auto weights = detail::weights_for(cfg, base);
  const auto reference = detail::represent(cfg, base.graph, weights, cfg.dca.threads);
  const auto base_stats = compute_stats(base.graph, cfg.dca.threads);
  const std::string h(to_string(cfg.groletest.sub_kind));

  std::vector<detail::Task> tasks;
  for (std::size_t k = 0; k < cfg.fractions.size(); ++k) {
    for (std::size_t r = 0; r < cfg.repeats; ++r) {
      tasks.push_back({h, format_fraction(cfg.fractions[k]), r, derive_seed(cfg.base_seed, {exp, 0, 0, k, r})});
    }
  }
  auto rows = detail::run_tasks(cfg, tasks, [&](const detail::Task& task, std::size_t threads) {
    const std::size_t k = (&task - tasks.data()) / cfg.repeats;
    const double fraction = cfg.fractions[k];
    const auto perturbed =
        cfg.perturb == PerturbMode::subgraph
            ? subgraph_rewire_all(base.graph, base.subgraph_members, fraction, derive_seed(task.seed, {1}))
            : configuration_rewire(base.graph, fraction, derive_seed(task.seed, {1}));
    const auto b = detail::represent(cfg, perturbed.graph, weights, threads);
    auto row = detail::score_row(cfg, task, reference, b, threads);
    row.s_gstats = s_gstats(base_stats, compute_stats(perturbed.graph, threads));
    return row;
  });
  ExperimentReport report{cfg, std::move(rows), {}};
  report.cells = detail::collect_cells(report.rows);
  return report;
}

inline ExperimentReport run_experiment(const ExperimentConfig& cfg)
{
  switch (cfg.experiment) {
    case ExperimentKind::confusion_matrix: return run_confusion_matrix(cfg);
    case ExperimentKind::main_robustness: return run_main_robustness(cfg);
    case ExperimentKind::rewire_curve: return run_rewire_curve(cfg);
  }
  throw std::invalid_argument("unknown experiment");
}

} // namespace graphdca
