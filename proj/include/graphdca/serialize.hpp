#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "dca.hpp"
#include "experiment.hpp"
#include "global_stats.hpp"
#include "groletest.hpp"
#include "perturb.hpp"

namespace graphdca {

using Json = nlohmann::ordered_json;

namespace detail {

/// NaN has no JSON spelling; it becomes null.
inline Json number_or_null(double v) { return std::isnan(v) ? Json(nullptr) : Json(v); }

template <typename T>
void read_if(const Json& j, const char* key, T& out)
{
  if (j.contains(key)) out = j.at(key).get<T>();
}

inline void reject_unknown_keys(const Json& j, std::initializer_list<const char*> known, const char* where)
{
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) throw std::invalid_argument(std::string("unknown key in ") + where + ": " + key);
  }
}

} // namespace detail

inline Json to_json(const DcaParams& p)
{
  return {{"T", p.trials},
          {"B", p.edge_filter ? Json(*p.edge_filter) : Json(nullptr)},
          {"mcs", p.min_cluster_size},
          {"seed", p.seed}};
}

inline DcaParams dca_params_from_json(const Json& j, DcaParams p = {})
{
  detail::reject_unknown_keys(j, {"T", "B", "mcs", "seed", "threads"}, "dca");
  detail::read_if(j, "T", p.trials);
  detail::read_if(j, "mcs", p.min_cluster_size);
  detail::read_if(j, "seed", p.seed);
  detail::read_if(j, "threads", p.threads);
  if (j.contains("B")) {
    if (j.at("B").is_null()) {
      p.edge_filter.reset();
    } else {
      p.edge_filter = j.at("B").get<double>();
    }
  }
  return p;
}

inline Json to_json(const ScoreReport& r)
{
  Json components = Json::array();
  for (const auto& c : r.per_component) {
    components.push_back({{"size", c.size}, {"q", c.quality}, {"w_r1", c.weight_r1}, {"w_r2", c.weight_r2}});
  }
  return {{"q", r.q},
          {"p_w", r.p_w},
          {"r_w", r.r_w},
          {"s_wdca", r.s_wdca},
          {"num_points_r1", r.num_points_r1},
          {"num_points_r2", r.num_points_r2},
          {"delaunay_edges", r.delaunay_edge_count},
          {"filtered_edges", r.filtered_edge_count},
          {"distilled_edges", r.distilled_edge_count},
          {"num_components", r.per_component.size()},
          {"params", to_json(r.params)},
          {"per_component", std::move(components)}};
}

inline Json to_json(const StatVector& s)
{
  Json j = Json::object();
  const auto values = s.values();
  for (std::size_t i = 0; i < StatVector::size; ++i) j[kStatNames[i]] = values[i];
  return j;
}

inline Json to_json(const GroletestConfig& c)
{
  return {{"main_kind", to_string(c.main_kind)},
          {"main_size", c.main_size},
          {"sub_kind", to_string(c.sub_kind)},
          {"num_subgraphs", c.num_subgraphs},
          {"sub_size", c.sub_size},
          {"central_degree", c.central_degree},
          {"attach_edges", c.attach_edges},
          {"random_extra_edges", c.random_extra_edges},
          {"seed", c.seed}};
}

/// Overrides fields of `c` present in `j`; "preset" ("desk" or "full")
/// selects the starting point.
inline GroletestConfig groletest_from_json(const Json& j, GroletestConfig c = GroletestConfig::desk())
{
  detail::reject_unknown_keys(j, {"preset", "main_kind", "main_size", "sub_kind", "num_subgraphs", "sub_size",
                                  "central_degree", "attach_edges", "random_extra_edges", "seed"},
                              "groletest");
  if (j.contains("preset")) {
    const auto preset = j.at("preset").get<std::string>();
    if (preset == "desk") {
      c = GroletestConfig::desk();
    } else if (preset == "full") {
      c = GroletestConfig::full();
    } else {
      throw std::invalid_argument("unknown preset: " + preset);
    }
  }
  if (j.contains("main_kind")) c.main_kind = parse_main_kind(j.at("main_kind").get<std::string>());
  if (j.contains("sub_kind")) c.sub_kind = parse_subgraph_kind(j.at("sub_kind").get<std::string>());
  detail::read_if(j, "main_size", c.main_size);
  detail::read_if(j, "num_subgraphs", c.num_subgraphs);
  detail::read_if(j, "sub_size", c.sub_size);
  detail::read_if(j, "central_degree", c.central_degree);
  detail::read_if(j, "attach_edges", c.attach_edges);
  detail::read_if(j, "random_extra_edges", c.random_extra_edges);
  detail::read_if(j, "seed", c.seed);
  return c;
}

/// Sidecar written next to a generated edge list.
inline Json labeled_graph_sidecar(const LabeledGraph& lg, const GroletestConfig& cfg)
{
  Json subgraphs = Json::array();
  for (const auto& s : lg.subgraph_members) subgraphs.push_back(s.members);
  return {{"num_nodes", lg.graph.num_nodes()},
          {"num_edges", lg.graph.num_edges()},
          {"central_nodes", lg.central_nodes.members},
          {"subgraph_members", std::move(subgraphs)},
          {"main_members", lg.main_members.members},
          {"config", to_json(cfg)},
          {"seed", cfg.seed}};
}

/// Subgraph member sets from a generate sidecar.
inline std::vector<NodeSubset> subgraph_members_from_sidecar(const Json& j, std::size_t parent_size)
{
  std::vector<NodeSubset> out;
  for (const auto& s : j.at("subgraph_members")) out.emplace_back(s.get<std::vector<Node>>(), parent_size);
  return out;
}

inline Json to_json(const PerturbReport& r, std::string_view mode)
{
  return {{"mode", mode},
          {"requested_fraction", r.requested_fraction},
          {"changed_edges", r.changed_edges},
          {"num_nodes", r.graph.num_nodes()},
          {"num_edges", r.graph.num_edges()},
          {"seed", r.seed}};
}

inline Json to_json(const GraphWaveParams& p)
{
  Json j = {{"cheb_order", p.cheb_order},
            {"num_sample_points", p.num_sample_points},
            {"sample_max", p.sample_max},
            {"eta", p.eta},
            {"gamma", p.gamma}};
  j["scales"] = p.scales ? Json::array({p.scales->first, p.scales->second}) : Json(nullptr);
  return j;
}

inline GraphWaveParams graphwave_params_from_json(const Json& j, const GraphWaveParams& base = {})
{
  GraphWaveParams p = base;
  detail::reject_unknown_keys(j, {"cheb_order", "num_sample_points", "sample_max", "eta", "gamma", "scales"},
                              "graphwave");
  detail::read_if(j, "cheb_order", p.cheb_order);
  detail::read_if(j, "num_sample_points", p.num_sample_points);
  detail::read_if(j, "sample_max", p.sample_max);
  detail::read_if(j, "eta", p.eta);
  detail::read_if(j, "gamma", p.gamma);
  if (j.contains("scales")) {
    if (j.at("scales").is_null()) {
      p.scales.reset();
    } else {
      const auto s = j.at("scales").get<std::vector<double>>();
      if (s.size() != 2) throw std::invalid_argument("scales must be a pair");
      p.scales = std::make_pair(s[0], s[1]);
    }
  }
  return p;
}

inline Json to_json(const ExperimentConfig& c)
{
  return {{"experiment", to_string(c.experiment)},
          {"groletest", to_json(c.groletest)},
          {"extractor", to_string(c.extractor)},
          {"graphwave", to_json(c.graphwave)},
          {"weighting", to_string(c.weighting)},
          {"dca", to_json(c.dca)},
          {"repeats", c.repeats},
          {"fractions", c.fractions},
          {"base_seed", c.base_seed},
          {"perturb", to_string(c.perturb)},
          {"pair_same_seed", c.pair_same_seed}};
}

inline ExperimentConfig experiment_config_from_json(const Json& j, ExperimentConfig c = {})
{
  detail::reject_unknown_keys(j, {"experiment", "groletest", "extractor", "graphwave", "weighting", "dca",
                                  "repeats", "fractions", "base_seed", "perturb", "pair_same_seed", "threads"},
                              "experiment config");
  if (j.contains("experiment")) c.experiment = parse_experiment_kind(j.at("experiment").get<std::string>());
  if (j.contains("groletest")) c.groletest = groletest_from_json(j.at("groletest"), c.groletest);
  if (j.contains("extractor")) c.extractor = parse_extractor_kind(j.at("extractor").get<std::string>());
  if (j.contains("graphwave")) c.graphwave = graphwave_params_from_json(j.at("graphwave"), c.graphwave);
  if (j.contains("weighting")) c.weighting = parse_weighting(j.at("weighting").get<std::string>());
  if (j.contains("dca")) c.dca = dca_params_from_json(j.at("dca"), c.dca);
  if (j.contains("perturb")) c.perturb = parse_perturb_mode(j.at("perturb").get<std::string>());
  detail::read_if(j, "repeats", c.repeats);
  detail::read_if(j, "fractions", c.fractions);
  detail::read_if(j, "base_seed", c.base_seed);
  detail::read_if(j, "pair_same_seed", c.pair_same_seed);
  detail::read_if(j, "threads", c.threads);
  return c;
}

inline Json to_json(const ExperimentReport& r)
{
  Json rows = Json::array();
  for (const auto& row : r.rows) {
    rows.push_back({{"experiment", row.experiment},
                    {"h", row.h},
                    {"t_or_fraction", row.t_or_fraction},
                    {"extractor", row.extractor},
                    {"weighting", row.weighting},
                    {"repeat", row.repeat},
                    {"seed", row.seed},
                    {"q", row.q},
                    {"p_w", row.p_w},
                    {"r_w", row.r_w},
                    {"s_wdca", row.s_wdca},
                    {"s_gstats", detail::number_or_null(row.s_gstats)}});
  }
  Json cells = Json::array();
  for (const auto& c : r.cells) {
    Json gstats = Json::array();
    for (double v : c.s_gstats) gstats.push_back(v);
    cells.push_back({{"h", c.h},
                     {"t_or_fraction", c.t_or_fraction},
                     {"mean_s_wdca", c.mean_s_wdca},
                     {"s_wdca", c.s_wdca},
                     {"mean_s_gstats", detail::number_or_null(c.mean_s_gstats)},
                     {"s_gstats", std::move(gstats)}});
  }
  return {{"version", kVersion},
          {"config", to_json(r.config)},
          {"cells", std::move(cells)},
          {"rows", std::move(rows)}};
}

} // namespace graphdca
