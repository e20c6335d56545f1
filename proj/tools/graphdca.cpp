// Command-line front end: generate, extract, compare, stats, perturb, experiment.
//
// Exit codes: 0 success, 2 configuration/input error, 3 runtime failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <graphdca/graphdca.hpp>

namespace {

using namespace graphdca;

constexpr int kConfigError = 2;
constexpr int kRuntimeError = 3;

void emit_json(const Json& j, const std::string& path)
{
  if (path.empty() || path == "-") {
    std::cout << j.dump(2) << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << j.dump(2) << '\n';
}

Json read_json_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return Json::parse(in);
}

bool ends_with(const std::string& s, std::string_view suffix)
{
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

/// One float per line.
std::vector<double> read_weight_file(const std::string& path)
{
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open weights: " + path);
  std::vector<double> w;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      w.push_back(std::stod(line));
    } catch (const std::exception&) {
      throw std::invalid_argument("bad weight in " + path + ": " + line);
    }
  }
  return w;
}

/// Weights for `n` rows: uniform when no file is given, central-node
/// weighting from a generate sidecar (.json), otherwise a weight file.
std::vector<double> load_weights(const std::string& path, std::size_t n)
{
  if (path.empty()) return uniform_weighting(n);
  if (ends_with(path, ".json")) {
    const auto j = read_json_file(path);
    std::vector<double> w(n, 0.0);
    for (Node c : j.at("central_nodes").get<std::vector<Node>>()) {
      if (c >= n) throw std::invalid_argument("central node outside feature rows: " + std::to_string(c));
      w[c] = 1.0;
    }
    return w;
  }
  auto w = read_weight_file(path);
  if (w.size() != n) {
    throw std::invalid_argument("weight file " + path + " has " + std::to_string(w.size()) + " entries, expected " +
                                std::to_string(n));
  }
  return w;
}

/// Subsets from a generate sidecar or from a node-list file with one subset per line.
std::vector<NodeSubset> load_members(const std::string& path, std::size_t parent_size)
{
  if (ends_with(path, ".json")) return subgraph_members_from_sidecar(read_json_file(path), parent_size);
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open members: " + path);
  std::vector<NodeSubset> out;
  std::string line;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    std::vector<Node> ids;
    std::int64_t id = 0;
    while (fields >> id) {
      if (id < 0) throw std::invalid_argument("negative node id in " + path);
      ids.push_back(static_cast<Node>(id));
    }
    if (!fields.eof()) throw std::invalid_argument("malformed member line in " + path + ": " + line);
    out.emplace_back(std::move(ids), parent_size);
  }
  if (out.empty()) throw std::invalid_argument("no member sets in " + path);
  return out;
}

struct GraphWaveFlags {
  std::size_t cheb_order = 30;
  std::size_t samples = 25;
  double sample_max = 100.0;
  double eta = 0.85;
  double gamma = 0.95;
  std::vector<double> scales;

  void add_to(CLI::App* app)
  {
    app->add_option("--cheb-order", cheb_order, "Chebyshev order for heat wavelets")->capture_default_str();
    app->add_option("--samples", samples, "Characteristic-function sample points")->capture_default_str();
    app->add_option("--sample-max", sample_max, "Largest sample point")->capture_default_str();
    app->add_option("--eta", eta, "Auto-scale parameter for the larger scale")->capture_default_str();
    app->add_option("--gamma", gamma, "Auto-scale parameter for the smaller scale")->capture_default_str();
    app->add_option("--scales", scales, "Explicit heat scales (two values)")->expected(2);
  }

  GraphWaveParams params() const
  {
    GraphWaveParams p;
    p.cheb_order = cheb_order;
    p.num_sample_points = samples;
    p.sample_max = sample_max;
    p.eta = eta;
    p.gamma = gamma;
    if (!scales.empty()) p.scales = std::make_pair(scales[0], scales[1]);
    return p;
  }
};

FeatureMatrix extract(const Graph& g, const std::string& extractor, const GraphWaveParams& gw)
{
  const auto kind = parse_extractor_kind(extractor);
  if (kind == ExtractorKind::manual) return manual_features(g);
  if (kind == ExtractorKind::graphwave) return graphwave_features(g, gw);
  throw std::invalid_argument("the external extractor has no built-in implementation; pass feature files");
}

struct DcaFlags {
  std::size_t trials = 10000;
  std::optional<double> b;
  std::size_t mcs = 2;
  std::uint64_t seed = 0;

  void add_to(CLI::App* app)
  {
    app->add_option("--T", trials, "Number of Delaunay ray trials")->capture_default_str();
    app->add_option("--B", b, "Edge-filter multiplier (filtering off when absent)");
    app->add_option("--mcs", mcs, "Minimum cluster size")->capture_default_str();
    app->add_option("--seed", seed, "Random seed")->capture_default_str();
  }

  DcaParams params() const
  {
    DcaParams p;
    p.trials = trials;
    p.edge_filter = b;
    p.min_cluster_size = mcs;
    p.seed = seed;
    return p;
  }
};

} // namespace

int main(int argc, char** argv)
{
  CLI::App app{"Local-structural graph similarity with weighted Delaunay component analysis"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(graphdca::kVersion));

  // generate
  auto* gen = app.add_subcommand("generate", "Generate a Groletest benchmark graph");
  std::string gen_preset = "desk";
  std::string gen_main = "cycle";
  std::string gen_sub = "star";
  std::optional<std::size_t> gen_main_size, gen_num_sub, gen_sub_size, gen_central, gen_attach, gen_extra;
  std::uint64_t gen_seed = 0;
  std::string gen_out;
  std::string gen_sidecar;
  gen->add_option("--preset", gen_preset, "desk or full")->capture_default_str();
  gen->add_option("--main", gen_main, "Main graph: cycle or tree")->capture_default_str();
  gen->add_option("--sub", gen_sub, "Subgraph: star, wheel, diamond, friendship, random")->capture_default_str();
  gen->add_option("--main-size", gen_main_size);
  gen->add_option("--num-subgraphs", gen_num_sub);
  gen->add_option("--sub-size", gen_sub_size);
  gen->add_option("--central-degree", gen_central);
  gen->add_option("--attach-edges", gen_attach);
  gen->add_option("--random-extra-edges", gen_extra);
  gen->add_option("--seed", gen_seed)->capture_default_str();
  gen->add_option("-o,--out", gen_out, "Edge-list output")->required();
  gen->add_option("--sidecar", gen_sidecar, "JSON sidecar path (default: <out>.json)");

  // extract
  auto* ext = app.add_subcommand("extract", "Compute node features of a graph");
  std::string ext_in;
  std::string ext_extractor = "manual";
  std::string ext_out;
  bool ext_lcc = false;
  GraphWaveFlags ext_gw;
  ext->add_option("graph", ext_in, "Edge-list input")->required();
  ext->add_option("--extractor", ext_extractor, "manual or graphwave")->capture_default_str();
  ext->add_option("-o,--out", ext_out, "Feature CSV output (a .bin sidecar is written next to it)")->required();
  ext->add_flag("--lcc", ext_lcc, "Reduce the graph to its largest connected component first");
  ext_gw.add_to(ext);

  // compare
  auto* cmp = app.add_subcommand("compare", "Score two feature sets (or two graphs) with s_wDCA");
  std::vector<std::string> cmp_features;
  std::vector<std::string> cmp_graphs;
  std::string cmp_extractor = "manual";
  std::string cmp_w1;
  std::string cmp_w2;
  std::string cmp_out;
  bool cmp_standardize = false;
  DcaFlags cmp_dca;
  GraphWaveFlags cmp_gw;
  auto* cmp_feat_opt = cmp->add_option("--features", cmp_features, "Two feature CSVs (R1 R2)")->expected(2);
  auto* cmp_graph_opt = cmp->add_option("--graphs", cmp_graphs, "Two edge lists (R1 R2)")->expected(2);
  cmp_feat_opt->excludes(cmp_graph_opt);
  cmp->add_option("--extractor", cmp_extractor, "Extractor used with --graphs")->capture_default_str();
  cmp->add_option("--weights1", cmp_w1, "Weights of R1: one float per line, or a generate sidecar (.json)");
  cmp->add_option("--weights2", cmp_w2, "Weights of R2");
  cmp->add_flag("--standardize", cmp_standardize, "Z-score feature columns over both sets");
  cmp->add_option("-o,--out", cmp_out, "JSON report output (default stdout)");
  cmp_dca.add_to(cmp);
  cmp_gw.add_to(cmp);

  // stats
  auto* st = app.add_subcommand("stats", "Global graph statistics");
  std::string st_in;
  std::vector<std::string> st_compare;
  std::string st_out;
  auto* st_in_opt = st->add_option("graph", st_in, "Edge-list input");
  auto* st_cmp_opt = st->add_option("--compare", st_compare, "Two edge lists; also reports s_gstats")->expected(2);
  st_in_opt->excludes(st_cmp_opt);
  st->add_option("-o,--out", st_out, "JSON output (default stdout)");

  // perturb
  auto* per = app.add_subcommand("perturb", "Rewire a graph");
  std::string per_in;
  std::string per_mode = "config";
  double per_fraction = 0.0;
  std::uint64_t per_seed = 0;
  std::string per_members;
  std::string per_out;
  std::string per_report;
  per->add_option("graph", per_in, "Edge-list input")->required();
  per->add_option("--mode", per_mode, "config or subgraph")->capture_default_str();
  per->add_option("--fraction", per_fraction, "Fraction of edges to change")->required();
  per->add_option("--seed", per_seed)->capture_default_str();
  per->add_option("--members", per_members, "Subgraph node sets: generate sidecar (.json) or one set per line");
  per->add_option("-o,--out", per_out, "Edge-list output")->required();
  per->add_option("--report", per_report, "JSON report path (default: <out>.json)");

  // experiment
  auto* ex = app.add_subcommand("experiment", "Run a benchmark experiment");
  std::string ex_config;
  std::optional<std::string> ex_kind, ex_extractor, ex_weighting, ex_preset, ex_sub, ex_mode;
  std::optional<std::size_t> ex_repeats, ex_trials, ex_mcs;
  std::optional<double> ex_b;
  std::optional<std::uint64_t> ex_seed;
  std::vector<double> ex_fractions;
  bool ex_same_seed = false;
  std::string ex_csv;
  std::string ex_json;
  ex->add_option("--config", ex_config, "JSON experiment config; flags override it");
  ex->add_option("--kind", ex_kind, "confusion_matrix, main_robustness or rewire_curve");
  ex->add_option("--extractor", ex_extractor, "manual or graphwave");
  ex->add_option("--weighting", ex_weighting, "central or uniform");
  ex->add_option("--preset", ex_preset, "Groletest preset: desk or full");
  ex->add_option("--sub", ex_sub, "Subgraph type of the rewire_curve base graph");
  ex->add_option("--mode", ex_mode, "rewire_curve perturbation: subgraph or config");
  ex->add_option("--repeats", ex_repeats);
  ex->add_option("--fractions", ex_fractions, "rewire_curve fractions, ascending");
  ex->add_option("--seed", ex_seed, "Base seed");
  ex->add_option("--T", ex_trials);
  ex->add_option("--B", ex_b);
  ex->add_option("--mcs", ex_mcs);
  ex->add_flag("--pair-same-seed", ex_same_seed, "confusion_matrix: both graphs of a pair share a seed");
  ex->add_option("--csv", ex_csv, "CSV output (default stdout)");
  ex->add_option("--json", ex_json, "JSON report output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigError;
  }

  try {
    if (*gen) {
      GroletestConfig cfg = gen_preset == "full" ? GroletestConfig::full()
                            : gen_preset == "desk" ? GroletestConfig::desk()
                                                   : throw std::invalid_argument("unknown preset: " + gen_preset);
      cfg.main_kind = parse_main_kind(gen_main);
      cfg.sub_kind = parse_subgraph_kind(gen_sub);
      if (gen_main_size) cfg.main_size = *gen_main_size;
      if (gen_num_sub) cfg.num_subgraphs = *gen_num_sub;
      if (gen_sub_size) cfg.sub_size = *gen_sub_size;
      if (gen_central) cfg.central_degree = *gen_central;
      if (gen_attach) cfg.attach_edges = *gen_attach;
      if (gen_extra) cfg.random_extra_edges = *gen_extra;
      cfg.seed = gen_seed;
      const auto lg = assemble(cfg);
      write_edge_list_file(gen_out, lg.graph);
      emit_json(labeled_graph_sidecar(lg, cfg), gen_sidecar.empty() ? gen_out + ".json" : gen_sidecar);
    } else if (*ext) {
      auto g = read_edge_list_file(ext_in).graph;
      if (ext_lcc) g = preprocess(g).graph;
      save_features(ext_out, extract(g, ext_extractor, ext_gw.params()));
    } else if (*cmp) {
      FeatureMatrix a;
      FeatureMatrix b;
      if (!cmp_features.empty()) {
        a = load_features(cmp_features[0]);
        b = load_features(cmp_features[1]);
      } else if (!cmp_graphs.empty()) {
        a = extract(read_edge_list_file(cmp_graphs[0]).graph, cmp_extractor, cmp_gw.params());
        b = extract(read_edge_list_file(cmp_graphs[1]).graph, cmp_extractor, cmp_gw.params());
      } else {
        throw std::invalid_argument("compare needs --features or --graphs");
      }
      if (cmp_standardize) standardize_jointly(a, b);
      const auto w1 = load_weights(cmp_w1, a.num_rows());
      const auto w2 = load_weights(cmp_w2, b.num_rows());
      const auto report = s_wdca(a.rows, b.rows, w1, w2, cmp_dca.params());
      Json j = to_json(report);
      j["extractor_r1"] = a.extractor_id;
      j["extractor_r2"] = b.extractor_id;
      j["standardized"] = cmp_standardize;
      emit_json(j, cmp_out);
    } else if (*st) {
      if (!st_compare.empty()) {
        const auto sa = compute_stats(read_edge_list_file(st_compare[0]).graph);
        const auto sb = compute_stats(read_edge_list_file(st_compare[1]).graph);
        Json terms = Json::object();
        const auto t = gstats_terms(sa, sb);
        for (std::size_t i = 0; i < t.size(); ++i) terms[kStatNames[i]] = t[i];
        emit_json({{"a", to_json(sa)}, {"b", to_json(sb)}, {"terms", terms}, {"s_gstats", s_gstats(sa, sb)}},
                  st_out);
      } else if (!st_in.empty()) {
        emit_json(to_json(compute_stats(read_edge_list_file(st_in).graph)), st_out);
      } else {
        throw std::invalid_argument("stats needs a graph or --compare a b");
      }
    } else if (*per) {
      const auto g = read_edge_list_file(per_in).graph;
      const auto mode = parse_perturb_mode(per_mode);
      PerturbReport report;
      if (mode == PerturbMode::config) {
        report = configuration_rewire(g, per_fraction, per_seed);
      } else {
        if (per_members.empty()) throw std::invalid_argument("subgraph mode needs --members");
        const auto subsets = load_members(per_members, g.num_nodes());
        report = subgraph_rewire_all(g, subsets, per_fraction, per_seed);
      }
      write_edge_list_file(per_out, report.graph);
      emit_json(to_json(report, to_string(mode)), per_report.empty() ? per_out + ".json" : per_report);
    } else if (*ex) {
      ExperimentConfig cfg;
      if (!ex_config.empty()) cfg = experiment_config_from_json(read_json_file(ex_config));
      if (ex_kind) cfg.experiment = parse_experiment_kind(*ex_kind);
      if (ex_extractor) cfg.extractor = parse_extractor_kind(*ex_extractor);
      if (ex_weighting) cfg.weighting = parse_weighting(*ex_weighting);
      if (ex_preset) cfg.groletest = groletest_from_json(Json{{"preset", *ex_preset}}, cfg.groletest);
      if (ex_sub) cfg.groletest.sub_kind = parse_subgraph_kind(*ex_sub);
      if (ex_mode) cfg.perturb = parse_perturb_mode(*ex_mode);
      if (ex_repeats) cfg.repeats = *ex_repeats;
      if (!ex_fractions.empty()) cfg.fractions = ex_fractions;
      if (ex_seed) cfg.base_seed = *ex_seed;
      if (ex_trials) cfg.dca.trials = *ex_trials;
      if (ex_b) cfg.dca.edge_filter = *ex_b;
      if (ex_mcs) cfg.dca.min_cluster_size = *ex_mcs;
      if (ex_same_seed) cfg.pair_same_seed = true;
      const auto report = run_experiment(cfg);
      if (ex_csv.empty() || ex_csv == "-") {
        write_experiment_csv(std::cout, report);
      } else {
        std::ofstream out(ex_csv);
        if (!out) throw std::runtime_error("cannot write " + ex_csv);
        write_experiment_csv(out, report);
      }
      if (!ex_json.empty()) emit_json(to_json(report), ex_json);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfigError;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: bad JSON: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return 0;
}
