// hinrisk: ingest -> enumerate -> infer-risk -> features -> train -> evaluate
// pipeline driver over the flat-file formats. Every subcommand that writes
// artifacts also writes a manifest (resolved config hash, seed, checksums).
//
// Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical failure,
// 5 internal invariant violation.

#include <CLI11.hpp>

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <thread>

#include <nlohmann/json.hpp>

#include "hinrisk/error.hpp"
#include "hinrisk/evaluation.hpp"
#include "hinrisk/loader.hpp"
#include "hinrisk/logistic.hpp"
#include "hinrisk/mp_features.hpp"
#include "hinrisk/pipeline.hpp"
#include "hinrisk/risk_bayes.hpp"
#include "hinrisk/stats.hpp"
#include "hinrisk/synth.hpp"
#include "manifest.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace hinrisk;

namespace {

int exit_code_for(const Error& e) {
  switch (e.error_class()) {
    case ErrorClass::Usage: return 2;
    case ErrorClass::Data: return 3;
    case ErrorClass::Numeric: return 4;
    case ErrorClass::Internal: return 5;
  }
  return 5;
}

struct DataFlags {
  std::string nodes, attributes, edges, labels;

  void attach(CLI::App* cmd) {
    cmd->add_option("--nodes", nodes, "nodes CSV (id,type,timestamp)")->required();
    cmd->add_option("--attrs", attributes, "attributes CSV (id,attr_name,attr_value)")
        ->required();
    cmd->add_option("--edges", edges, "edges CSV (id,src,dst,relation,timestamp)")->required();
    cmd->add_option("--labels", labels, "labels CSV (id,risky)")->required();
  }
  std::vector<fs::path> paths() const { return {nodes, attributes, edges, labels}; }
  Hin load() const {
    return load_hin_files(default_sme_schema(), nodes, attributes, edges, labels);
  }
};

std::pair<Timestamp, Timestamp> parse_window(const std::string& text) {
  auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw Error(Errc::Usage, "window '" + text + "' must be START:END");
  }
  Timestamp start = 0, end = 0;
  auto parse_one = [&](const std::string& s, Timestamp& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc{} || p != s.data() + s.size()) {
      throw Error(Errc::Usage, "window bound '" + s + "' is not an integer");
    }
  };
  parse_one(text.substr(0, colon), start);
  parse_one(text.substr(colon + 1), end);
  return {start, end};
}

std::vector<FeatureKind> parse_kinds(const std::string& csv_list) {
  std::vector<FeatureKind> kinds;
  std::size_t pos = 0;
  while (pos <= csv_list.size()) {
    std::size_t comma = csv_list.find(',', pos);
    std::string token = csv_list.substr(pos, comma == std::string::npos ? comma : comma - pos);
    if (!token.empty()) kinds.push_back(feature_kind_from_name(token));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (kinds.empty()) {
    throw Error(Errc::Usage, "feature kind list '" + csv_list + "' is empty");
  }
  return kinds;
}

// Shared pipeline knobs; defaults mirror the method constants. A JSON config
// file seeds the values, command-line flags override.
struct CommonConfig {
  std::uint64_t seed = 1;
  std::size_t workers = 0;  // 0 = hardware concurrency
  std::size_t max_relations = 5;
  std::size_t max_paths = 40;
  std::size_t top_k = 10;
  std::size_t folds = 5;
  double alpha = 1.0;
  double threshold = 0.75;
  std::string feature_kinds = "naive,countsim,hetesim";
  std::string as_of;  // "START:END" or empty
  bool univariate = false;
  bool in_sample = false;
  bool accuracy_metric = false;

  void load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::Usage, path + ": cannot open config file");
    json j = json::parse(in, nullptr, true, true);  // allow comments
    if (j.contains("seed")) seed = j["seed"].get<std::uint64_t>();
    if (j.contains("workers")) workers = j["workers"].get<std::size_t>();
    if (j.contains("max_relations")) max_relations = j["max_relations"].get<std::size_t>();
    if (j.contains("max_paths")) max_paths = j["max_paths"].get<std::size_t>();
    if (j.contains("top_k")) top_k = j["top_k"].get<std::size_t>();
    if (j.contains("folds")) folds = j["folds"].get<std::size_t>();
    if (j.contains("alpha")) alpha = j["alpha"].get<double>();
    if (j.contains("threshold")) threshold = j["threshold"].get<double>();
    if (j.contains("feature_kinds")) feature_kinds = j["feature_kinds"].get<std::string>();
    if (j.contains("as_of")) as_of = j["as_of"].get<std::string>();
    if (j.contains("univariate")) univariate = j["univariate"].get<bool>();
    if (j.contains("in_sample")) in_sample = j["in_sample"].get<bool>();
    if (j.contains("accuracy_metric")) accuracy_metric = j["accuracy_metric"].get<bool>();
  }

  void attach(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "rng seed recorded in the manifest");
    cmd->add_option("--workers", workers, "worker threads (0 = auto)");
    cmd->add_option("--max-relations", max_relations, "meta-path length bound");
    cmd->add_option("--max-paths", max_paths, "candidate pool cap");
    cmd->add_option("--top-k", top_k, "features kept after ranking");
    cmd->add_option("--folds", folds, "cross-validation folds");
    cmd->add_option("--alpha", alpha, "Laplace smoothing strength");
    cmd->add_option("--threshold", threshold, "risk imputation threshold");
    cmd->add_option("--feature-kinds", feature_kinds, "comma list: naive,countsim,hetesim");
    cmd->add_option("--as-of", as_of, "timestamp window START:END");
    cmd->add_flag("--univariate", univariate, "univariate Wald screen instead of joint");
    cmd->add_flag("--in-sample", in_sample, "evaluate in-sample instead of cross-validated");
    cmd->add_flag("--accuracy-metric", accuracy_metric, "sweep metric: accuracy at 0.5");
  }

  std::size_t effective_workers() const {
    if (workers > 0) return workers;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : std::min(hw, 8u);
  }

  PipelineConfig pipeline() const {
    PipelineConfig pc;
    pc.max_relations = max_relations;
    pc.max_paths = max_paths;
    pc.kinds = parse_kinds(feature_kinds);
    pc.alpha = alpha;
    pc.impute_threshold = threshold;
    pc.top_k = top_k;
    pc.folds = folds;
    pc.seed = seed;
    pc.workers = effective_workers();
    pc.univariate_ranking = univariate;
    pc.in_sample = in_sample;
    pc.accuracy_metric = accuracy_metric;
    if (!as_of.empty()) pc.window = parse_window(as_of);
    return pc;
  }

  json resolved() const {
    json j;
    j["seed"] = seed;
    j["workers"] = workers;
    j["max_relations"] = max_relations;
    j["max_paths"] = max_paths;
    j["top_k"] = top_k;
    j["folds"] = folds;
    j["alpha"] = alpha;
    j["threshold"] = threshold;
    j["feature_kinds"] = feature_kinds;
    j["as_of"] = as_of;
    j["univariate"] = univariate;
    j["in_sample"] = in_sample;
    j["accuracy_metric"] = accuracy_metric;
    return j;
  }
};

std::string pre_scan_config(int argc, char** argv) {
  for (int i = 1; i < argc - 1; ++i) {
    if (std::string(argv[i]) == "--config") return argv[i + 1];
  }
  for (int i = 1; i < argc; ++i) {
    std::string arg = argv[i];
    if (arg.rfind("--config=", 0) == 0) return arg.substr(9);
  }
  return "";
}

json graph_summary(const Hin& hin) {
  json j;
  j["nodes"] = hin.node_count();
  j["edges"] = hin.edge_count();
  json per_type = json::object();
  for (TypeId t = 0; t < hin.schema().object_type_count(); ++t) {
    per_type[hin.schema().object_type(t).name] = hin.nodes_of_type(t).size();
  }
  j["nodes_per_type"] = per_type;
  json per_rel = json::object();
  for (EdgeIdx i = 0; i < hin.edge_count(); ++i) {
    const auto& name = hin.schema().relation(hin.edge(i).rtype).name;
    per_rel[name] = per_rel.value(name, 0) + 1;
  }
  j["edges_per_relation"] = per_rel;
  std::size_t labeled = 0;
  std::optional<Timestamp> lo, hi;
  for (NodeIdx i = 0; i < hin.node_count(); ++i) {
    if (hin.node(i).risk_label) ++labeled;
  }
  for (EdgeIdx i = 0; i < hin.edge_count(); ++i) {
    auto ts = hin.edge(i).timestamp;
    if (!ts) continue;
    if (!lo || *ts < *lo) lo = *ts;
    if (!hi || *ts > *hi) hi = *ts;
  }
  j["labeled_nodes"] = labeled;
  if (lo) j["edge_timestamp_range"] = {*lo, *hi};
  return j;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::Usage, path.string() + ": cannot open for writing");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

// ---------------------------------------------------------------- subcommands

int cmd_synth(const CommonConfig& common, const GenConfig& gen, const std::string& out_dir) {
  cli::ArtifactSet artifacts{fs::path(out_dir)};
  try {
    auto [hin, truth] = generate(gen);
    write_hin_files(hin, artifacts.declare("nodes.csv").string(),
                    artifacts.declare("attributes.csv").string(),
                    artifacts.declare("edges.csv").string(),
                    artifacts.declare("labels.csv").string());
    write_text(artifacts.declare("ground_truth.json"), truth.to_json());
    json cfg = common.resolved();
    cfg["generator"] = {{"enterprises", gen.enterprises},
                        {"persons", gen.persons},
                        {"commodities", gen.commodities},
                        {"news", gen.news},
                        {"contagion_strength", gen.contagion_strength},
                        {"attribute_signal", gen.attribute_signal},
                        {"label_coverage", gen.label_coverage},
                        {"stale_edge_fraction", gen.stale_edge_fraction},
                        {"stale_cutoff", gen.stale_cutoff},
                        {"horizon", gen.horizon}};
    artifacts.write_manifest("synth", cfg, gen.seed, {});
    std::printf("synth: %zu nodes, %zu edges -> %s\n", hin.node_count(), hin.edge_count(),
                out_dir.c_str());
    return 0;
  } catch (...) {
    artifacts.remove_partial();
    throw;
  }
}

int cmd_ingest(const CommonConfig& common, const DataFlags& data, const std::string& out_dir) {
  cli::ArtifactSet artifacts{fs::path(out_dir)};
  try {
    Hin hin = data.load();
    write_text(artifacts.declare("summary.json"), graph_summary(hin).dump(2));
    artifacts.write_manifest("ingest", common.resolved(), common.seed, data.paths());
    std::printf("ingest: %zu nodes, %zu edges ok\n", hin.node_count(), hin.edge_count());
    return 0;
  } catch (...) {
    artifacts.remove_partial();
    throw;
  }
}

int cmd_validate(const DataFlags& data) {
  Hin hin = data.load();  // throws with file:line on any violation
  std::printf("validate: ok (%zu nodes, %zu edges)\n", hin.node_count(), hin.edge_count());
  return 0;
}

int cmd_enumerate(const CommonConfig& common, const std::string& out_dir) {
  cli::ArtifactSet artifacts{fs::path(out_dir)};
  try {
    Schema schema = default_sme_schema();
    auto paths = candidate_paths(schema, common.max_relations, common.max_paths);
    std::string text = "# enterprise-rooted meta paths, max " +
                       std::to_string(common.max_relations) + " relations\n";
    for (const auto& mp : paths) text += format_metapath(mp, schema) + "\n";
    write_text(artifacts.declare("metapaths.txt"), text);
    artifacts.write_manifest("enumerate", common.resolved(), common.seed, {});
    std::printf("enumerate: %zu candidate paths\n", paths.size());
    return 0;
  } catch (...) {
    artifacts.remove_partial();
    throw;
  }
}

int cmd_infer_risk(const CommonConfig& common, const DataFlags& data,
                   const std::string& out_dir) {
  cli::ArtifactSet artifacts{fs::path(out_dir)};
  try {
    Hin hin = data.load();
    std::map<TypeId, NaiveBayesModel> models;
    Hin inferred = infer_risk(hin, common.alpha, common.threshold, &models);

    for (const auto& [type, model] : models) {
      write_text(artifacts.declare("nb_model_" + model.object_type + ".json"), model.to_json());
    }
    std::ofstream risk(artifacts.declare("risk.csv"));
    risk << "id,type,source,posterior,gamma\n";
    auto news_type = hin.schema().find_object_type("news");
    risk.precision(17);
    for (NodeIdx i = 0; i < inferred.node_count(); ++i) {
      const Node& node = inferred.node(i);
      const Node& before = hin.node(i);
      std::string source = before.risk_label
                               ? "observed-label"
                               : ((news_type && node.otype == *news_type) ? "news-polarity"
                                                                          : "inferred");
      risk << node.id << ',' << hin.schema().object_type(node.otype).name << ',' << source
           << ',';
      if (source == "inferred") risk << models.at(node.otype).posterior(before);
      risk << ',' << (node.risk_label.value_or(false) ? 1 : 0) << '\n';
    }
    risk.close();
    artifacts.write_manifest("infer-risk", common.resolved(), common.seed, data.paths());
    std::printf("infer-risk: %zu models fitted\n", models.size());
    return 0;
  } catch (...) {
    artifacts.remove_partial();
    throw;
  }
}

int cmd_features(const CommonConfig& common, const DataFlags& data,
                 const std::string& paths_file, const std::string& out_dir) {
  cli::ArtifactSet artifacts{fs::path(out_dir)};
  try {
    Hin hin = data.load();
    if (!common.as_of.empty()) {
      auto [start, end] = parse_window(common.as_of);
      hin = hin.as_of(start, end);
    }
    Hin inferred = infer_risk(hin, common.alpha, common.threshold);
    RiskMap risk = assemble_risk_map(inferred);
    Schema schema = inferred.schema();

    std::vector<MetaPath> mps;
    if (!paths_file.empty()) {
      mps = read_metapath_file(paths_file, schema);
    } else {
      mps = candidate_paths(schema, common.max_relations, common.max_paths);
    }
    for (FeatureKind kind : parse_kinds(common.feature_kinds)) {
      std::vector<FeatureSpec> specs;
      specs.reserve(mps.size());
      for (const auto& mp : mps) specs.push_back(FeatureSpec{mp, kind});
      FeatureBuildInfo info;
      FeatureMatrix matrix =
          build_feature_matrix(inferred, specs, risk, common.effective_workers(), &info);
      std::string stem = std::string("features_") + feature_kind_name(kind);
      matrix.write_csv(artifacts.declare(stem + ".csv").string());
      matrix.imputed().write_csv(artifacts.declare(stem + ".imputed.csv").string());
      write_text(artifacts.declare(stem + ".json"), feature_sidecar_json(schema, specs, info));
    }
    std::vector<fs::path> inputs = data.paths();
    if (!paths_file.empty()) inputs.push_back(paths_file);
    artifacts.write_manifest("features", common.resolved(), common.seed, inputs);
    std::printf("features: %zu paths x %s\n", mps.size(), common.feature_kinds.c_str());
    return 0;
  } catch (...) {
    artifacts.remove_partial();
    throw;
  }
}

int cmd_train(const CommonConfig& common, const std::string& features_file,
              const std::string& labels_file, const std::string& out_dir) {
  cli::ArtifactSet artifacts{fs::path(out_dir)};
  try {
    FeatureMatrix X = FeatureMatrix::read_csv(features_file);
    csv::Table labels_table = csv::read_file(labels_file);
    std::size_t id_col = labels_table.column("id");
    std::size_t risky_col = labels_table.column("risky");
    std::map<std::string, int> label_of;
    for (const auto& row : labels_table.rows) {
      label_of[row.fields.at(id_col)] = row.fields.at(risky_col) == "1" ? 1 : 0;
    }
    std::vector<int> y;
    y.reserve(X.rows());
    for (const auto& id : X.row_ids()) {
      auto it = label_of.find(id);
      if (it == label_of.end()) {
        throw Error(Errc::UnknownNode, "train: no label for enterprise '" + id + "'");
      }
      y.push_back(it->second);
    }
    FittedModel model = fit_logistic(X.imputed(), y);
    write_text(artifacts.declare("model_report.json"), model.report_json());
    model.write_report_csv(artifacts.declare("ranking.csv").string());
    if (common.univariate) {
      FeatureRanking uni = univariate_wald_rank(X.imputed(), y);
      std::ofstream out(artifacts.declare("ranking_univariate.csv"));
      out << "rank,feature,p_value,significance\n";
      std::size_t rank = 1;
      for (const auto& rf : uni) {
        out << rank++ << ',' << rf.name << ',' << format_p_value(rf.p_value) << ',' << rf.stars
            << '\n';
      }
    }
    artifacts.write_manifest("train", common.resolved(), common.seed,
                             {features_file, labels_file});
    std::printf("train: %zu features, converged=%s\n", X.cols(),
                model.convergence.converged ? "yes" : "no");
    return 0;
  } catch (...) {
    artifacts.remove_partial();
    throw;
  }
}

int cmd_evaluate(const CommonConfig& common, const DataFlags& data,
                 const std::string& out_dir) {
  cli::ArtifactSet artifacts{fs::path(out_dir)};
  try {
    Hin hin = data.load();
    PipelineResult result = run_pipeline(hin, common.pipeline());
    write_text(artifacts.declare("comparison.json"), result.report.to_json());
    for (const auto& method : result.report.methods) {
      if (!method.ok) continue;
      write_roc_csv(method.pooled_roc, artifacts.declare("roc_" + method.name + ".csv").string());
      // full-data ranking per method, Tables layout
      FittedModel model = fit_logistic(result.matrices.at(method.name).imputed(), result.labels);
      model.write_report_csv(artifacts.declare("ranking_" + method.name + ".csv").string());
    }
    artifacts.write_manifest("evaluate", common.resolved(), common.seed, data.paths());
    for (const auto& method : result.report.methods) {
      if (method.ok) {
        std::printf("evaluate: %-12s avg AUC %.4f\n", method.name.c_str(), method.average_auc);
      } else {
        std::printf("evaluate: %-12s FAILED (%s)\n", method.name.c_str(), method.error.c_str());
      }
    }
    return 0;
  } catch (...) {
    artifacts.remove_partial();
    throw;
  }
}

int cmd_sweep(const CommonConfig& common, const DataFlags& data,
              const std::vector<std::string>& window_flags, const std::string& out_dir) {
  cli::ArtifactSet artifacts{fs::path(out_dir)};
  try {
    if (window_flags.empty()) {
      throw Error(Errc::Usage, "sweep: at least one --window START:END required");
    }
    Hin hin = data.load();
    std::vector<std::pair<Timestamp, Timestamp>> windows;
    for (const auto& w : window_flags) windows.push_back(parse_window(w));
    SweepSeries series = timestamp_sweep(hin, windows, common.pipeline());
    write_sweep_csv(series, artifacts.declare("sweep.csv").string());
    artifacts.write_manifest("sweep", common.resolved(), common.seed, data.paths());
    for (const auto& entry : series) {
      if (entry.metric) {
        std::printf("sweep: [%lld, %lld] metric %.4f\n",
                    static_cast<long long>(entry.window_start),
                    static_cast<long long>(entry.window_end), *entry.metric);
      } else {
        std::printf("sweep: [%lld, %lld] skipped (%s)\n",
                    static_cast<long long>(entry.window_start),
                    static_cast<long long>(entry.window_end), entry.note.c_str());
      }
    }
    return 0;
  } catch (...) {
    artifacts.remove_partial();
    throw;
  }
}

int cmd_report(const CommonConfig& common, const std::string& evaluation_dir,
               const std::string& out_dir) {
  cli::ArtifactSet artifacts{fs::path(out_dir)};
  try {
    fs::path comparison = fs::path(evaluation_dir) / "comparison.json";
    std::ifstream in(comparison);
    if (!in) {
      throw Error(Errc::Usage, comparison.string() + ": no comparison.json (run evaluate first)");
    }
    json j = json::parse(in);
    std::string md = "# Method comparison\n\n| method | average AUC |\n|---|---|\n";
    for (const auto& m : j.at("methods")) {
      md += "| " + m.at("name").get<std::string>() + " | ";
      if (m.value("ok", false)) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.4f", m.at("average_auc").get<double>());
        md += buf;
      } else {
        md += "failed";
      }
      md += " |\n";
    }
    for (const auto& name : {"naive_mp", "countsim_mp", "hetesim_mp"}) {
      fs::path ranking = fs::path(evaluation_dir) / (std::string("ranking_") + name + ".csv");
      if (!fs::exists(ranking)) continue;
      md += "\n## Top features (" + std::string(name) + ")\n\n```\n";
      std::ifstream rin(ranking);
      std::string line;
      for (int i = 0; i <= 10 && std::getline(rin, line); ++i) md += line + "\n";
      md += "```\n";
    }
    write_text(artifacts.declare("report.md"), md);
    write_text(artifacts.declare("report.json"), j.dump(2));
    artifacts.write_manifest("report", common.resolved(), common.seed, {comparison});
    std::printf("report: written to %s\n", out_dir.c_str());
    return 0;
  } catch (...) {
    artifacts.remove_partial();
    throw;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"heterogeneous-network credit risk pipeline"};
  app.require_subcommand(1);

  CommonConfig common;
  std::string config_path = pre_scan_config(argc, argv);
  try {
    if (!config_path.empty()) common.load_file(config_path);
  } catch (const Error& e) {
    std::fprintf(stderr, "hinrisk: error [%s] %s\n", errc_name(e.code()), e.what());
    return exit_code_for(e);
  } catch (const json::exception& e) {
    std::fprintf(stderr, "hinrisk: error [Usage] bad config file: %s\n", e.what());
    return 2;
  }
  std::string config_sink;  // consumed by pre_scan; registered so CLI11 accepts it

  DataFlags data;
  std::string out_dir = "out";
  std::string paths_file, features_file, labels_file, evaluation_dir;
  std::vector<std::string> window_flags;
  GenConfig gen;

  auto add_common = [&](CLI::App* cmd) {
    common.attach(cmd);
    cmd->add_option("--config", config_sink, "JSON config file (flags override)");
    cmd->add_option("--out", out_dir, "output directory");
  };

  CLI::App* synth = app.add_subcommand("synth", "generate a synthetic SME network");
  add_common(synth);
  synth->add_option("--enterprises", gen.enterprises, "enterprise count");
  synth->add_option("--persons", gen.persons, "person count");
  synth->add_option("--commodities", gen.commodities, "commodity count");
  synth->add_option("--news", gen.news, "news count");
  synth->add_option("--contagion", gen.contagion_strength, "planted contagion strength [0,1]");
  synth->add_option("--attr-signal", gen.attribute_signal, "attribute signal strength [0,1]");
  synth->add_option("--label-coverage", gen.label_coverage, "labeled share of persons/commodities");
  synth->add_option("--stale-fraction", gen.stale_edge_fraction, "stale planted-edge fraction");
  synth->add_option("--stale-cutoff", gen.stale_cutoff, "stale/recent boundary (epoch days)");
  synth->add_option("--horizon", gen.horizon, "latest edge timestamp");

  CLI::App* ingest = app.add_subcommand("ingest", "load, validate and summarize a network");
  add_common(ingest);
  data.attach(ingest);

  CLI::App* validate = app.add_subcommand("validate", "type-check a network, no artifacts");
  data.attach(validate);

  CLI::App* enumerate_cmd = app.add_subcommand("enumerate", "emit the candidate meta paths");
  add_common(enumerate_cmd);

  CLI::App* infer = app.add_subcommand("infer-risk", "fit Bayes models and impute labels");
  add_common(infer);
  data.attach(infer);

  CLI::App* features = app.add_subcommand("features", "compute meta-path feature matrices");
  add_common(features);
  data.attach(features);
  features->add_option("--paths", paths_file, "meta-paths file (default: enumerate)");

  CLI::App* train = app.add_subcommand("train", "fit the logistic model and rank features");
  add_common(train);
  train->add_option("--features", features_file, "feature matrix CSV")->required();
  train->add_option("--train-labels", labels_file, "labels CSV (id,risky)")->required();

  CLI::App* evaluate = app.add_subcommand("evaluate", "cross-validated method comparison");
  add_common(evaluate);
  data.attach(evaluate);

  CLI::App* sweep = app.add_subcommand("sweep", "timestamp-window accuracy sweep");
  add_common(sweep);
  data.attach(sweep);
  sweep->add_option("--window", window_flags, "window START:END (repeatable)");

  CLI::App* report = app.add_subcommand("report", "summarize evaluation artifacts");
  add_common(report);
  report->add_option("--evaluation", evaluation_dir, "directory with comparison.json")
      ->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (synth->parsed()) {
      gen.seed = common.seed;
      return cmd_synth(common, gen, out_dir);
    }
    if (ingest->parsed()) return cmd_ingest(common, data, out_dir);
    if (validate->parsed()) return cmd_validate(data);
    if (enumerate_cmd->parsed()) return cmd_enumerate(common, out_dir);
    if (infer->parsed()) return cmd_infer_risk(common, data, out_dir);
    if (features->parsed()) return cmd_features(common, data, paths_file, out_dir);
    if (train->parsed()) return cmd_train(common, features_file, labels_file, out_dir);
    if (evaluate->parsed()) return cmd_evaluate(common, data, out_dir);
    if (sweep->parsed()) return cmd_sweep(common, data, window_flags, out_dir);
    if (report->parsed()) return cmd_report(common, evaluation_dir, out_dir);
  } catch (const Error& e) {
    std::fprintf(stderr, "hinrisk %s: error [%s] %s\n",
                 app.get_subcommands().front()->get_name().c_str(), errc_name(e.code()),
                 e.what());
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "hinrisk: internal error: %s\n", e.what());
    return 5;
  }
  return 2;
}
