#include "hinrisk/pipeline.hpp"

#include <algorithm>
#include <set>

#include "hinrisk/error.hpp"
#include "hinrisk/stats.hpp"

namespace hinrisk {

std::vector<MetaPath> candidate_paths(const Schema& schema, std::size_t max_relations,
                                      std::size_t cap) {
  auto enterprise = schema.find_object_type("enterprise");
  if (!enterprise) {
    throw Error(Errc::UnknownType, "candidate_paths: schema has no 'enterprise' type");
  }
  auto all = enumerate_metapaths(schema, *enterprise, max_relations);
  std::stable_sort(all.begin(), all.end(), [](const MetaPath& a, const MetaPath& b) {
    return a.length() < b.length();
  });
  if (all.size() > cap) all.resize(cap);
  return all;
}

Hin infer_risk(const Hin& hin, double alpha, double threshold,
               std::map<TypeId, NaiveBayesModel>* fitted) {
  const Schema& schema = hin.schema();
  auto news_type = schema.find_object_type("news");
  std::map<TypeId, NaiveBayesModel> models;
  for (TypeId t = 0; t < schema.object_type_count(); ++t) {
    if (news_type && t == *news_type) continue;
    std::size_t risky = 0, nonrisky = 0, unlabeled = 0;
    for (NodeIdx i : hin.nodes_of_type(t)) {
      const auto& label = hin.node(i).risk_label;
      if (!label) {
        unlabeled++;
      } else {
        (*label ? risky : nonrisky)++;
      }
    }
    if (risky > 0 && nonrisky > 0) {
      models.emplace(t, fit_nb(hin, t, alpha));
    } else if (unlabeled > 0) {
      throw Error(Errc::MissingModel,
                  "infer_risk: type '" + schema.object_type(t).name +
                      "' has unlabeled nodes but not enough labeled data for a model");
    }
  }
  if (fitted) *fitted = models;
  return impute_labels(hin, models, threshold);
}

FeatureMatrix attribute_baseline_matrix(const Hin& hin) {
  auto enterprise = hin.schema().find_object_type("enterprise");
  if (!enterprise) {
    throw Error(Errc::UnknownType, "attribute_baseline_matrix: no 'enterprise' type");
  }
  const auto& rows = hin.nodes_of_type(*enterprise);

  // Union of attribute names and sorted level sets over all enterprises.
  std::map<std::string, std::set<std::string>> registry;
  for (NodeIdx i : rows) {
    for (const auto& [name, value] : hin.node(i).attributes) registry[name].insert(value);
  }
  std::vector<std::string> columns;
  for (const auto& [name, levels] : registry) columns.push_back("attr:" + name);

  std::vector<std::string> ids;
  for (NodeIdx i : rows) ids.push_back(hin.node(i).id);
  FeatureMatrix matrix(std::move(ids), std::move(columns));

  std::size_t c = 0;
  for (const auto& [name, levels] : registry) {
    std::vector<std::string> sorted_levels(levels.begin(), levels.end());
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto& attrs = hin.node(rows[r]).attributes;
      auto it = attrs.find(name);
      if (it == attrs.end()) continue;
      auto lv = std::lower_bound(sorted_levels.begin(), sorted_levels.end(), it->second);
      matrix.set(r, c, static_cast<double>(lv - sorted_levels.begin()));
    }
    ++c;
  }
  return matrix;
}

FeatureMatrix homogeneous_baseline_matrix(const Hin& hin, const RiskMap& risk,
                                          std::size_t workers) {
  const Schema& schema = hin.schema();
  auto enterprise = schema.find_object_type("enterprise");
  if (!enterprise) {
    throw Error(Errc::UnknownType, "homogeneous_baseline_matrix: no 'enterprise' type");
  }
  std::vector<FeatureSpec> specs;
  for (RelId r : schema.relations_from(*enterprise)) {
    if (schema.relation(r).target != *enterprise) continue;
    MetaPath mp;
    mp.node_types = {*enterprise, *enterprise};
    mp.relation_types = {r};
    specs.push_back(FeatureSpec{mp, FeatureKind::Naive});
  }
  return build_feature_matrix(hin, specs, risk, workers);
}

PipelineResult run_pipeline(const Hin& hin, const PipelineConfig& config) {
  const Hin* graph = &hin;
  std::optional<Hin> filtered;
  if (config.window) {
    filtered = hin.as_of(config.window->first, config.window->second);
    graph = &*filtered;
  }
  Hin inferred = infer_risk(*graph, config.alpha, config.impute_threshold);
  RiskMap risk = assemble_risk_map(inferred);

  auto enterprise = inferred.schema().find_object_type("enterprise");
  const auto& rows = inferred.nodes_of_type(*enterprise);
  if (rows.empty()) {
    throw Error(Errc::EmptyWindow, "run_pipeline: no enterprises after filtering");
  }

  PipelineResult result;
  result.candidates =
      candidate_paths(inferred.schema(), config.max_relations, config.max_paths);

  result.labels.reserve(rows.size());
  for (NodeIdx i : rows) {
    result.labels.push_back(inferred.node(i).risk_label.value_or(false) ? 1 : 0);
  }

  for (FeatureKind kind : config.kinds) {
    std::vector<FeatureSpec> specs;
    specs.reserve(result.candidates.size());
    for (const auto& mp : result.candidates) specs.push_back(FeatureSpec{mp, kind});
    std::string method = std::string(feature_kind_name(kind)) + "_mp";
    result.matrices.emplace(method,
                            build_feature_matrix(inferred, specs, risk, config.workers));
  }
  result.matrices.emplace("sme_cv", attribute_baseline_matrix(inferred));
  result.matrices.emplace("sme_hpf",
                          homogeneous_baseline_matrix(inferred, risk, config.workers));

  EvalOptions eval;
  eval.top_k = config.top_k;
  eval.folds = config.folds;
  eval.seed = config.seed;
  eval.univariate_ranking = config.univariate_ranking;
  eval.in_sample = config.in_sample;
  result.report = compare_methods(result.matrices, result.labels, eval);
  return result;
}

namespace {

double accuracy_at_half(const std::vector<double>& scores, const std::vector<int>& labels) {
  std::size_t correct = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    correct += ((scores[i] > 0.5) == (labels[i] != 0));
  }
  return static_cast<double>(correct) / static_cast<double>(scores.size());
}

bool is_mp_method(const std::string& name) {
  return name == "naive_mp" || name == "countsim_mp" || name == "hetesim_mp";
}

}  // namespace

SweepSeries timestamp_sweep(const Hin& hin,
                            const std::vector<std::pair<Timestamp, Timestamp>>& windows,
                            const PipelineConfig& config) {
  SweepSeries series;
  for (const auto& [start, end] : windows) {
    SweepEntry entry;
    entry.window_start = start;
    entry.window_end = end;
    try {
      PipelineConfig window_config = config;
      window_config.window = {start, end};
      PipelineResult result = run_pipeline(hin, window_config);
      double sum = 0.0;
      std::size_t count = 0;
      for (const auto& method : result.report.methods) {
        if (!method.ok || !is_mp_method(method.name)) continue;
        sum += config.accuracy_metric
                   ? accuracy_at_half(method.pooled_scores, result.labels)
                   : method.average_auc;
        ++count;
      }
      if (count == 0) {
        entry.note = "no MP method succeeded";
      } else {
        entry.metric = sum / static_cast<double>(count);
      }
    } catch (const Error& e) {
      entry.note = std::string(errc_name(e.code())) + ": " + e.what();
    }
    series.push_back(std::move(entry));
  }
  return series;
}

}  // namespace hinrisk
