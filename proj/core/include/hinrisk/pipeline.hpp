#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hinrisk/evaluation.hpp"
#include "hinrisk/hin.hpp"
#include "hinrisk/mp_features.hpp"
#include "hinrisk/risk_bayes.hpp"

namespace hinrisk {

// End-to-end configuration: risk inference, candidate enumeration, feature
// kinds, model selection, evaluation protocol. Defaults follow the method's
// stated constants (at most 5 relations, 0.75 imputation threshold, top-10
// features, 40 candidates).
struct PipelineConfig {
  std::size_t max_relations = 5;
  std::size_t max_paths = 40;  // candidate cap in (length, lexicographic) order
  std::vector<FeatureKind> kinds = {FeatureKind::Naive, FeatureKind::CountSim,
                                    FeatureKind::HeteSim};
  double alpha = 1.0;
  double impute_threshold = 0.75;
  std::size_t top_k = 10;
  std::size_t folds = 5;
  std::uint64_t seed = 1;
  std::size_t workers = 1;
  bool univariate_ranking = false;
  bool in_sample = false;
  bool accuracy_metric = false;  // sweep metric: accuracy at 0.5 instead of AUC
  std::optional<std::pair<Timestamp, Timestamp>> window;
};

struct PipelineResult {
  ComparisonReport report;
  std::map<std::string, FeatureMatrix> matrices;  // per method name
  std::vector<int> labels;                        // per enterprise row
  std::vector<MetaPath> candidates;
};

// Enterprise-rooted candidate pool: enumerate up to max_relations, order by
// (relation count, lexicographic), truncate to cap.
std::vector<MetaPath> candidate_paths(const Schema& schema, std::size_t max_relations,
                                      std::size_t cap);

// Fits per-type Bayes models (for every type that has labeled examples of
// both classes) and imputes missing labels at the threshold.
Hin infer_risk(const Hin& hin, double alpha, double threshold,
               std::map<TypeId, NaiveBayesModel>* fitted = nullptr);

// SME CV baseline: the enterprise's own categorical attributes, ordinal-encoded
// by sorted level index. Missing attributes stay missing.
FeatureMatrix attribute_baseline_matrix(const Hin& hin);

// SME HPF baseline: Naive MP features restricted to single-relation
// enterprise-to-enterprise paths (the homogeneous projection).
FeatureMatrix homogeneous_baseline_matrix(const Hin& hin, const RiskMap& risk,
                                          std::size_t workers = 1);

// Full run: optional as_of window, risk inference, feature construction for
// the configured kinds plus the two baselines, cross-validated comparison.
PipelineResult run_pipeline(const Hin& hin, const PipelineConfig& config);

// One full pipeline per window; degenerate windows are reported in the note
// instead of aborting the sweep. The metric is the mean of the MP families'
// held-out score (AUC, or accuracy at 0.5 when accuracy_metric is set).
SweepSeries timestamp_sweep(const Hin& hin,
                            const std::vector<std::pair<Timestamp, Timestamp>>& windows,
                            const PipelineConfig& config);

}  // namespace hinrisk
