#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hinrisk/hin.hpp"
#include "hinrisk/logistic.hpp"
#include "hinrisk/mp_features.hpp"

namespace hinrisk {

// ROC curve from a descending-score sweep with tied scores advanced as one
// block (mid-rank handling). The trapezoid AUC then equals the Mann-Whitney
// concordance statistic exactly.
struct RocCurve {
  std::vector<std::pair<double, double>> points;  // (fpr, tpr), (0,0) .. (1,1)
  double auc = 0.0;
};

// Throws DegenerateLabels unless both classes are present.
RocCurve roc_auc(const std::vector<double>& scores, const std::vector<int>& labels);

void write_roc_csv(const RocCurve& roc, const std::string& path);

struct MethodResult {
  std::string name;
  bool ok = false;
  std::string error;                  // set when !ok
  double average_auc = 0.0;           // mean held-out AUC over folds
  std::vector<double> fold_auc;
  std::vector<double> pooled_scores;  // out-of-fold P(y=1) per row
  RocCurve pooled_roc;                // over pooled_scores
};

struct ComparisonReport {
  std::vector<MethodResult> methods;  // ordered by method name
  std::string to_json() const;
};

struct EvalOptions {
  std::size_t top_k = 10;
  std::size_t folds = 5;
  std::uint64_t seed = 1;
  bool univariate_ranking = false;
  bool in_sample = false;  // rank/fit/evaluate on the full data (no CV)
};

// For each method: rank features on the training folds (Wald), refit on the
// top-k, score the held-out fold, and average the AUC over folds. Fold
// assignment is stratified and derived from the seed only. A method that
// fails to fit is reported as failed without aborting the others.
ComparisonReport compare_methods(const std::map<std::string, FeatureMatrix>& method_features,
                                 const std::vector<int>& labels, const EvalOptions& options);

// Deterministic stratified fold assignment: fold id per row.
std::vector<std::size_t> stratified_folds(const std::vector<int>& labels, std::size_t folds,
                                          std::uint64_t seed);

struct SweepEntry {
  Timestamp window_start = 0;
  Timestamp window_end = 0;
  std::optional<double> metric;  // empty when the window degenerated
  std::string note;
};

using SweepSeries = std::vector<SweepEntry>;

void write_sweep_csv(const SweepSeries& series, const std::string& path);

}  // namespace hinrisk
