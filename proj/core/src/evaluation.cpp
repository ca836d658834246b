#include "hinrisk/evaluation.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

#include "hinrisk/error.hpp"

namespace hinrisk {

using nlohmann::json;

RocCurve roc_auc(const std::vector<double>& scores, const std::vector<int>& labels) {
  if (scores.size() != labels.size()) {
    throw Error(Errc::Usage, "roc_auc: scores and labels differ in length");
  }
  std::size_t n_pos = 0, n_neg = 0;
  for (int y : labels) (y != 0 ? n_pos : n_neg)++;
  if (n_pos == 0 || n_neg == 0) {
    throw Error(Errc::DegenerateLabels, "roc_auc: need at least one positive and one negative");
  }

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return scores[a] > scores[b];
  });

  RocCurve roc;
  roc.points.emplace_back(0.0, 0.0);
  double tp = 0.0, fp = 0.0;
  double auc = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    // advance a whole block of tied scores at once
    std::size_t j = i;
    double block_tp = 0.0, block_fp = 0.0;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      (labels[order[j]] != 0 ? block_tp : block_fp) += 1.0;
      ++j;
    }
    double tp2 = tp + block_tp, fp2 = fp + block_fp;
    // trapezoid over the block's diagonal segment
    auc += (fp2 - fp) / static_cast<double>(n_neg) *
           (tp + tp2) / (2.0 * static_cast<double>(n_pos));
    tp = tp2;
    fp = fp2;
    roc.points.emplace_back(fp / static_cast<double>(n_neg), tp / static_cast<double>(n_pos));
    i = j;
  }
  roc.auc = auc;
  return roc;
}

void write_roc_csv(const RocCurve& roc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::Usage, path + ": cannot open for writing");
  out << "fpr,tpr\n";
  out.precision(17);
  for (const auto& [fpr, tpr] : roc.points) out << fpr << ',' << tpr << '\n';
}

std::vector<std::size_t> stratified_folds(const std::vector<int>& labels, std::size_t folds,
                                          std::uint64_t seed) {
  if (folds < 2) {
    throw Error(Errc::Usage, "stratified_folds: need at least 2 folds");
  }
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> assignment(labels.size(), 0);
  for (int cls : {1, 0}) {
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if ((labels[i] != 0) == (cls == 1)) rows.push_back(i);
    }
    std::shuffle(rows.begin(), rows.end(), rng);
    for (std::size_t i = 0; i < rows.size(); ++i) assignment[rows[i]] = i % folds;
  }
  return assignment;
}

namespace {

FeatureMatrix subset_rows(const FeatureMatrix& X, const std::vector<std::size_t>& rows) {
  std::vector<std::string> ids;
  ids.reserve(rows.size());
  for (std::size_t r : rows) ids.push_back(X.row_ids()[r]);
  FeatureMatrix out(std::move(ids), X.column_names());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t c = 0; c < X.cols(); ++c) {
      if (X.defined(rows[i], c)) out.set(i, c, X.at(rows[i], c));
    }
  }
  return out;
}

FeatureMatrix subset_columns(const FeatureMatrix& X, const std::vector<std::string>& names) {
  std::vector<std::size_t> cols;
  for (const auto& name : names) {
    auto it = std::find(X.column_names().begin(), X.column_names().end(), name);
    if (it == X.column_names().end()) {
      throw Error(Errc::Internal, "subset_columns: unknown column '" + name + "'");
    }
    cols.push_back(static_cast<std::size_t>(it - X.column_names().begin()));
  }
  FeatureMatrix out(X.row_ids(), names);
  for (std::size_t r = 0; r < X.rows(); ++r) {
    for (std::size_t i = 0; i < cols.size(); ++i) {
      if (X.defined(r, cols[i])) out.set(r, i, X.at(r, cols[i]));
    }
  }
  return out;
}

MethodResult evaluate_method(const std::string& name, const FeatureMatrix& X,
                             const std::vector<int>& labels,
                             const std::vector<std::size_t>& fold_of,
                             const EvalOptions& options) {
  MethodResult result;
  result.name = name;

  auto rank_and_score = [&](const FeatureMatrix& train_X, const std::vector<int>& train_y,
                            const FeatureMatrix& eval_X) {
    FeatureMatrix train_imputed = train_X.imputed();
    FeatureRanking ranking = options.univariate_ranking
                                 ? univariate_wald_rank(train_imputed, train_y)
                                 : wald_rank(fit_logistic(train_imputed, train_y));
    auto top = select_top_k(ranking, options.top_k);
    FittedModel model = fit_logistic(subset_columns(train_imputed, top), train_y);
    FeatureMatrix eval_sub = subset_columns(eval_X, top).imputed();
    std::vector<double> scores(eval_sub.rows());
    std::vector<double> row(top.size());
    for (std::size_t r = 0; r < eval_sub.rows(); ++r) {
      for (std::size_t c = 0; c < top.size(); ++c) row[c] = eval_sub.at(r, c);
      scores[r] = model.predict(row);
    }
    return scores;
  };

  try {
    if (options.in_sample) {
      auto scores = rank_and_score(X, labels, X);
      RocCurve roc = roc_auc(scores, labels);
      result.fold_auc.push_back(roc.auc);
      result.average_auc = roc.auc;
      result.pooled_scores = std::move(scores);
      result.pooled_roc = std::move(roc);
      result.ok = true;
      return result;
    }

    std::size_t folds = *std::max_element(fold_of.begin(), fold_of.end()) + 1;
    std::vector<double> pooled_scores(labels.size(), 0.0);
    for (std::size_t f = 0; f < folds; ++f) {
      std::vector<std::size_t> train_rows, test_rows;
      for (std::size_t r = 0; r < labels.size(); ++r) {
        (fold_of[r] == f ? test_rows : train_rows).push_back(r);
      }
      std::vector<int> train_y, test_y;
      for (std::size_t r : train_rows) train_y.push_back(labels[r]);
      for (std::size_t r : test_rows) test_y.push_back(labels[r]);
      auto scores = rank_and_score(subset_rows(X, train_rows), train_y,
                                   subset_rows(X, test_rows));
      result.fold_auc.push_back(roc_auc(scores, test_y).auc);
      for (std::size_t i = 0; i < test_rows.size(); ++i) {
        pooled_scores[test_rows[i]] = scores[i];
      }
    }
    result.average_auc =
        std::accumulate(result.fold_auc.begin(), result.fold_auc.end(), 0.0) /
        static_cast<double>(result.fold_auc.size());
    result.pooled_roc = roc_auc(pooled_scores, labels);
    result.pooled_scores = std::move(pooled_scores);
    result.ok = true;
  } catch (const Error& e) {
    result.ok = false;
    result.error = std::string(errc_name(e.code())) + ": " + e.what();
  }
  return result;
}

}  // namespace

ComparisonReport compare_methods(const std::map<std::string, FeatureMatrix>& method_features,
                                 const std::vector<int>& labels, const EvalOptions& options) {
  // Pre: all matrices share the enterprise row ordering.
  const std::vector<std::string>* reference = nullptr;
  for (const auto& [name, X] : method_features) {
    if (X.rows() != labels.size()) {
      throw Error(Errc::Usage, "compare_methods: matrix '" + name + "' row count mismatch");
    }
    if (reference && X.row_ids() != *reference) {
      throw Error(Errc::Usage, "compare_methods: matrices do not share the row ordering");
    }
    reference = &X.row_ids();
  }
  auto fold_of = stratified_folds(labels, options.folds, options.seed);
  ComparisonReport report;
  for (const auto& [name, X] : method_features) {  // std::map: ordered by name
    report.methods.push_back(evaluate_method(name, X, labels, fold_of, options));
  }
  return report;
}

std::string ComparisonReport::to_json() const {
  json j;
  j["methods"] = json::array();
  for (const auto& m : methods) {
    json jm;
    jm["name"] = m.name;
    jm["ok"] = m.ok;
    if (m.ok) {
      jm["average_auc"] = m.average_auc;
      jm["fold_auc"] = m.fold_auc;
    } else {
      jm["error"] = m.error;
    }
    j["methods"].push_back(std::move(jm));
  }
  return j.dump(2);
}

void write_sweep_csv(const SweepSeries& series, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::Usage, path + ": cannot open for writing");
  out << "window_start,window_end,metric\n";
  out.precision(17);
  for (const auto& entry : series) {
    out << entry.window_start << ',' << entry.window_end << ',';
    if (entry.metric) out << *entry.metric;
    out << '\n';
  }
}

}  // namespace hinrisk
