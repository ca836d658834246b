#pragma once

#include <map>
#include <string>
#include <vector>

#include "hinrisk/hin.hpp"

namespace hinrisk {

// Categorical Naive Bayes over the discretized attributes of one object type.
// Likelihoods are Laplace-smoothed; attribute evaluation order is the sorted
// attribute name order, which fixes the floating-point accumulation order.
class NaiveBayesModel {
 public:
  struct AttributeTable {
    std::string name;
    std::vector<std::string> levels;          // sorted
    std::vector<double> likelihood_risky;     // P(level | y=1), aligned to levels
    std::vector<double> likelihood_nonrisky;  // P(level | y=0)
    // Smoothed mass for a level never seen in training: alpha/(n_y + alpha*L).
    double unseen_risky = 0.0;
    double unseen_nonrisky = 0.0;
  };

  std::string object_type;
  double alpha = 1.0;
  double prior_risky = 0.5;
  double prior_nonrisky = 0.5;
  std::vector<AttributeTable> attributes;  // sorted by name

  // P(y=1|x) per the Naive Bayes ratio, evaluated in log space.
  // Throws UnknownAttribute when x carries an attribute not in the registry.
  double posterior(const Node& x) const;
  // Strict threshold: posterior > 0.5 (the boundary itself is non-risky).
  bool gamma(const Node& x) const;

  std::string to_json() const;
  static NaiveBayesModel from_json(const std::string& text);
};

// Full inference function: news nodes take their polarity label directly
// (absent label reads as non-risky); every other type goes through its
// model's posterior with the strict 0.5 threshold.
bool gamma(const Hin& hin, const std::map<TypeId, NaiveBayesModel>& models, NodeIdx x);

// Fits priors and smoothed likelihoods from the labeled nodes of `otype`.
// The attribute registry (names and level sets) is collected from all nodes
// of the type so that scoring unlabeled nodes never hits a missing table.
// Throws NoLabeledNodes / SingleClass on degenerate label sets.
NaiveBayesModel fit_nb(const Hin& hin, TypeId otype, double alpha = 1.0);

// Copy of `hin` where every unlabeled non-news node with a model for its type
// gains risk_label = (posterior > threshold). Observed labels are kept.
// Throws MissingModel when an unlabeled non-news node has no model.
Hin impute_labels(const Hin& hin, const std::map<TypeId, NaiveBayesModel>& models,
                  double threshold);

// Tri-state risk map aligned with node indices: 1 risky, 0 non-risky,
// -1 unknown. Labeled nodes take their label; unlabeled news read as 0.
std::vector<signed char> assemble_risk_map(const Hin& hin);

// Quantile discretization used at ingestion: maps raw numeric columns onto
// `bins` categorical levels ("q0".."q<bins-1>") with equal-frequency cuts.
std::vector<std::string> quantile_bins(const std::vector<double>& values, int bins);

}  // namespace hinrisk
