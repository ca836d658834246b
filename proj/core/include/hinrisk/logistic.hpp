#pragma once

#include <span>
#include <string>
#include <vector>

#include "hinrisk/mp_features.hpp"

namespace hinrisk {

// Per-coefficient inference results, reported on the original feature scale.
// Wald statistics are scale-invariant, so they agree with the standardized
// fit the solver actually runs on.
struct CoefficientStats {
  std::string name;
  double beta = 0.0;
  double se = 0.0;
  double wald = 0.0;
  double p_value = 1.0;
  std::string stars;
  bool dropped_zero_variance = false;
  bool p_clamped = false;
};

struct ConvergenceReport {
  std::size_t iterations = 0;
  double gradient_norm = 0.0;
  bool converged = false;
  std::vector<double> log_likelihood_trace;  // one entry per accepted step
};

// Logistic regression fitted by damped Newton maximum likelihood on z-scored
// features. Immutable after fitting.
class FittedModel {
 public:
  double intercept = 0.0;                  // original scale
  double intercept_se = 0.0;
  std::vector<CoefficientStats> features;  // aligned with the input columns
  std::vector<double> column_mean;         // standardization parameters
  std::vector<double> column_stdev;        // 0 marks a dropped column
  ConvergenceReport convergence;

  // P(y=1 | x) for a raw (unstandardized) feature vector.
  double predict(std::span<const double> x) const;

  std::string report_json() const;
  // Tables layout: rank, feature name, p-value (5 significant digits), stars.
  void write_report_csv(const std::string& path) const;
};

struct FitOptions {
  std::size_t max_iterations = 100;
  double gradient_tolerance = 1e-8;
  double separation_norm = 1e4;   // ||beta|| beyond this means divergence
  double ridge_jitter = 1e-8;     // added to the information matrix if singular
};

// Fits on a fully defined matrix (impute first). Throws DegenerateLabels when
// one class is absent, SeparationDetected when coefficients diverge, and
// SingularInformation when the information matrix stays singular after jitter.
// Zero-variance columns are dropped and reported with p = 1.
FittedModel fit_logistic(const FeatureMatrix& X, const std::vector<int>& y,
                         const FitOptions& options = {});

struct RankedFeature {
  std::string name;
  double p_value = 1.0;
  std::string stars;
};

// Ascending by p-value, ties broken by feature name; intercept excluded.
using FeatureRanking = std::vector<RankedFeature>;

FeatureRanking wald_rank(const FittedModel& model);

// Screening alternative: one univariate fit (intercept + single feature) per
// column, ranked by each feature's own Wald p-value.
FeatureRanking univariate_wald_rank(const FeatureMatrix& X, const std::vector<int>& y,
                                    const FitOptions& options = {});

std::vector<std::string> select_top_k(const FeatureRanking& ranking, std::size_t k);

}  // namespace hinrisk
