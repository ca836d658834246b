#include "hinrisk/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "hinrisk/error.hpp"
#include "hinrisk/stats.hpp"

namespace hinrisk {

using nlohmann::json;

namespace {

double log_likelihood(const Eigen::MatrixXd& Z, const Eigen::VectorXd& y,
                      const Eigen::VectorXd& beta) {
  Eigen::VectorXd eta = Z * beta;
  double ll = 0.0;
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    ll += y[i] * eta[i] - softplus(eta[i]);
  }
  return ll;
}

Eigen::MatrixXd information_matrix(const Eigen::MatrixXd& Z, const Eigen::VectorXd& beta) {
  Eigen::VectorXd eta = Z * beta;
  Eigen::VectorXd w(eta.size());
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    double p = sigmoid(eta[i]);
    w[i] = p * (1.0 - p);
  }
  return Z.transpose() * w.asDiagonal() * Z;
}

// Inverse via LDLT with one ridge retry; throws SingularInformation.
Eigen::MatrixXd invert_information(Eigen::MatrixXd info, double jitter) {
  const Eigen::Index k = info.rows();
  Eigen::LDLT<Eigen::MatrixXd> ldlt(info);
  if (ldlt.info() == Eigen::Success && ldlt.isPositive()) {
    Eigen::MatrixXd inv = ldlt.solve(Eigen::MatrixXd::Identity(k, k));
    if (inv.allFinite()) return inv;
  }
  info.diagonal().array() += jitter;
  Eigen::LDLT<Eigen::MatrixXd> retry(info);
  if (retry.info() == Eigen::Success) {
    Eigen::MatrixXd inv = retry.solve(Eigen::MatrixXd::Identity(k, k));
    if (inv.allFinite()) return inv;
  }
  throw Error(Errc::SingularInformation,
              "fit_logistic: information matrix is singular even after ridge jitter");
}

}  // namespace

double FittedModel::predict(std::span<const double> x) const {
  if (x.size() != features.size()) {
    throw Error(Errc::Usage, "predict: feature vector length mismatch");
  }
  double eta = intercept;
  for (std::size_t j = 0; j < features.size(); ++j) {
    if (features[j].dropped_zero_variance) continue;
    eta += features[j].beta * x[j];
  }
  return sigmoid(eta);
}

FittedModel fit_logistic(const FeatureMatrix& X, const std::vector<int>& y,
                         const FitOptions& options) {
  const std::size_t n = X.rows();
  const std::size_t k = X.cols();
  if (y.size() != n) {
    throw Error(Errc::Usage, "fit_logistic: label count does not match row count");
  }
  std::size_t pos = 0;
  for (int v : y) pos += (v != 0);
  if (pos == 0 || pos == n) {
    throw Error(Errc::DegenerateLabels, "fit_logistic: labels contain a single class");
  }
  if (X.missing_count() > 0) {
    throw Error(Errc::Usage, "fit_logistic: matrix has missing entries; impute first");
  }

  FittedModel model;
  model.column_mean.resize(k);
  model.column_stdev.resize(k);
  std::vector<std::size_t> kept;  // columns with nonzero variance
  for (std::size_t c = 0; c < k; ++c) {
    double mean = 0.0;
    for (std::size_t r = 0; r < n; ++r) mean += X.at(r, c);
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      double d = X.at(r, c) - mean;
      var += d * d;
    }
    var /= static_cast<double>(n);
    model.column_mean[c] = mean;
    model.column_stdev[c] = std::sqrt(var);
    if (model.column_stdev[c] > 0.0) kept.push_back(c);
  }

  const std::size_t kk = kept.size();
  Eigen::MatrixXd Z(n, kk + 1);
  Eigen::VectorXd yv(n);
  for (std::size_t r = 0; r < n; ++r) {
    Z(static_cast<Eigen::Index>(r), 0) = 1.0;
    yv[static_cast<Eigen::Index>(r)] = y[r] ? 1.0 : 0.0;
    for (std::size_t j = 0; j < kk; ++j) {
      std::size_t c = kept[j];
      Z(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j + 1)) =
          (X.at(r, c) - model.column_mean[c]) / model.column_stdev[c];
    }
  }

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(kk + 1));
  double ll = log_likelihood(Z, yv, beta);
  model.convergence.log_likelihood_trace.push_back(ll);

  Eigen::VectorXd grad;
  std::size_t iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    Eigen::VectorXd eta = Z * beta;
    Eigen::VectorXd p(eta.size());
    for (Eigen::Index i = 0; i < eta.size(); ++i) p[i] = sigmoid(eta[i]);
    grad = Z.transpose() * (yv - p);
    if (grad.lpNorm<Eigen::Infinity>() <= options.gradient_tolerance) {
      model.convergence.converged = true;
      break;
    }
    Eigen::MatrixXd info = information_matrix(Z, beta);
    Eigen::LDLT<Eigen::MatrixXd> ldlt(info);
    Eigen::VectorXd delta;
    if (ldlt.info() == Eigen::Success) {
      delta = ldlt.solve(grad);
    }
    if (ldlt.info() != Eigen::Success || !delta.allFinite()) {
      info.diagonal().array() += options.ridge_jitter;
      Eigen::LDLT<Eigen::MatrixXd> retry(info);
      if (retry.info() != Eigen::Success) {
        throw Error(Errc::SingularInformation,
                    "fit_logistic: cannot solve the Newton system");
      }
      delta = retry.solve(grad);
      if (!delta.allFinite()) {
        throw Error(Errc::SingularInformation,
                    "fit_logistic: cannot solve the Newton system");
      }
    }
    // Step halving keeps the log-likelihood nondecreasing.
    double step = 1.0;
    double new_ll = log_likelihood(Z, yv, beta + step * delta);
    while (new_ll < ll && step > 1e-12) {
      step /= 2.0;
      new_ll = log_likelihood(Z, yv, beta + step * delta);
    }
    beta += step * delta;
    ll = new_ll;
    model.convergence.log_likelihood_trace.push_back(ll);
    if (beta.norm() > options.separation_norm) {
      throw Error(Errc::SeparationDetected,
                  "fit_logistic: coefficients diverged; data is likely separable");
    }
  }
  if (!model.convergence.converged) {
    Eigen::VectorXd eta = Z * beta;
    Eigen::VectorXd p(eta.size());
    for (Eigen::Index i = 0; i < eta.size(); ++i) p[i] = sigmoid(eta[i]);
    grad = Z.transpose() * (yv - p);
    model.convergence.converged =
        grad.lpNorm<Eigen::Infinity>() <= options.gradient_tolerance;
  }
  model.convergence.iterations = iter;
  model.convergence.gradient_norm = grad.lpNorm<Eigen::Infinity>();

  Eigen::MatrixXd cov = invert_information(information_matrix(Z, beta), options.ridge_jitter);

  // Map back to the original scale: beta_j/sd_j, intercept absorbs the means.
  model.features.assign(k, CoefficientStats{});
  double intercept_std = beta[0];
  Eigen::VectorXd e = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(kk + 1));
  e[0] = 1.0;
  for (std::size_t j = 0; j < kk; ++j) {
    std::size_t c = kept[j];
    auto& f = model.features[c];
    f.name = X.column_names()[c];
    double b = beta[static_cast<Eigen::Index>(j + 1)];
    double se = std::sqrt(cov(static_cast<Eigen::Index>(j + 1), static_cast<Eigen::Index>(j + 1)));
    f.beta = b / model.column_stdev[c];
    f.se = se / model.column_stdev[c];
    f.wald = se > 0.0 ? (b / se) * (b / se) : 0.0;
    f.p_value = chi_square1_upper_tail(f.wald);
    f.p_clamped = p_value_clamped(f.wald);
    f.stars = significance_stars(f.p_value);
    intercept_std -= b * model.column_mean[c] / model.column_stdev[c];
    e[static_cast<Eigen::Index>(j + 1)] = -model.column_mean[c] / model.column_stdev[c];
  }
  for (std::size_t c = 0; c < k; ++c) {
    if (model.column_stdev[c] == 0.0) {
      auto& f = model.features[c];
      f.name = X.column_names()[c];
      f.dropped_zero_variance = true;
      f.p_value = 1.0;
    }
  }
  model.intercept = intercept_std;
  model.intercept_se = std::sqrt(e.transpose() * cov * e);
  return model;
}

FeatureRanking wald_rank(const FittedModel& model) {
  FeatureRanking ranking;
  ranking.reserve(model.features.size());
  for (const auto& f : model.features) {
    ranking.push_back(RankedFeature{f.name, f.p_value, f.stars});
  }
  std::sort(ranking.begin(), ranking.end(), [](const RankedFeature& a, const RankedFeature& b) {
    if (a.p_value != b.p_value) return a.p_value < b.p_value;
    return a.name < b.name;
  });
  return ranking;
}

FeatureRanking univariate_wald_rank(const FeatureMatrix& X, const std::vector<int>& y,
                                    const FitOptions& options) {
  FeatureRanking ranking;
  for (std::size_t c = 0; c < X.cols(); ++c) {
    FeatureMatrix single(X.row_ids(), {X.column_names()[c]});
    for (std::size_t r = 0; r < X.rows(); ++r) {
      if (X.defined(r, c)) single.set(r, 0, X.at(r, c));
    }
    RankedFeature rf{X.column_names()[c], 1.0, ""};
    try {
      FittedModel m = fit_logistic(single.imputed(), y, options);
      rf.p_value = m.features[0].p_value;
      rf.stars = m.features[0].stars;
    } catch (const Error&) {
      // separation or singularity in a univariate screen: rank last
      rf.p_value = 1.0;
    }
    ranking.push_back(std::move(rf));
  }
  std::sort(ranking.begin(), ranking.end(), [](const RankedFeature& a, const RankedFeature& b) {
    if (a.p_value != b.p_value) return a.p_value < b.p_value;
    return a.name < b.name;
  });
  return ranking;
}

std::vector<std::string> select_top_k(const FeatureRanking& ranking, std::size_t k) {
  if (k < 1) {
    throw Error(Errc::Usage, "select_top_k: k must be >= 1");
  }
  std::vector<std::string> out;
  for (std::size_t i = 0; i < ranking.size() && i < k; ++i) out.push_back(ranking[i].name);
  return out;
}

std::string FittedModel::report_json() const {
  json j;
  j["intercept"] = {{"beta", intercept}, {"se", intercept_se}};
  j["features"] = json::array();
  for (const auto& f : features) {
    json jf;
    jf["name"] = f.name;
    jf["beta"] = f.beta;
    jf["se"] = f.se;
    jf["wald"] = f.wald;
    jf["p_value"] = f.p_value;
    jf["stars"] = f.stars;
    if (f.dropped_zero_variance) jf["dropped_zero_variance"] = true;
    if (f.p_clamped) jf["p_clamped"] = true;
    j["features"].push_back(std::move(jf));
  }
  j["convergence"] = {{"iterations", convergence.iterations},
                      {"grad_norm", convergence.gradient_norm},
                      {"converged", convergence.converged}};
  return j.dump(2);
}

void FittedModel::write_report_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error(Errc::Usage, path + ": cannot open for writing");
  out << "rank,feature,p_value,significance\n";
  FeatureRanking ranking = wald_rank(*this);
  std::size_t rank = 1;
  for (const auto& rf : ranking) {
    out << rank++ << ',' << rf.name << ',' << format_p_value(rf.p_value) << ',' << rf.stars
        << '\n';
  }
}

}  // namespace hinrisk
