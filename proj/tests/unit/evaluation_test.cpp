#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "hinrisk/error.hpp"
#include "hinrisk/evaluation.hpp"
#include "hinrisk/stats.hpp"
#include "oracles.hpp"

using namespace hinrisk;

TEST_CASE("perfectly separating scores give AUC 1") {
  RocCurve roc = roc_auc({0.9, 0.8, 0.2, 0.1}, {1, 1, 0, 0});
  CHECK(roc.auc == 1.0);
  CHECK(roc.points.front() == std::pair<double, double>{0.0, 0.0});
  CHECK(roc.points.back() == std::pair<double, double>{1.0, 1.0});
}

TEST_CASE("all-equal scores give AUC one half") {
  RocCurve roc = roc_auc({0.5, 0.5, 0.5, 0.5}, {1, 0, 1, 0});
  CHECK(roc.auc == 0.5);
}

TEST_CASE("four-point fixture yields 0.75") {
  RocCurve roc = roc_auc({0.9, 0.8, 0.3, 0.2}, {1, 0, 1, 0});
  CHECK(roc.auc == 0.75);
  CHECK(oracle::auc({0.9, 0.8, 0.3, 0.2}, {1, 0, 1, 0}) == 0.75);
}

TEST_CASE("degenerate labels are rejected") {
  CHECK_THROWS_AS(roc_auc({0.1, 0.2}, {1, 1}), Error);
  CHECK_THROWS_AS(roc_auc({0.1, 0.2}, {0, 0}), Error);
}

TEST_CASE("trapezoid AUC equals the Mann-Whitney statistic on random draws") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> size(4, 60);
  std::uniform_int_distribution<int> coarse(0, 8);
  for (int trial = 0; trial < 1000; ++trial) {
    int n = size(rng);
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    bool any_pos = false, any_neg = false;
    for (int i = 0; i < n; ++i) {
      // coarse grid forces plenty of ties
      scores[i] = (trial % 2 == 0) ? unit(rng) : coarse(rng) / 8.0;
      labels[i] = unit(rng) < 0.4 ? 1 : 0;
      (labels[i] ? any_pos : any_neg) = true;
    }
    if (!any_pos || !any_neg) continue;
    RocCurve roc = roc_auc(scores, labels);
    CHECK(std::fabs(roc.auc - oracle::auc(scores, labels)) < 1e-12);
  }
}

TEST_CASE("ROC points are monotone and AUC complements under score negation") {
  std::mt19937_64 rng(4321);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 30;
    std::vector<double> scores(n);
    std::vector<int> labels(n);
    bool any_pos = false, any_neg = false;
    for (int i = 0; i < n; ++i) {
      scores[i] = unit(rng);
      labels[i] = unit(rng) < 0.5 ? 1 : 0;
      (labels[i] ? any_pos : any_neg) = true;
    }
    if (!any_pos || !any_neg) continue;
    RocCurve roc = roc_auc(scores, labels);
    for (std::size_t i = 1; i < roc.points.size(); ++i) {
      CHECK(roc.points[i].first >= roc.points[i - 1].first);
      CHECK(roc.points[i].second >= roc.points[i - 1].second);
    }
    std::vector<double> negated(scores);
    for (auto& v : negated) v = -v;
    CHECK(std::fabs(roc.auc + roc_auc(negated, labels).auc - 1.0) < 1e-12);

    // strictly increasing transform leaves the AUC unchanged
    std::vector<double> transformed(scores);
    for (auto& v : transformed) v = std::exp(3.0 * v) + 1.0;
    CHECK(roc_auc(transformed, labels).auc == roc.auc);
  }
}

namespace {

// Feature matrices with one informative column and some noise columns.
std::pair<std::map<std::string, FeatureMatrix>, std::vector<int>> synthetic_methods(
    std::uint64_t seed, std::size_t n, double signal_a, double signal_b) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<std::string> ids;
  for (std::size_t i = 0; i < n; ++i) ids.push_back("ent" + std::to_string(i));

  FeatureMatrix a(ids, {"f0", "f1", "f2"});
  FeatureMatrix b(ids, {"g0", "g1", "g2"});
  std::vector<int> labels(n);
  for (std::size_t i = 0; i < n; ++i) {
    double latent = normal(rng);
    labels[i] = unit(rng) < sigmoid(1.8 * latent) ? 1 : 0;
    a.set(i, 0, signal_a * latent + 0.3 * normal(rng));
    a.set(i, 1, normal(rng));
    a.set(i, 2, normal(rng));
    b.set(i, 0, signal_b * latent + 0.3 * normal(rng));
    b.set(i, 1, normal(rng));
    b.set(i, 2, normal(rng));
  }
  std::map<std::string, FeatureMatrix> methods;
  methods.emplace("alpha", std::move(a));
  methods.emplace("beta", std::move(b));
  return {std::move(methods), std::move(labels)};
}

}  // namespace

TEST_CASE("identical methods earn identical average AUC") {
  auto [methods, labels] = synthetic_methods(5, 150, 1.0, 1.0);
  std::map<std::string, FeatureMatrix> twins;
  twins.emplace("one", methods.at("alpha"));
  twins.emplace("two", methods.at("alpha"));
  EvalOptions opts;
  opts.top_k = 2;
  opts.folds = 3;
  opts.seed = 9;
  ComparisonReport report = compare_methods(twins, labels, opts);
  REQUIRE(report.methods.size() == 2);
  REQUIRE(report.methods[0].ok);
  REQUIRE(report.methods[1].ok);
  CHECK(report.methods[0].average_auc == report.methods[1].average_auc);
}

TEST_CASE("compare_methods is bit-reproducible under a fixed seed") {
  auto [methods, labels] = synthetic_methods(6, 120, 1.2, 0.4);
  EvalOptions opts;
  opts.top_k = 2;
  opts.folds = 4;
  opts.seed = 17;
  ComparisonReport r1 = compare_methods(methods, labels, opts);
  ComparisonReport r2 = compare_methods(methods, labels, opts);
  REQUIRE(r1.methods.size() == r2.methods.size());
  for (std::size_t i = 0; i < r1.methods.size(); ++i) {
    CHECK(r1.methods[i].average_auc == r2.methods[i].average_auc);
    CHECK(r1.methods[i].fold_auc == r2.methods[i].fold_auc);
  }
}

TEST_CASE("stronger signal earns a higher average AUC") {
  auto [methods, labels] = synthetic_methods(7, 400, 1.6, 0.15);
  EvalOptions opts;
  opts.top_k = 2;
  opts.folds = 5;
  opts.seed = 23;
  ComparisonReport report = compare_methods(methods, labels, opts);
  REQUIRE(report.methods[0].ok);  // alpha
  REQUIRE(report.methods[1].ok);  // beta
  CHECK(report.methods[0].name == "alpha");
  CHECK(report.methods[0].average_auc > report.methods[1].average_auc);
  CHECK(report.methods[0].average_auc > 0.7);
}

TEST_CASE("label-shuffled control stays near chance over 20 seeds") {
  std::mt19937_64 shuffle_rng(99);
  double sum = 0.0;
  int runs = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto [methods, labels] = synthetic_methods(seed, 160, 1.5, 1.0);
    std::shuffle(labels.begin(), labels.end(), shuffle_rng);
    EvalOptions opts;
    opts.top_k = 2;
    opts.folds = 4;
    opts.seed = seed;
    ComparisonReport report = compare_methods(methods, labels, opts);
    for (const auto& m : report.methods) {
      if (!m.ok) continue;
      sum += m.average_auc;
      ++runs;
    }
  }
  REQUIRE(runs > 0);
  double mean = sum / runs;
  CHECK(mean > 0.4);
  CHECK(mean < 0.6);
}

TEST_CASE("a failing method does not abort the others") {
  auto [methods, labels] = synthetic_methods(8, 100, 1.0, 1.0);
  // a perfectly separating column makes this method's fit throw
  std::vector<std::string> ids = methods.at("alpha").row_ids();
  FeatureMatrix separating(ids, {"sep"});
  for (std::size_t i = 0; i < ids.size(); ++i) {
    separating.set(i, 0, labels[i] ? 1.0 : 0.0);
  }
  methods.emplace("broken", std::move(separating));
  EvalOptions opts;
  opts.top_k = 1;
  opts.folds = 4;
  opts.seed = 31;
  ComparisonReport report = compare_methods(methods, labels, opts);
  REQUIRE(report.methods.size() == 3);
  bool saw_failure = false, saw_success = false;
  for (const auto& m : report.methods) {
    if (m.name == "broken") {
      CHECK_FALSE(m.ok);
      CHECK(!m.error.empty());
      saw_failure = true;
    } else {
      CHECK(m.ok);
      saw_success = true;
    }
  }
  CHECK(saw_failure);
  CHECK(saw_success);
}

TEST_CASE("stratified folds cover every row and balance the classes") {
  std::vector<int> labels(97);
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = (i % 3 == 0) ? 1 : 0;
  auto folds = stratified_folds(labels, 5, 42);
  REQUIRE(folds.size() == labels.size());
  std::vector<std::size_t> pos_per(5, 0), total_per(5, 0);
  for (std::size_t i = 0; i < labels.size(); ++i) {
    REQUIRE(folds[i] < 5);
    total_per[folds[i]]++;
    if (labels[i]) pos_per[folds[i]]++;
  }
  auto [pmin, pmax] = std::minmax_element(pos_per.begin(), pos_per.end());
  CHECK(*pmax - *pmin <= 1);
  // same seed, same assignment; different seed, different assignment
  CHECK(stratified_folds(labels, 5, 42) == folds);
  CHECK(stratified_folds(labels, 5, 43) != folds);
}

TEST_CASE("roc and sweep CSV writers emit the declared headers") {
  RocCurve roc = roc_auc({0.9, 0.1}, {1, 0});
  write_roc_csv(roc, "roc_test.csv");
  std::ifstream in("roc_test.csv");
  std::string header;
  std::getline(in, header);
  CHECK(header == "fpr,tpr");
  std::remove("roc_test.csv");

  SweepSeries series;
  series.push_back(SweepEntry{0, 10, 0.8, ""});
  series.push_back(SweepEntry{5, 10, std::nullopt, "EmptyWindow"});
  write_sweep_csv(series, "sweep_test.csv");
  std::ifstream sin("sweep_test.csv");
  std::getline(sin, header);
  CHECK(header == "window_start,window_end,metric");
  std::string line1, line2;
  std::getline(sin, line1);
  std::getline(sin, line2);
  CHECK(line1.find("0,10,0.8") == 0);
  CHECK(line2 == "5,10,");
  std::remove("sweep_test.csv");
}
