#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hinrisk/hetesim.hpp"
#include "hinrisk/hin.hpp"
#include "hinrisk/metapath.hpp"

namespace hinrisk {

enum class FeatureKind { Naive, CountSim, HeteSim };

const char* feature_kind_name(FeatureKind kind);
FeatureKind feature_kind_from_name(const std::string& name);

// One feature column: a meta path plus the formula family applied to it.
// The canonical name is "<dsl>:<kind>", e.g. "E-[control]->P:naive"; the DSL
// part round-trips through the parser.
struct FeatureSpec {
  MetaPath mp;
  FeatureKind kind = FeatureKind::Naive;

  std::string name(const Schema& schema) const;
  static FeatureSpec from_name(const std::string& name, const Schema& schema);
};

// Tri-state risk map: 1 risky, 0 non-risky, -1 unknown (see assemble_risk_map).
using RiskMap = std::vector<signed char>;

// Enterprises x features with an explicit missing mask. Undefined entries
// (no path instances, zero denominators, unknown target risk) stay missing
// until imputation.
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::vector<std::string> row_ids, std::vector<std::string> column_names);

  std::size_t rows() const { return row_ids_.size(); }
  std::size_t cols() const { return column_names_.size(); }
  const std::vector<std::string>& row_ids() const { return row_ids_; }
  const std::vector<std::string>& column_names() const { return column_names_; }

  void set(std::size_t r, std::size_t c, double value);
  void set_missing(std::size_t r, std::size_t c);
  bool defined(std::size_t r, std::size_t c) const;
  double at(std::size_t r, std::size_t c) const;  // 0.0 when missing

  std::size_t missing_count() const;

  // Column means over defined entries (0 when a column is entirely missing).
  std::vector<double> column_means() const;
  // Copy with missing entries replaced by the column mean.
  FeatureMatrix imputed() const;

  // CSV with header `enterprise_id,<col>,...`; missing entries are empty fields.
  void write_csv(const std::string& path) const;
  static FeatureMatrix read_csv(const std::string& path);

 private:
  std::vector<std::string> row_ids_;
  std::vector<std::string> column_names_;
  std::vector<double> values_;        // row-major
  std::vector<unsigned char> defined_;
};

// Naive MP feature: share of distinct reachable targets that are risky.
// Missing when there are no targets or a target's risk is unknown.
std::optional<double> naive_mp(const Hin& hin, NodeIdx x, const MetaPath& mp,
                               const RiskMap& risk);
// Exact counts behind naive_mp: (risky targets, all targets).
std::optional<std::pair<std::size_t, std::size_t>> naive_mp_counts(const Hin& hin, NodeIdx x,
                                                                   const MetaPath& mp,
                                                                   const RiskMap& risk);

// CountSim MP feature: |targets| / (|distinct out-neighborhood of x| + total
// incident-edge count of the target set). Purely structural (no risk term);
// missing when the denominator is zero.
std::optional<double> countsim_mp(const Hin& hin, NodeIdx x, const MetaPath& mp);

// HeteSim MP feature: risky share of total HeteSim relevance over reachable
// targets. Missing when the relevance mass is zero or a target risk unknown.
std::optional<double> hetesim_mp(const Hin& hin, const HeteSimEngine& engine, NodeIdx x,
                                 const MetaPath& mp, const RiskMap& risk);

// Aggregated statistics recorded next to an exported matrix.
struct FeatureBuildInfo {
  std::vector<std::string> spec_names;
  std::vector<std::size_t> missing_per_column;
  std::vector<double> imputed_value_per_column;
};

// Matrix over all enterprise nodes (sorted by id) x specs. Per-entry failures
// become missing-mask entries; nothing aborts the build. `workers` > 1 splits
// rows across threads; output is identical for any worker count.
FeatureMatrix build_feature_matrix(const Hin& hin, const std::vector<FeatureSpec>& specs,
                                   const RiskMap& risk, std::size_t workers = 1,
                                   FeatureBuildInfo* info = nullptr);

// Sidecar JSON: spec definitions plus imputation statistics.
std::string feature_sidecar_json(const Schema& schema, const std::vector<FeatureSpec>& specs,
                                 const FeatureBuildInfo& info);

}  // namespace hinrisk
