#include "hinrisk/mp_features.hpp"

#include <algorithm>
#include <fstream>
#include <thread>

#include <nlohmann/json.hpp>

#include "hinrisk/csv.hpp"
#include "hinrisk/error.hpp"

namespace hinrisk {

using nlohmann::json;

const char* feature_kind_name(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::Naive: return "naive";
    case FeatureKind::CountSim: return "countsim";
    case FeatureKind::HeteSim: return "hetesim";
  }
  return "naive";
}

FeatureKind feature_kind_from_name(const std::string& name) {
  if (name == "naive") return FeatureKind::Naive;
  if (name == "countsim") return FeatureKind::CountSim;
  if (name == "hetesim") return FeatureKind::HeteSim;
  throw Error(Errc::Usage, "unknown feature kind '" + name + "'");
}

std::string FeatureSpec::name(const Schema& schema) const {
  return format_metapath(mp, schema) + ":" + feature_kind_name(kind);
}

FeatureSpec FeatureSpec::from_name(const std::string& name, const Schema& schema) {
  auto pos = name.rfind(':');
  if (pos == std::string::npos) {
    throw Error(Errc::SyntaxError, "feature name '" + name + "' lacks a kind suffix");
  }
  FeatureSpec spec;
  spec.mp = parse_metapath(name.substr(0, pos), schema);
  spec.kind = feature_kind_from_name(name.substr(pos + 1));
  return spec;
}

FeatureMatrix::FeatureMatrix(std::vector<std::string> row_ids,
                             std::vector<std::string> column_names)
    : row_ids_(std::move(row_ids)),
      column_names_(std::move(column_names)),
      values_(row_ids_.size() * column_names_.size(), 0.0),
      defined_(row_ids_.size() * column_names_.size(), 0) {}

void FeatureMatrix::set(std::size_t r, std::size_t c, double value) {
  values_[r * cols() + c] = value;
  defined_[r * cols() + c] = 1;
}

void FeatureMatrix::set_missing(std::size_t r, std::size_t c) {
  values_[r * cols() + c] = 0.0;
  defined_[r * cols() + c] = 0;
}

bool FeatureMatrix::defined(std::size_t r, std::size_t c) const {
  return defined_[r * cols() + c] != 0;
}

double FeatureMatrix::at(std::size_t r, std::size_t c) const {
  return values_[r * cols() + c];
}

std::size_t FeatureMatrix::missing_count() const {
  std::size_t n = 0;
  for (auto d : defined_) n += (d == 0);
  return n;
}

std::vector<double> FeatureMatrix::column_means() const {
  std::vector<double> mean(cols(), 0.0);
  std::vector<std::size_t> count(cols(), 0);
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c = 0; c < cols(); ++c) {
      if (defined(r, c)) {
        mean[c] += at(r, c);
        count[c]++;
      }
    }
  }
  for (std::size_t c = 0; c < cols(); ++c) {
    if (count[c] > 0) mean[c] /= static_cast<double>(count[c]);
  }
  return mean;
}

FeatureMatrix FeatureMatrix::imputed() const {
  FeatureMatrix out(*this);
  auto means = column_means();
  for (std::size_t r = 0; r < rows(); ++r) {
    for (std::size_t c = 0; c < cols(); ++c) {
      if (!out.defined(r, c)) out.set(r, c, means[c]);
    }
  }
  return out;
}

void FeatureMatrix::write_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw Error(Errc::Usage, path + ": cannot open for writing");
  out << "enterprise_id";
  for (const auto& c : column_names_) out << ',' << csv::escape_field(c);
  out << '\n';
  out.precision(17);
  for (std::size_t r = 0; r < rows(); ++r) {
    out << csv::escape_field(row_ids_[r]);
    for (std::size_t c = 0; c < cols(); ++c) {
      out << ',';
      if (defined(r, c)) out << at(r, c);
    }
    out << '\n';
  }
}

FeatureMatrix FeatureMatrix::read_csv(const std::string& path) {
  csv::Table table = csv::read_file(path);
  if (table.header.empty() || table.header[0] != "enterprise_id") {
    throw Error(Errc::SyntaxError, path + ": first column must be enterprise_id");
  }
  std::vector<std::string> cols(table.header.begin() + 1, table.header.end());
  std::vector<std::string> rows;
  rows.reserve(table.rows.size());
  for (const auto& row : table.rows) rows.push_back(row.fields.at(0));
  FeatureMatrix m(std::move(rows), std::move(cols));
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const auto& fields = table.rows[r].fields;
    for (std::size_t c = 0; c + 1 < fields.size(); ++c) {
      const std::string& f = fields[c + 1];
      if (f.empty()) continue;
      m.set(r, c, std::stod(f));
    }
  }
  return m;
}

std::optional<std::pair<std::size_t, std::size_t>> naive_mp_counts(const Hin& hin, NodeIdx x,
                                                                   const MetaPath& mp,
                                                                   const RiskMap& risk) {
  auto targets = reachable_targets(hin, x, mp);
  if (targets.empty()) return std::nullopt;
  std::size_t risky = 0;
  for (NodeIdx t : targets) {
    signed char r = risk.at(t);
    if (r < 0) {
      throw Error(Errc::MissingModel,
                  "naive_mp: risk undefined for reachable target '" + hin.node(t).id + "'");
    }
    risky += (r == 1);
  }
  return std::make_pair(risky, targets.size());
}

std::optional<double> naive_mp(const Hin& hin, NodeIdx x, const MetaPath& mp,
                               const RiskMap& risk) {
  auto counts = naive_mp_counts(hin, x, mp, risk);
  if (!counts) return std::nullopt;
  return static_cast<double>(counts->first) / static_cast<double>(counts->second);
}

std::optional<double> countsim_mp(const Hin& hin, NodeIdx x, const MetaPath& mp) {
  auto targets = reachable_targets(hin, x, mp);
  std::size_t denom = hin.distinct_neighbor_count(x);
  for (NodeIdx t : targets) denom += hin.incident_edge_count(t);
  if (denom == 0) return std::nullopt;
  return static_cast<double>(targets.size()) / static_cast<double>(denom);
}

std::optional<double> hetesim_mp(const Hin& hin, const HeteSimEngine& engine, NodeIdx x,
                                 const MetaPath& mp, const RiskMap& risk) {
  auto targets = reachable_targets(hin, x, mp);
  if (targets.empty()) return std::nullopt;
  double total = 0.0, risky_mass = 0.0;
  for (NodeIdx t : targets) {
    signed char r = risk.at(t);
    if (r < 0) {
      throw Error(Errc::MissingModel,
                  "hetesim_mp: risk undefined for reachable target '" + hin.node(t).id + "'");
    }
    double h = engine.relevance(x, t, mp);
    total += h;
    if (r == 1) risky_mass += h;
  }
  if (total == 0.0) return std::nullopt;
  return risky_mass / total;
}

FeatureMatrix build_feature_matrix(const Hin& hin, const std::vector<FeatureSpec>& specs,
                                   const RiskMap& risk, std::size_t workers,
                                   FeatureBuildInfo* info) {
  if (specs.empty()) {
    throw Error(Errc::Usage, "build_feature_matrix: specs must be non-empty");
  }
  auto enterprise = hin.schema().find_object_type("enterprise");
  if (!enterprise) {
    throw Error(Errc::UnknownType, "build_feature_matrix: schema has no 'enterprise' type");
  }
  const auto& rows = hin.nodes_of_type(*enterprise);

  std::vector<std::string> row_ids;
  row_ids.reserve(rows.size());
  for (NodeIdx i : rows) row_ids.push_back(hin.node(i).id);
  std::vector<std::string> col_names;
  col_names.reserve(specs.size());
  for (const auto& s : specs) col_names.push_back(s.name(hin.schema()));
  FeatureMatrix matrix(std::move(row_ids), std::move(col_names));

  HeteSimEngine engine(hin);
  // Warm the operator cache before the parallel section so worker threads
  // only take the shared-lock path.
  for (const auto& spec : specs) {
    if (spec.kind == FeatureKind::HeteSim) engine.operators(spec.mp);
  }

  auto compute_row = [&](std::size_t r) {
    NodeIdx x = rows[r];
    for (std::size_t c = 0; c < specs.size(); ++c) {
      const FeatureSpec& spec = specs[c];
      std::optional<double> value;
      try {
        switch (spec.kind) {
          case FeatureKind::Naive:
            value = naive_mp(hin, x, spec.mp, risk);
            break;
          case FeatureKind::CountSim:
            value = countsim_mp(hin, x, spec.mp);
            break;
          case FeatureKind::HeteSim:
            value = hetesim_mp(hin, engine, x, spec.mp, risk);
            break;
        }
      } catch (const Error&) {
        value.reset();  // per-entry failure -> missing mask
      }
      if (value) {
        matrix.set(r, c, *value);
      } else {
        matrix.set_missing(r, c);
      }
    }
  };

  const std::size_t n = rows.size();
  if (workers <= 1 || n < 2) {
    for (std::size_t r = 0; r < n; ++r) compute_row(r);
  } else {
    std::vector<std::thread> pool;
    std::size_t used = std::min(workers, n);
    for (std::size_t w = 0; w < used; ++w) {
      pool.emplace_back([&, w]() {
        for (std::size_t r = w; r < n; r += used) compute_row(r);
      });
    }
    for (auto& t : pool) t.join();
  }

  if (info) {
    info->spec_names = matrix.column_names();
    info->missing_per_column.assign(specs.size(), 0);
    for (std::size_t r = 0; r < matrix.rows(); ++r) {
      for (std::size_t c = 0; c < matrix.cols(); ++c) {
        if (!matrix.defined(r, c)) info->missing_per_column[c]++;
      }
    }
    info->imputed_value_per_column = matrix.column_means();
  }
  return matrix;
}

std::string feature_sidecar_json(const Schema& schema, const std::vector<FeatureSpec>& specs,
                                 const FeatureBuildInfo& info) {
  json j;
  j["features"] = json::array();
  for (std::size_t c = 0; c < specs.size(); ++c) {
    json jf;
    jf["name"] = specs[c].name(schema);
    jf["metapath"] = format_metapath(specs[c].mp, schema);
    jf["kind"] = feature_kind_name(specs[c].kind);
    jf["missing_entries"] = info.missing_per_column.at(c);
    jf["imputed_value"] = info.imputed_value_per_column.at(c);
    j["features"].push_back(std::move(jf));
  }
  return j.dump(2);
}

}  // namespace hinrisk
