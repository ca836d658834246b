#include "hinrisk/risk_bayes.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "hinrisk/error.hpp"

namespace hinrisk {

using nlohmann::json;

double NaiveBayesModel::posterior(const Node& x) const {
  for (const auto& [name, value] : x.attributes) {
    bool known = std::any_of(attributes.begin(), attributes.end(),
                             [&](const AttributeTable& t) { return t.name == name; });
    if (!known) {
      throw Error(Errc::UnknownAttribute,
                  "node '" + x.id + "' carries unknown attribute '" + name + "'");
    }
  }
  double log_risky = std::log(prior_risky);
  double log_nonrisky = std::log(prior_nonrisky);
  // attributes are sorted by name; this fixes the accumulation order
  for (const auto& table : attributes) {
    auto it = x.attributes.find(table.name);
    if (it == x.attributes.end()) continue;  // unobserved attribute contributes nothing
    auto lv = std::lower_bound(table.levels.begin(), table.levels.end(), it->second);
    if (lv != table.levels.end() && *lv == it->second) {
      std::size_t k = static_cast<std::size_t>(lv - table.levels.begin());
      log_risky += std::log(table.likelihood_risky[k]);
      log_nonrisky += std::log(table.likelihood_nonrisky[k]);
    } else {
      log_risky += std::log(table.unseen_risky);
      log_nonrisky += std::log(table.unseen_nonrisky);
    }
  }
  // P(1|x) = exp(l1) / (exp(l1) + exp(l0)) = 1 / (1 + exp(l0 - l1))
  return 1.0 / (1.0 + std::exp(log_nonrisky - log_risky));
}

bool NaiveBayesModel::gamma(const Node& x) const {
  return posterior(x) > 0.5;
}

bool gamma(const Hin& hin, const std::map<TypeId, NaiveBayesModel>& models, NodeIdx x) {
  const Node& node = hin.node(x);
  auto news_type = hin.schema().find_object_type("news");
  if (news_type && node.otype == *news_type) {
    return node.risk_label.value_or(false);
  }
  auto it = models.find(node.otype);
  if (it == models.end()) {
    throw Error(Errc::MissingModel, "gamma: no model for object type '" +
                                        hin.schema().object_type(node.otype).name + "'");
  }
  return it->second.gamma(node);
}

NaiveBayesModel fit_nb(const Hin& hin, TypeId otype, double alpha) {
  if (alpha <= 0.0) {
    throw Error(Errc::Usage, "fit_nb: alpha must be positive");
  }
  const auto& nodes = hin.nodes_of_type(otype);
  std::size_t n_risky = 0, n_nonrisky = 0;
  for (NodeIdx i : nodes) {
    const auto& label = hin.node(i).risk_label;
    if (!label) continue;
    (*label ? n_risky : n_nonrisky)++;
  }
  if (n_risky + n_nonrisky == 0) {
    throw Error(Errc::NoLabeledNodes, "fit_nb: no labeled nodes of type '" +
                                          hin.schema().object_type(otype).name + "'");
  }
  if (n_risky == 0 || n_nonrisky == 0) {
    throw Error(Errc::SingleClass, "fit_nb: labels of type '" +
                                       hin.schema().object_type(otype).name +
                                       "' contain a single class");
  }

  NaiveBayesModel model;
  model.object_type = hin.schema().object_type(otype).name;
  model.alpha = alpha;
  double total = static_cast<double>(n_risky + n_nonrisky);
  model.prior_risky = static_cast<double>(n_risky) / total;
  model.prior_nonrisky = static_cast<double>(n_nonrisky) / total;

  // Registry from all nodes of the type, levels sorted.
  std::map<std::string, std::vector<std::string>> registry;
  for (NodeIdx i : nodes) {
    for (const auto& [name, value] : hin.node(i).attributes) {
      auto& levels = registry[name];
      if (std::find(levels.begin(), levels.end(), value) == levels.end()) {
        levels.push_back(value);
      }
    }
  }
  for (auto& [name, levels] : registry) std::sort(levels.begin(), levels.end());

  for (const auto& [name, levels] : registry) {
    NaiveBayesModel::AttributeTable table;
    table.name = name;
    table.levels = levels;
    std::vector<std::size_t> count_risky(levels.size(), 0), count_nonrisky(levels.size(), 0);
    std::size_t obs_risky = 0, obs_nonrisky = 0;
    for (NodeIdx i : nodes) {
      const Node& node = hin.node(i);
      if (!node.risk_label) continue;
      auto it = node.attributes.find(name);
      if (it == node.attributes.end()) continue;
      auto lv = std::lower_bound(levels.begin(), levels.end(), it->second);
      std::size_t k = static_cast<std::size_t>(lv - levels.begin());
      if (*node.risk_label) {
        count_risky[k]++;
        obs_risky++;
      } else {
        count_nonrisky[k]++;
        obs_nonrisky++;
      }
    }
    const double denom_risky = static_cast<double>(obs_risky) + alpha * static_cast<double>(levels.size());
    const double denom_nonrisky =
        static_cast<double>(obs_nonrisky) + alpha * static_cast<double>(levels.size());
    for (std::size_t k = 0; k < levels.size(); ++k) {
      table.likelihood_risky.push_back((static_cast<double>(count_risky[k]) + alpha) / denom_risky);
      table.likelihood_nonrisky.push_back(
          (static_cast<double>(count_nonrisky[k]) + alpha) / denom_nonrisky);
    }
    table.unseen_risky = alpha / denom_risky;
    table.unseen_nonrisky = alpha / denom_nonrisky;
    model.attributes.push_back(std::move(table));
  }
  return model;
}

Hin impute_labels(const Hin& hin, const std::map<TypeId, NaiveBayesModel>& models,
                  double threshold) {
  if (!(threshold > 0.5 && threshold <= 1.0)) {
    throw Error(Errc::Usage, "impute_labels: threshold must lie in (0.5, 1]");
  }
  auto news_type = hin.schema().find_object_type("news");
  Hin::Builder builder(hin.schema());
  for (NodeIdx i = 0; i < hin.node_count(); ++i) {
    Node node = hin.node(i);
    bool is_news = news_type && node.otype == *news_type;
    if (!node.risk_label && !is_news) {
      auto it = models.find(node.otype);
      if (it == models.end()) {
        throw Error(Errc::MissingModel, "impute_labels: no model for object type '" +
                                            hin.schema().object_type(node.otype).name +
                                            "' needed by unlabeled node '" + node.id + "'");
      }
      node.risk_label = it->second.posterior(node) > threshold;
    }
    builder.add_node(std::move(node));
  }
  for (EdgeIdx i = 0; i < hin.edge_count(); ++i) {
    const Edge& e = hin.edge(i);
    builder.add_edge(Edge{e.id, e.src, e.dst, e.rtype, e.timestamp});
  }
  return std::move(builder).build();
}

std::vector<signed char> assemble_risk_map(const Hin& hin) {
  auto news_type = hin.schema().find_object_type("news");
  std::vector<signed char> out(hin.node_count(), -1);
  for (NodeIdx i = 0; i < hin.node_count(); ++i) {
    const Node& node = hin.node(i);
    if (node.risk_label) {
      out[i] = *node.risk_label ? 1 : 0;
    } else if (news_type && node.otype == *news_type) {
      out[i] = 0;  // no negative news recorded
    }
  }
  return out;
}

std::vector<std::string> quantile_bins(const std::vector<double>& values, int bins) {
  if (bins < 2) {
    throw Error(Errc::Usage, "quantile_bins: need at least 2 bins");
  }
  std::vector<double> sorted(values);
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> cuts;
  for (int b = 1; b < bins; ++b) {
    double q = static_cast<double>(b) / bins;
    std::size_t idx = static_cast<std::size_t>(q * static_cast<double>(sorted.size()));
    if (idx >= sorted.size()) idx = sorted.size() - 1;
    cuts.push_back(sorted[idx]);
  }
  std::vector<std::string> out;
  out.reserve(values.size());
  for (double v : values) {
    int level = 0;
    while (level < bins - 1 && v >= cuts[static_cast<std::size_t>(level)]) ++level;
    out.push_back("q" + std::to_string(level));
  }
  return out;
}

std::string NaiveBayesModel::to_json() const {
  json j;
  j["object_type"] = object_type;
  j["alpha"] = alpha;
  j["prior_risky"] = prior_risky;
  j["prior_nonrisky"] = prior_nonrisky;
  j["attributes"] = json::array();
  for (const auto& t : attributes) {
    json ja;
    ja["name"] = t.name;
    ja["levels"] = t.levels;
    ja["likelihood_risky"] = t.likelihood_risky;
    ja["likelihood_nonrisky"] = t.likelihood_nonrisky;
    ja["unseen_risky"] = t.unseen_risky;
    ja["unseen_nonrisky"] = t.unseen_nonrisky;
    j["attributes"].push_back(std::move(ja));
  }
  return j.dump(2);
}

NaiveBayesModel NaiveBayesModel::from_json(const std::string& text) {
  json j = json::parse(text);
  NaiveBayesModel m;
  m.object_type = j.at("object_type").get<std::string>();
  m.alpha = j.at("alpha").get<double>();
  m.prior_risky = j.at("prior_risky").get<double>();
  m.prior_nonrisky = j.at("prior_nonrisky").get<double>();
  for (const auto& ja : j.at("attributes")) {
    AttributeTable t;
    t.name = ja.at("name").get<std::string>();
    t.levels = ja.at("levels").get<std::vector<std::string>>();
    t.likelihood_risky = ja.at("likelihood_risky").get<std::vector<double>>();
    t.likelihood_nonrisky = ja.at("likelihood_nonrisky").get<std::vector<double>>();
    t.unseen_risky = ja.at("unseen_risky").get<double>();
    t.unseen_nonrisky = ja.at("unseen_nonrisky").get<double>();
    m.attributes.push_back(std::move(t));
  }
  return m;
}

}  // namespace hinrisk
