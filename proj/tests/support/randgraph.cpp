#include "randgraph.hpp"

#include "hinrisk/error.hpp"

namespace hinrisk::testsupport {

Hin random_hin(std::mt19937_64& rng, const RandomGraphLimits& limits) {
  Schema schema = default_sme_schema();
  Hin::Builder builder(schema);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  auto count_in = [&](std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
  };
  struct TypePool {
    const char* type;
    const char* prefix;
    std::size_t count;
    std::vector<std::string> ids;
  };
  TypePool pools[4] = {
      {"enterprise", "v_e", count_in(limits.min_enterprises, limits.max_enterprises), {}},
      {"person", "v_p", count_in(0, limits.max_persons), {}},
      {"commodity", "v_c", count_in(0, limits.max_commodities), {}},
      {"news", "v_n", count_in(0, limits.max_news), {}},
  };
  for (auto& pool : pools) {
    TypeId t = *schema.find_object_type(pool.type);
    for (std::size_t i = 0; i < pool.count; ++i) {
      Node node;
      node.id = pool.prefix + std::to_string(i);
      node.otype = t;
      if (unit(rng) < limits.timestamp_prob) {
        node.timestamp = std::uniform_int_distribution<Timestamp>(0, 100)(rng);
      }
      if (unit(rng) < limits.label_prob) node.risk_label = unit(rng) < 0.5;
      pool.ids.push_back(node.id);
      builder.add_node(std::move(node));
    }
  }

  auto ids_of = [&](TypeId t) -> const std::vector<std::string>& {
    return pools[t].ids;  // default schema type ids are 0..3 in pool order
  };

  std::size_t edges = count_in(0, limits.max_edges);
  std::size_t added = 0;
  for (std::size_t attempt = 0; attempt < edges * 4 && added < edges; ++attempt) {
    RelId r = static_cast<RelId>(
        std::uniform_int_distribution<std::size_t>(0, schema.relation_count() - 1)(rng));
    const auto& rel = schema.relation(r);
    const auto& src_ids = ids_of(rel.source);
    const auto& dst_ids = ids_of(rel.target);
    if (src_ids.empty() || dst_ids.empty()) continue;
    const std::string& src = src_ids[count_in(0, src_ids.size() - 1)];
    const std::string& dst = dst_ids[count_in(0, dst_ids.size() - 1)];
    std::optional<Timestamp> ts;
    if (unit(rng) < limits.timestamp_prob) {
      ts = std::uniform_int_distribution<Timestamp>(0, 100)(rng);
    }
    builder.add_edge("e" + std::to_string(added), src, dst, r, ts);
    ++added;
  }
  return std::move(builder).build();
}

MetaPath random_metapath(std::mt19937_64& rng, const Schema& schema, TypeId root,
                         std::size_t max_relations) {
  std::size_t length =
      std::uniform_int_distribution<std::size_t>(1, max_relations)(rng);
  MetaPath mp;
  mp.node_types.push_back(root);
  for (std::size_t i = 0; i < length; ++i) {
    auto options = schema.relations_from(mp.node_types.back());
    if (options.empty()) break;
    RelId r = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    mp.relation_types.push_back(r);
    mp.node_types.push_back(schema.relation(r).target);
  }
  if (mp.relation_types.empty()) {
    throw Error(Errc::Internal, "random_metapath: no outgoing relations from root");
  }
  return mp;
}

}  // namespace hinrisk::testsupport
