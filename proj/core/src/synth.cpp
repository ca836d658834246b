#include "hinrisk/synth.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include <nlohmann/json.hpp>

#include "hinrisk/error.hpp"
#include "hinrisk/stats.hpp"

namespace hinrisk {

using nlohmann::json;

namespace {

std::string padded_id(const char* prefix, std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%s%05zu", prefix, i);
  return buf;
}

// Attribute level biased toward 0 for risky objects and toward the top level
// for non-risky ones; `signal` in [0,1] blends with the uniform draw.
int biased_level(std::mt19937_64& rng, bool risky, double signal, int levels) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<int> uniform_level(0, levels - 1);
  if (unit(rng) >= signal) return uniform_level(rng);
  // triangular-ish: minimum (or maximum) of two uniform draws
  int a = uniform_level(rng);
  int b = uniform_level(rng);
  return risky ? std::min(a, b) : std::max(a, b);
}

}  // namespace

std::string GroundTruth::to_json() const {
  json j;
  j["planted_path"] = planted_path;
  j["beta0"] = beta0;
  j["beta_self"] = beta_self;
  j["beta_exposure"] = beta_exposure;
  j["beta_count"] = beta_count;
  j["risky_objects"] = risky_objects;
  return j.dump(2);
}

std::pair<Hin, GroundTruth> generate(const GenConfig& cfg) {
  if (cfg.enterprises < 2) {
    throw Error(Errc::InfeasibleConfig, "generate: need at least 2 enterprises");
  }
  if (cfg.persons == 0 &&
      (cfg.control_mean > 0 || cfg.shareholder_mean > 0 || cfg.manager_mean > 0 ||
       cfg.employee_mean > 0 || cfg.boardmember_mean > 0)) {
    throw Error(Errc::InfeasibleConfig, "generate: person-touching relations need persons");
  }
  if (cfg.commodities == 0 && cfg.produce_mean > 0) {
    throw Error(Errc::InfeasibleConfig, "generate: produce relation needs commodities");
  }
  if (cfg.news == 0 && cfg.report_mean > 0) {
    throw Error(Errc::InfeasibleConfig, "generate: report relation needs news");
  }
  if (cfg.stale_cutoff < 0 || cfg.stale_cutoff > cfg.horizon) {
    throw Error(Errc::InfeasibleConfig, "generate: stale_cutoff must lie in [0, horizon]");
  }

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<Timestamp> recent_ts(cfg.stale_cutoff, cfg.horizon);
  std::uniform_int_distribution<Timestamp> stale_ts(
      0, cfg.stale_cutoff > 0 ? cfg.stale_cutoff - 1 : 0);

  Schema schema = default_sme_schema();
  Hin::Builder builder(schema);
  GroundTruth truth;
  truth.planted_path = "E-[control]->P-[shareholder]->E";
  truth.beta0 = -1.4;
  truth.beta_self = 2.2;
  truth.beta_exposure = 4.0 * cfg.contagion_strength;
  truth.beta_count = 1.2 * cfg.contagion_strength;

  struct Obj {
    std::string id;
    bool risky = false;
  };
  std::vector<Obj> ents(cfg.enterprises), pers(cfg.persons), coms(cfg.commodities),
      newses(cfg.news);

  auto make_nodes = [&](std::vector<Obj>& objs, const char* prefix, const char* type_name) {
    TypeId t = *schema.find_object_type(type_name);
    for (std::size_t i = 0; i < objs.size(); ++i) {
      objs[i].id = padded_id(prefix, i);
      objs[i].risky = unit(rng) < cfg.base_risk_rate;
      if (objs[i].risky) truth.risky_objects.push_back(objs[i].id);
      Node node;
      node.id = objs[i].id;
      node.otype = t;
      for (int a = 0; a < cfg.attribute_count; ++a) {
        int level = biased_level(rng, objs[i].risky, cfg.attribute_signal, cfg.attribute_levels);
        node.attributes["a" + std::to_string(a)] = "q" + std::to_string(level);
      }
      builder.add_node(std::move(node));
    }
  };
  make_nodes(ents, "ent", "enterprise");
  make_nodes(pers, "per", "person");
  make_nodes(coms, "com", "commodity");
  make_nodes(newses, "news", "news");

  std::size_t edge_counter = 0;
  auto next_edge_id = [&]() { return padded_id("e", edge_counter++); };

  auto pick = [&](std::size_t n) {
    return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  };
  auto poisson = [&](double mean) {
    if (mean <= 0.0) return 0;
    return std::poisson_distribution<int>(mean)(rng);
  };

  TypeId te = *schema.find_object_type("enterprise");
  TypeId tp = *schema.find_object_type("person");
  TypeId tc = *schema.find_object_type("commodity");
  TypeId tn = *schema.find_object_type("news");
  RelId rel_parent = *schema.find_relation("parent", te, te);
  RelId rel_supply = *schema.find_relation("supply", te, te);
  RelId rel_control = *schema.find_relation("control", te, tp);
  RelId rel_shareholder = *schema.find_relation("shareholder", te, tp);
  RelId rel_manager = *schema.find_relation("manager", te, tp);
  RelId rel_employee = *schema.find_relation("employee", te, tp);
  RelId rel_boardmember = *schema.find_relation("boardmember", te, tp);
  RelId rel_produce = *schema.find_relation("produce", te, tc);
  RelId rel_report = *schema.find_relation("report", te, tn);
  RelId rel_relate = *schema.find_relation("relate", tp, tp);

  // Planted channel bookkeeping over the *valid* (recent) edges only.
  std::vector<std::vector<std::size_t>> controllers_of(cfg.enterprises);  // ent -> persons
  std::vector<std::vector<std::size_t>> held_by(cfg.persons);             // person -> ents

  auto add_edge = [&](const std::string& src, const std::string& dst, RelId rel, Timestamp ts) {
    builder.add_edge(next_edge_id(), src, dst, rel, ts);
  };

  std::size_t control_edges = 0, shareholder_edges = 0;
  for (std::size_t i = 0; i < cfg.enterprises; ++i) {
    if (cfg.parent_prob > 0 && unit(rng) < cfg.parent_prob) {
      std::size_t p = pick(cfg.enterprises);
      if (p != i) add_edge(ents[i].id, ents[p].id, rel_parent, recent_ts(rng));
    }
    int supplies = poisson(cfg.supply_mean);
    for (int s = 0; s < supplies; ++s) {
      std::size_t q = pick(cfg.enterprises);
      if (q != i) add_edge(ents[i].id, ents[q].id, rel_supply, recent_ts(rng));
    }
    int controls = poisson(cfg.control_mean);
    std::set<std::size_t> seen;
    for (int s = 0; s < controls; ++s) {
      std::size_t p = pick(cfg.persons);
      if (seen.insert(p).second) {
        add_edge(ents[i].id, pers[p].id, rel_control, recent_ts(rng));
        controllers_of[i].push_back(p);
        control_edges++;
      }
    }
    int shares = poisson(cfg.shareholder_mean);
    seen.clear();
    for (int s = 0; s < shares; ++s) {
      std::size_t p = pick(cfg.persons);
      if (seen.insert(p).second) {
        add_edge(ents[i].id, pers[p].id, rel_shareholder, recent_ts(rng));
        held_by[p].push_back(i);
        shareholder_edges++;
      }
    }
    int managers = poisson(cfg.manager_mean);
    for (int s = 0; s < managers; ++s) {
      add_edge(ents[i].id, pers[pick(cfg.persons)].id, rel_manager, recent_ts(rng));
    }
    int employees = poisson(cfg.employee_mean);
    for (int s = 0; s < employees; ++s) {
      add_edge(ents[i].id, pers[pick(cfg.persons)].id, rel_employee, recent_ts(rng));
    }
    int boards = poisson(cfg.boardmember_mean);
    for (int s = 0; s < boards; ++s) {
      add_edge(ents[i].id, pers[pick(cfg.persons)].id, rel_boardmember, recent_ts(rng));
    }
    int produces = poisson(cfg.produce_mean);
    for (int s = 0; s < produces; ++s) {
      add_edge(ents[i].id, coms[pick(cfg.commodities)].id, rel_produce, recent_ts(rng));
    }
    int reports = poisson(cfg.report_mean);
    for (int s = 0; s < reports; ++s) {
      add_edge(ents[i].id, newses[pick(cfg.news)].id, rel_report, recent_ts(rng));
    }
  }
  for (std::size_t i = 0; i < cfg.persons; ++i) {
    if (cfg.relate_prob > 0 && unit(rng) < cfg.relate_prob) {
      std::size_t q = pick(cfg.persons);
      if (q != i) add_edge(pers[i].id, pers[q].id, rel_relate, recent_ts(rng));
    }
  }

  // Stale-noise planted-channel edges: same shape, old timestamps, and no
  // effect on label generation.
  if (cfg.stale_edge_fraction > 0.0 && cfg.persons > 0) {
    auto stale_count = static_cast<std::size_t>(
        cfg.stale_edge_fraction * static_cast<double>(control_edges + shareholder_edges));
    for (std::size_t s = 0; s < stale_count; ++s) {
      std::size_t i = pick(cfg.enterprises);
      std::size_t p = pick(cfg.persons);
      RelId rel = (s % 2 == 0) ? rel_control : rel_shareholder;
      add_edge(ents[i].id, pers[p].id, rel, stale_ts(rng));
    }
  }

  // Exposure along the planted path (valid edges only): relevance-weighted
  // risky share plus a connectivity term, then a Bernoulli default draw.
  std::vector<bool> label(cfg.enterprises, false);
  for (std::size_t i = 0; i < cfg.enterprises; ++i) {
    double mass = 0.0, risky_mass = 0.0;
    std::set<std::size_t> targets;
    if (!controllers_of[i].empty()) {
      double w_controller = 1.0 / static_cast<double>(controllers_of[i].size());
      for (std::size_t p : controllers_of[i]) {
        if (held_by[p].empty()) continue;
        double w_target = w_controller / static_cast<double>(held_by[p].size());
        for (std::size_t t : held_by[p]) {
          if (t == i) continue;
          targets.insert(t);
          mass += w_target;
          if (ents[t].risky) risky_mass += w_target;
        }
      }
    }
    double exposure = mass > 0.0 ? risky_mass / mass : cfg.base_risk_rate;
    double count_signal = std::log1p(static_cast<double>(targets.size())) - std::log1p(2.0);
    double eta = truth.beta0 + truth.beta_self * (ents[i].risky ? 1.0 : 0.0) +
                 truth.beta_exposure * (2.0 * exposure - 1.0) +
                 truth.beta_count * count_signal;
    label[i] = unit(rng) < sigmoid(eta);
  }

  for (std::size_t i = 0; i < cfg.enterprises; ++i) builder.set_label(ents[i].id, label[i]);
  for (std::size_t i = 0; i < cfg.persons; ++i) {
    if (unit(rng) < cfg.label_coverage) builder.set_label(pers[i].id, pers[i].risky);
  }
  for (std::size_t i = 0; i < cfg.commodities; ++i) {
    if (unit(rng) < cfg.label_coverage) builder.set_label(coms[i].id, coms[i].risky);
  }
  for (std::size_t i = 0; i < cfg.news; ++i) builder.set_label(newses[i].id, newses[i].risky);

  return {std::move(builder).build(), std::move(truth)};
}

Hin figure3_fixture() {
  Schema schema = default_sme_schema();
  Hin::Builder b(schema);
  auto add = [&](const char* id, const char* type) {
    Node node;
    node.id = id;
    node.otype = *schema.find_object_type(type);
    b.add_node(std::move(node));
  };
  add("v1", "enterprise");
  add("v2", "enterprise");
  add("v3", "person");
  add("v4", "person");
  add("v5", "news");
  add("v6", "commodity");
  add("v7", "enterprise");
  add("v8", "person");
  add("v9", "commodity");
  add("v10", "news");
  add("v11", "news");
  add("v12", "news");
  add("v13", "news");

  auto rel = [&](const char* name, const char* st, const char* tt) {
    return *schema.find_relation(name, *schema.find_object_type(st), *schema.find_object_type(tt));
  };
  b.add_edge("e1", "v1", "v2", rel("parent", "enterprise", "enterprise"));
  b.add_edge("e2", "v1", "v3", rel("control", "enterprise", "person"));
  b.add_edge("e3", "v1", "v4", rel("employee", "enterprise", "person"));
  b.add_edge("e4", "v1", "v5", rel("report", "enterprise", "news"));
  b.add_edge("e5", "v1", "v6", rel("produce", "enterprise", "commodity"));
  b.add_edge("e6", "v1", "v7", rel("supply", "enterprise", "enterprise"));
  b.add_edge("e7", "v7", "v8", rel("control", "enterprise", "person"));
  b.add_edge("e8", "v7", "v9", rel("produce", "enterprise", "commodity"));
  b.add_edge("e9", "v2", "v10", rel("report", "enterprise", "news"));
  b.add_edge("e10", "v2", "v11", rel("report", "enterprise", "news"));
  b.add_edge("e11", "v7", "v12", rel("report", "enterprise", "news"));
  b.add_edge("e12", "v7", "v13", rel("report", "enterprise", "news"));
  b.add_edge("e13", "v3", "v4", rel("relate", "person", "person"));
  return std::move(b).build();
}

Hin figure5_fixture() {
  Schema schema = default_sme_schema();
  Hin::Builder b(schema);
  TypeId e = *schema.find_object_type("enterprise");
  TypeId p = *schema.find_object_type("person");
  auto add = [&](const std::string& id, TypeId t, std::optional<bool> risky = std::nullopt) {
    Node node;
    node.id = id;
    node.otype = t;
    node.risk_label = risky;
    b.add_node(std::move(node));
  };
  add("J", e);
  add("K", e);
  add("L1", p);
  add("L2", p);
  add("L3", p);
  add("Q1", e, false);
  add("Q2", e, true);
  add("Q3", e, true);
  add("Q4", e, true);
  add("Q5", e, false);
  add("Q6", e, true);
  add("Q7", e, true);

  RelId control = *schema.find_relation("control", e, p);
  RelId shareholder = *schema.find_relation("shareholder", e, p);
  b.add_edge("c1", "J", "L1", control);
  b.add_edge("c2", "J", "L2", control);
  b.add_edge("c3", "K", "L2", control);
  b.add_edge("c4", "K", "L3", control);
  // stored enterprise->person; the planted path traverses the inverse
  b.add_edge("s1", "Q1", "L1", shareholder);
  b.add_edge("s2", "Q2", "L1", shareholder);
  b.add_edge("s3", "Q3", "L1", shareholder);
  b.add_edge("s4", "Q4", "L2", shareholder);
  b.add_edge("s5", "Q5", "L2", shareholder);
  b.add_edge("s6", "Q6", "L3", shareholder);
  b.add_edge("s7", "Q7", "L3", shareholder);
  return std::move(b).build();
}

}  // namespace hinrisk
