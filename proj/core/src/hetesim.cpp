#include "hinrisk/hetesim.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "hinrisk/error.hpp"

namespace hinrisk {

namespace {

using SpMat = HeteSimEngine::SpMat;

void normalize_rows(SpMat& m) {
  for (int r = 0; r < m.outerSize(); ++r) {
    double sum = 0.0;
    for (SpMat::InnerIterator it(m, r); it; ++it) sum += it.value();
    if (sum <= 0.0) continue;
    for (SpMat::InnerIterator it(m, r); it; ++it) it.valueRef() /= sum;
  }
}

double sparse_row_dot(const SpMat& a, int ra, const SpMat& b, int rb) {
  SpMat::InnerIterator ia(a, ra), ib(b, rb);
  double dot = 0.0;
  while (ia && ib) {
    if (ia.col() < ib.col()) {
      ++ia;
    } else if (ib.col() < ia.col()) {
      ++ib;
    } else {
      dot += ia.value() * ib.value();
      ++ia;
      ++ib;
    }
  }
  return dot;
}

double sparse_row_norm(const SpMat& a, int ra) {
  double sq = 0.0;
  for (SpMat::InnerIterator it(a, ra); it; ++it) sq += it.value() * it.value();
  return std::sqrt(sq);
}

std::string relation_key(const std::vector<RelId>& rels) {
  std::string key;
  for (RelId r : rels) {
    key += std::to_string(r);
    key += ',';
  }
  return key;
}

}  // namespace

HeteSimEngine::HeteSimEngine(const Hin& hin) : hin_(&hin) {
  const Schema& schema = hin.schema();
  type_index_.assign(hin.node_count(), 0);
  for (TypeId t = 0; t < schema.object_type_count(); ++t) {
    const auto& nodes = hin.nodes_of_type(t);
    for (std::size_t i = 0; i < nodes.size(); ++i) type_index_[nodes[i]] = i;
  }

  // One traversal count matrix per relation; stored edges feed both their own
  // relation and its inverse.
  std::vector<std::vector<Eigen::Triplet<double>>> triplets(schema.relation_count());
  relation_edges_.assign(schema.relation_count(), {});
  for (EdgeIdx ei = 0; ei < hin.edge_count(); ++ei) {
    const Edge& e = hin.edge(ei);
    RelId r = e.rtype;
    RelId ri = schema.inverse(r);
    triplets[r].emplace_back(static_cast<int>(type_index_[e.src]),
                             static_cast<int>(type_index_[e.dst]), 1.0);
    triplets[ri].emplace_back(static_cast<int>(type_index_[e.dst]),
                              static_cast<int>(type_index_[e.src]), 1.0);
    relation_edges_[r].push_back(ei);
    if (ri != r) relation_edges_[ri].push_back(ei);
  }
  auto edge_id_less = [&](EdgeIdx a, EdgeIdx b) { return hin.edge(a).id < hin.edge(b).id; };
  for (auto& edges : relation_edges_) {
    std::sort(edges.begin(), edges.end(), edge_id_less);
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }

  transitions_.reserve(schema.relation_count());
  for (RelId r = 0; r < schema.relation_count(); ++r) {
    const auto& rel = schema.relation(r);
    SpMat m(static_cast<int>(hin.nodes_of_type(rel.source).size()),
            static_cast<int>(hin.nodes_of_type(rel.target).size()));
    m.setFromTriplets(triplets[r].begin(), triplets[r].end());
    normalize_rows(m);
    transitions_.push_back(std::move(m));
  }
}

// Half-transition of the middle relation over its edge instances. With
// arriving=false rows are source-type nodes and an entry marks an edge the
// walk can leave through; arriving=true is the same construction for the
// inverse relation, i.e. rows are target-type nodes and entries mark edges
// arriving there. Rows are normalized to probability distributions.
SpMat HeteSimEngine::edge_half(RelId rel, bool arriving) const {
  const Schema& schema = hin_->schema();
  if (arriving) return edge_half(schema.inverse(rel), false);

  const auto& rel_info = schema.relation(rel);
  const auto& edges = relation_edges_[rel];
  RelId inv = schema.inverse(rel);
  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t pos = 0; pos < edges.size(); ++pos) {
    const Edge& e = hin_->edge(edges[pos]);
    if (e.rtype == rel) {
      triplets.emplace_back(static_cast<int>(type_index_[e.src]), static_cast<int>(pos), 1.0);
    }
    if (e.rtype == inv) {  // both branches fire for a self-inverse relation
      triplets.emplace_back(static_cast<int>(type_index_[e.dst]), static_cast<int>(pos), 1.0);
    }
  }
  SpMat m(static_cast<int>(hin_->nodes_of_type(rel_info.source).size()),
          static_cast<int>(edges.size()));
  m.setFromTriplets(triplets.begin(), triplets.end());
  normalize_rows(m);
  return m;
}

std::shared_ptr<const HeteSimEngine::PathOperators> HeteSimEngine::build_operators(
    const MetaPath& mp) const {
  const std::size_t n = mp.length();
  const std::size_t m = (n + 1) / 2;  // split point: relations 1..m on the left
  const bool odd = (n % 2 != 0);

  auto chain = [&](std::size_t first, std::size_t last_excl, bool invert) {
    // product of transitions, left to right; invert walks the relations
    // backwards through their inverses (the reversed right half).
    std::vector<RelId> rels;
    if (!invert) {
      for (std::size_t i = first; i < last_excl; ++i) rels.push_back(mp.relation_types[i]);
    } else {
      for (std::size_t i = last_excl; i-- > first;) {
        rels.push_back(hin_->schema().inverse(mp.relation_types[i]));
      }
    }
    SpMat acc;
    bool have = false;
    for (RelId r : rels) {
      if (!have) {
        acc = transitions_[r];
        have = true;
      } else {
        acc = (acc * transitions_[r]).pruned();
      }
    }
    return std::pair<bool, SpMat>(have, std::move(acc));
  };

  auto ops = std::make_shared<PathOperators>();
  if (!odd) {
    auto [lhave, left] = chain(0, m, false);
    auto [rhave, right] = chain(m, n, true);
    ops->left = lhave ? std::move(left) : SpMat();
    ops->right = rhave ? std::move(right) : SpMat();
  } else {
    SpMat out_half = edge_half(mp.relation_types[m - 1], false);
    SpMat in_half = edge_half(mp.relation_types[m - 1], true);
    auto [lhave, left] = chain(0, m - 1, false);
    auto [rhave, right] = chain(m, n, true);
    ops->left = lhave ? SpMat((left * out_half).pruned()) : std::move(out_half);
    ops->right = rhave ? SpMat((right * in_half).pruned()) : std::move(in_half);
  }
  ops->left_norm.resize(static_cast<std::size_t>(ops->left.rows()));
  for (int r = 0; r < ops->left.rows(); ++r) {
    ops->left_norm[static_cast<std::size_t>(r)] = sparse_row_norm(ops->left, r);
  }
  ops->right_norm.resize(static_cast<std::size_t>(ops->right.rows()));
  for (int r = 0; r < ops->right.rows(); ++r) {
    ops->right_norm[static_cast<std::size_t>(r)] = sparse_row_norm(ops->right, r);
  }
  return ops;
}

std::shared_ptr<const HeteSimEngine::PathOperators> HeteSimEngine::operators(
    const MetaPath& mp) const {
  const std::string key = relation_key(mp.relation_types);
  {
    std::shared_lock lock(cache_mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  std::unique_lock lock(cache_mutex_);
  auto it = cache_.find(key);
  if (it != cache_.end()) return it->second;
  auto ops = build_operators(mp);
  cache_.emplace(key, ops);
  return ops;
}

double HeteSimEngine::relevance(NodeIdx s, NodeIdx t, const MetaPath& mp) const {
  if (hin_->node(s).otype != mp.root()) {
    throw Error(Errc::TypeMismatch, "hetesim: node '" + hin_->node(s).id +
                                        "' does not have the meta path root type");
  }
  if (hin_->node(t).otype != mp.terminal()) {
    throw Error(Errc::TypeMismatch, "hetesim: node '" + hin_->node(t).id +
                                        "' does not have the meta path terminal type");
  }
  auto ops = operators(mp);
  const int rs = static_cast<int>(type_index_[s]);
  const int rt = static_cast<int>(type_index_[t]);
  const double nu = ops->left_norm[static_cast<std::size_t>(rs)];
  const double nw = ops->right_norm[static_cast<std::size_t>(rt)];
  if (nu == 0.0 || nw == 0.0) return 0.0;
  const double dot = sparse_row_dot(ops->left, rs, ops->right, rt);
  if (dot == 0.0) return 0.0;
  return dot / (nu * nw);
}

}  // namespace hinrisk
