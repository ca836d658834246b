#include "hinrisk/hin.hpp"

#include <algorithm>

#include "hinrisk/error.hpp"

namespace hinrisk {

NodeIdx Hin::Builder::add_node(Node node) {
  if (index_.count(node.id)) {
    throw Error(Errc::DuplicateId, "duplicate node id '" + node.id + "'");
  }
  if (node.otype >= schema_.object_type_count()) {
    throw Error(Errc::UnknownType, "node '" + node.id + "' has unknown object type");
  }
  NodeIdx idx = static_cast<NodeIdx>(nodes_.size());
  index_.emplace(node.id, idx);
  nodes_.push_back(std::move(node));
  return idx;
}

NodeIdx Hin::Builder::node_index(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw Error(Errc::UnknownNode, "unknown node id '" + id + "'");
  }
  return it->second;
}

EdgeIdx Hin::Builder::add_edge(Edge edge) {
  if (edge.src >= nodes_.size() || edge.dst >= nodes_.size()) {
    throw Error(Errc::DanglingEdge, "edge '" + edge.id + "' references missing endpoint");
  }
  if (edge.rtype >= schema_.relation_count()) {
    throw Error(Errc::UnknownType, "edge '" + edge.id + "' has unknown relation type");
  }
  const auto& rel = schema_.relation(edge.rtype);
  if (nodes_[edge.src].otype != rel.source || nodes_[edge.dst].otype != rel.target) {
    throw Error(Errc::TypeMismatch,
                "edge '" + edge.id + "' endpoint types do not match relation '" + rel.name + "'");
  }
  EdgeIdx idx = static_cast<EdgeIdx>(edges_.size());
  edges_.push_back(std::move(edge));
  return idx;
}

EdgeIdx Hin::Builder::add_edge(const std::string& edge_id, const std::string& src_id,
                               const std::string& dst_id, RelId rtype,
                               std::optional<Timestamp> ts) {
  auto src = index_.find(src_id);
  auto dst = index_.find(dst_id);
  if (src == index_.end()) {
    throw Error(Errc::DanglingEdge, "edge '" + edge_id + "' references absent node '" + src_id + "'");
  }
  if (dst == index_.end()) {
    throw Error(Errc::DanglingEdge, "edge '" + edge_id + "' references absent node '" + dst_id + "'");
  }
  return add_edge(Edge{edge_id, src->second, dst->second, rtype, ts});
}

void Hin::Builder::set_label(const std::string& node_id, bool risky) {
  nodes_[node_index(node_id)].risk_label = risky;
}

Hin Hin::Builder::build() && {
  Hin hin;
  hin.schema_ = std::move(schema_);
  hin.nodes_ = std::move(nodes_);
  hin.edges_ = std::move(edges_);
  hin.id_index_ = std::move(index_);
  hin.rebuild_indexes();
  return hin;
}

void Hin::rebuild_indexes() {
  adjacency_.assign(nodes_.size(), {});
  for (std::size_t ei = 0; ei < edges_.size(); ++ei) {
    const Edge& e = edges_[ei];
    RelId inv = schema_.inverse(e.rtype);
    adjacency_[e.src].push_back(AdjEntry{e.rtype, e.dst, static_cast<EdgeIdx>(ei)});
    adjacency_[e.dst].push_back(AdjEntry{inv, e.src, static_cast<EdgeIdx>(ei)});
  }
  for (auto& entries : adjacency_) {
    std::sort(entries.begin(), entries.end(), [this](const AdjEntry& a, const AdjEntry& b) {
      if (a.rel != b.rel) return a.rel < b.rel;
      if (a.neighbor != b.neighbor) return nodes_[a.neighbor].id < nodes_[b.neighbor].id;
      return edges_[a.edge].id < edges_[b.edge].id;
    });
  }
  by_type_.assign(schema_.object_type_count(), {});
  std::vector<NodeIdx> order(nodes_.size());
  for (NodeIdx i = 0; i < nodes_.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [this](NodeIdx a, NodeIdx b) { return nodes_[a].id < nodes_[b].id; });
  for (NodeIdx i : order) by_type_[nodes_[i].otype].push_back(i);
}

std::optional<NodeIdx> Hin::find_node(const std::string& id) const {
  auto it = id_index_.find(id);
  if (it == id_index_.end()) return std::nullopt;
  return it->second;
}

NodeIdx Hin::node_index(const std::string& id) const {
  auto idx = find_node(id);
  if (!idx) throw Error(Errc::UnknownNode, "unknown node id '" + id + "'");
  return *idx;
}

std::span<const AdjEntry> Hin::adjacency(NodeIdx node) const {
  if (node >= nodes_.size()) throw Error(Errc::UnknownNode, "node index out of range");
  return adjacency_[node];
}

std::span<const AdjEntry> Hin::adjacency(NodeIdx node, RelId rel) const {
  auto all = adjacency(node);
  auto lo = std::lower_bound(all.begin(), all.end(), rel,
                             [](const AdjEntry& e, RelId r) { return e.rel < r; });
  auto hi = std::upper_bound(all.begin(), all.end(), rel,
                             [](RelId r, const AdjEntry& e) { return r < e.rel; });
  return all.subspan(static_cast<std::size_t>(lo - all.begin()),
                     static_cast<std::size_t>(hi - lo));
}

std::vector<NodeIdx> Hin::neighbors(NodeIdx node, RelId rel) const {
  std::vector<NodeIdx> out;
  for (const auto& e : adjacency(node, rel)) out.push_back(e.neighbor);
  std::sort(out.begin(), out.end(),
            [this](NodeIdx a, NodeIdx b) { return nodes_[a].id < nodes_[b].id; });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> Hin::neighbor_ids(const std::string& node_id, RelId rel) const {
  std::vector<std::string> out;
  for (NodeIdx n : neighbors(node_index(node_id), rel)) out.push_back(nodes_[n].id);
  return out;
}

std::size_t Hin::distinct_neighbor_count(NodeIdx node) const {
  auto all = adjacency(node);
  std::vector<NodeIdx> nbrs;
  nbrs.reserve(all.size());
  for (const auto& e : all) nbrs.push_back(e.neighbor);
  std::sort(nbrs.begin(), nbrs.end());
  nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
  return nbrs.size();
}

std::size_t Hin::incident_edge_count(NodeIdx node) const {
  return adjacency(node).size();
}

const std::vector<NodeIdx>& Hin::nodes_of_type(TypeId t) const {
  return by_type_.at(t);
}

Hin Hin::as_of(Timestamp window_start, Timestamp window_end) const {
  if (window_start > window_end) {
    throw Error(Errc::InvalidWindow, "as_of window start exceeds end");
  }
  auto keep = [&](const std::optional<Timestamp>& ts) {
    return !ts || (*ts >= window_start && *ts <= window_end);
  };
  Builder builder(schema_);
  std::vector<bool> kept(nodes_.size(), false);
  for (const Node& n : nodes_) {
    if (keep(n.timestamp)) {
      builder.add_node(n);
      kept[id_index_.at(n.id)] = true;
    }
  }
  for (const Edge& e : edges_) {
    if (!keep(e.timestamp)) continue;
    if (!kept[e.src] || !kept[e.dst]) continue;  // endpoint dropped
    builder.add_edge(e.id, nodes_[e.src].id, nodes_[e.dst].id, e.rtype, e.timestamp);
  }
  return std::move(builder).build();
}

}  // namespace hinrisk
